//! Combinatorics of incomplete equivariant stable homotopy theory for finite
//! groups: transfer systems, admissible G-sets, graph subgroups, the
//! component-level tom Dieck splitting, double-coset machinery behind the
//! Wirthmüller isomorphism, and the incomplete Burnside Mackey functor.
//!
//! All arithmetic is exact. Every enumeration is guarded by [`Limits`].

pub mod error;
pub mod graph;
pub mod group;
pub mod gset;
pub mod io;
pub mod limits;
pub mod mackey;
pub mod splitting;
pub mod transfer;
pub mod wirthmuller;

pub use error::{Error, Result};
pub use group::{Builtin, FiniteGroup, Subgroup, SubgroupId, SubgroupLattice};
pub use gset::GSet;
pub use limits::Limits;
pub use transfer::{TransferSystem, TransferSystemPoset};
