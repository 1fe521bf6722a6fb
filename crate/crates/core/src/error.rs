use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("{what} is {size}, above the limit of {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("subgroups belong to different groups")]
    MixedParents,
    #[error("G-sets are defined over different groups or subgroups")]
    MixedGroups,
    #[error("invalid subgroup id {0}")]
    InvalidSubgroupId(usize),
    #[error("elements do not form a subgroup: {0}")]
    NotASubgroup(String),
    #[error("map is not equivariant: {0}")]
    NonEquivariantLeg(String),
    #[error("relation has shape {found}x{found}, expected {expected}x{expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("pair ({k}, {h}) is not an inclusion of subgroups")]
    InvalidPair { k: usize, h: usize },
    #[error("relation is not a transfer system ({0} axiom violations)")]
    InvalidTransferSystem(usize),
    #[error("G/H is not admissible for H = subgroup {0}")]
    NotAdmissible(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
