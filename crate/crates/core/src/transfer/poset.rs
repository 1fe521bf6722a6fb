use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::TransferSystem;
use crate::error::{Error, Result};
use crate::group::{SubgroupId, SubgroupLattice};

/// Upper bound on the number of systems an enumeration may produce.
pub const MAX_SYSTEMS: usize = 1 << 20;

/// All transfer systems on a lattice, ordered by relation bitmask, with
/// containment and its covering relation.
#[derive(Clone, Debug)]
pub struct TransferSystemPoset {
    pub systems: Vec<TransferSystem>,
    /// `leq[i]` holds every `j` with `systems[i] <= systems[j]`.
    pub leq: Vec<FixedBitSet>,
    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub hasse: Vec<(usize, usize)>,
}

/// Calls `visit` on every transfer system, stopping early when it returns
/// `false`. Returns whether the search ran to completion.
///
/// Close-by-one depth-first search over the strict inclusion pairs in index
/// order: a branch adds pair `j` and closes; it survives only if the closure
/// adds no earlier pair, so each closed relation is reached exactly once.
/// No size guard applies.
pub fn visit_systems(
    lattice: &Arc<SubgroupLattice>,
    mut visit: impl FnMut(&TransferSystem) -> bool,
) -> bool {
    let m = lattice.len();
    let candidates: Vec<(SubgroupId, SubgroupId)> = lattice
        .ids()
        .flat_map(|k| lattice.ids().map(move |h| (k, h)))
        .filter(|&(k, h)| k != h && lattice.le(k, h))
        .collect();
    let bit = |(k, h): (SubgroupId, SubgroupId)| k.0 * m + h.0;
    let root = TransferSystem::minimal(lattice.clone());
    if !visit(&root) {
        return false;
    }
    let mut stack: Vec<(TransferSystem, usize)> = vec![(root, 0)];
    while let Some((sys, start)) = stack.pop() {
        for j in start..candidates.len() {
            if sys.bits().contains(bit(candidates[j])) {
                continue;
            }
            let mut next = sys.clone();
            next.close_with(&[candidates[j]]);
            let canonical = candidates[..j]
                .iter()
                .all(|&p| sys.bits().contains(bit(p)) == next.bits().contains(bit(p)));
            if !canonical {
                continue;
            }
            if !visit(&next) {
                return false;
            }
            stack.push((next, j + 1));
        }
    }
    true
}

/// Every transfer system, sorted by relation bitmask. At most
/// [`MAX_SYSTEMS`] are produced.
pub fn enumerate_systems(lattice: &Arc<SubgroupLattice>) -> Result<Vec<TransferSystem>> {
    lattice
        .limits()
        .check_group_order(lattice.group().order())?;
    let mut out = Vec::new();
    let finished = visit_systems(lattice, |ts| {
        out.push(ts.clone());
        out.len() <= MAX_SYSTEMS
    });
    if !finished {
        return Err(Error::SizeLimitExceeded {
            what: "transfer system count",
            size: out.len(),
            limit: MAX_SYSTEMS,
        });
    }
    out.sort_by(|a, b| a.mask_cmp(b));
    Ok(out)
}

/// Enumerates every transfer system and builds the containment poset.
pub fn enumerate(lattice: &Arc<SubgroupLattice>) -> Result<TransferSystemPoset> {
    Ok(TransferSystemPoset::new(enumerate_systems(lattice)?))
}

impl TransferSystemPoset {
    pub fn new(systems: Vec<TransferSystem>) -> Self {
        let n = systems.len();
        let mut leq = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if systems[i].is_subsystem_of(&systems[j]) {
                    leq[i].insert(j);
                }
            }
        }
        let mut hasse = Vec::new();
        for i in 0..n {
            for j in leq[i].ones() {
                if i == j {
                    continue;
                }
                // i < k < j for some k means k is above i and below j
                let between = leq[i]
                    .ones()
                    .any(|k| k != i && k != j && leq[k].contains(j));
                if !between {
                    hasse.push((i, j));
                }
            }
        }
        TransferSystemPoset {
            systems,
            leq,
            hasse,
        }
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn position(&self, ts: &TransferSystem) -> Option<usize> {
        self.systems
            .binary_search_by(|s| s.mask_cmp(ts))
            .ok()
            .filter(|&i| &self.systems[i] == ts)
    }

    /// Graphviz rendering of the Hasse diagram, nodes labeled by their
    /// non-reflexive pairs.
    pub fn to_dot(&self) -> String {
        let mut s =
            String::from("digraph transfer_systems {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, ts) in self.systems.iter().enumerate() {
            let _ = writeln!(s, "  s{i} [label=\"{i}: {}\"];", ts.describe());
        }
        for &(i, j) in &self.hasse {
            let _ = writeln!(s, "  s{i} -> s{j};");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Builtin;

    fn lat(b: Builtin) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(b.build().unwrap()).unwrap())
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(&lat(Builtin::Cyclic(1))).unwrap().len(), 1);
        assert_eq!(enumerate(&lat(Builtin::Cyclic(2))).unwrap().len(), 2);
        let c4 = enumerate(&lat(Builtin::Cyclic(4))).unwrap();
        assert_eq!(c4.len(), 5);
        assert!(c4.systems.iter().all(|s| s.violations().is_empty()));
    }

    #[test]
    fn extremes_and_order() {
        let l = lat(Builtin::Symmetric(3));
        let p = enumerate(&l).unwrap();
        assert_eq!(p.systems[0], TransferSystem::minimal(l.clone()));
        assert_eq!(
            p.systems.last().unwrap(),
            &TransferSystem::complete(l.clone())
        );
        assert!(p.systems.windows(2).all(|w| w[0].mask_cmp(&w[1]).is_lt()));
        for i in 0..p.len() {
            assert!(p.le(0, i) && p.le(i, p.len() - 1));
        }
    }

    #[test]
    fn hasse_of_c4() {
        let p = enumerate(&lat(Builtin::Cyclic(4))).unwrap();
        // trivial < {e->C2} < linear isometries < complete, and
        // trivial < {C2->C4} < complete
        assert_eq!(p.hasse.len(), 5);
        let dot = p.to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.lines().filter(|l| l.contains("-> s")).count(), 5);
    }
}
