//! Transfer systems: the relation `K -> H` ("`H/K` is admissible") on the
//! subgroup lattice, encoding an indexing system.
//!
//! A relation is a transfer system when it is reflexive, refines inclusion,
//! is transitive, and is closed under conjugation and under restriction
//! (`K -> H` and `L <= H` give `K n L -> L`).

mod axioms;
mod poset;

pub use axioms::{verify_indexing_axioms, AxiomClause, IndexingReport};
pub use poset::{enumerate, enumerate_systems, visit_systems, TransferSystemPoset, MAX_SYSTEMS};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{SubgroupId, SubgroupLattice};
use crate::gset::GSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Reflexivity,
    InclusionRefinement,
    Transitivity,
    ConjugationClosure,
    RestrictionClosure,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::InclusionRefinement => "inclusion-refinement",
            Axiom::Transitivity => "transitivity",
            Axiom::ConjugationClosure => "conjugation-closure",
            Axiom::RestrictionClosure => "restriction-closure",
        };
        f.write_str(s)
    }
}

/// One failing instance of an axiom.
///
/// `subgroups` lists the witnessing subgroups: `[H]` for reflexivity,
/// `[K, H]` for refinement and conjugation, `[L, K, H]` for transitivity
/// (`L -> K -> H` present, `L -> H` missing) and `[K, H, L]` for restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub subgroups: Vec<SubgroupId>,
    pub conjugator: Option<usize>,
}

/// A transfer system on a fixed subgroup lattice.
#[derive(Clone)]
pub struct TransferSystem {
    lattice: Arc<SubgroupLattice>,
    /// Bit `k * m + h` is set when `k -> h`.
    rel: FixedBitSet,
}

impl PartialEq for TransferSystem {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.group().token() == other.lattice.group().token() && self.rel == other.rel
    }
}

impl Eq for TransferSystem {}

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransferSystem{{{}}}", self.describe())
    }
}

impl TransferSystem {
    /// Only the reflexive pairs: the initial system.
    pub fn minimal(lattice: Arc<SubgroupLattice>) -> Self {
        let m = lattice.len();
        let mut rel = FixedBitSet::with_capacity(m * m);
        for h in 0..m {
            rel.insert(h * m + h);
        }
        TransferSystem { lattice, rel }
    }

    /// Every inclusion `K <= H`: the terminal system.
    pub fn complete(lattice: Arc<SubgroupLattice>) -> Self {
        let m = lattice.len();
        let mut rel = FixedBitSet::with_capacity(m * m);
        for h in lattice.ids() {
            for k in lattice.below(h) {
                rel.insert(k.0 * m + h.0);
            }
        }
        TransferSystem { lattice, rel }
    }

    /// The least transfer system containing `pairs`.
    pub fn generate(
        lattice: Arc<SubgroupLattice>,
        pairs: &[(SubgroupId, SubgroupId)],
    ) -> Result<Self> {
        for &(k, h) in pairs {
            lattice.check(k)?;
            lattice.check(h)?;
            if !lattice.le(k, h) {
                return Err(Error::InvalidPair { k: k.0, h: h.0 });
            }
        }
        let mut ts = Self::minimal(lattice);
        ts.close_with(pairs);
        Ok(ts)
    }

    /// Validates a boolean relation matrix and wraps it.
    pub fn from_relation(lattice: Arc<SubgroupLattice>, rel: &[Vec<bool>]) -> Result<Self> {
        let violations = validate(&lattice, rel)?;
        if !violations.is_empty() {
            return Err(Error::InvalidTransferSystem(violations.len()));
        }
        Ok(Self::from_relation_unchecked(lattice, rel))
    }

    /// Wraps a relation without checking the axioms. Shape must match.
    pub fn from_relation_unchecked(lattice: Arc<SubgroupLattice>, rel: &[Vec<bool>]) -> Self {
        let m = lattice.len();
        let mut bits = FixedBitSet::with_capacity(m * m);
        for (k, row) in rel.iter().enumerate() {
            for (h, &b) in row.iter().enumerate() {
                if b {
                    bits.insert(k * m + h);
                }
            }
        }
        TransferSystem { lattice, rel: bits }
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.rel
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    /// `K -> H`.
    #[inline]
    pub fn contains(&self, k: SubgroupId, h: SubgroupId) -> bool {
        self.rel.contains(k.0 * self.lattice.len() + h.0)
    }

    pub fn relation(&self) -> Vec<Vec<bool>> {
        let m = self.lattice.len();
        (0..m)
            .map(|k| (0..m).map(|h| self.rel.contains(k * m + h)).collect())
            .collect()
    }

    /// Non-reflexive pairs `(K, H)`, sorted.
    pub fn pairs(&self) -> Vec<(SubgroupId, SubgroupId)> {
        let m = self.lattice.len();
        self.rel
            .ones()
            .map(|i| (SubgroupId(i / m), SubgroupId(i % m)))
            .filter(|(k, h)| k != h)
            .collect()
    }

    /// Non-reflexive pairs with `H` and `K` both class representatives, up
    /// to conjugation of the pair.
    pub fn pairs_up_to_conjugacy(&self) -> Vec<(SubgroupId, SubgroupId)> {
        self.pairs()
            .into_iter()
            .filter(|&(k, h)| {
                let l = &self.lattice;
                l.class_rep(h) == h && l.classes_within(h).rep_of(k) == Some(k)
            })
            .collect()
    }

    /// Containment of relations.
    pub fn is_subsystem_of(&self, other: &TransferSystem) -> bool {
        self.rel.is_subset(&other.rel)
    }

    /// Intersection of relations.
    pub fn meet(&self, other: &TransferSystem) -> Result<TransferSystem> {
        if self.lattice.group().token() != other.lattice.group().token() {
            return Err(Error::MixedGroups);
        }
        Ok(TransferSystem {
            lattice: self.lattice.clone(),
            rel: &self.rel & &other.rel,
        })
    }

    /// The least system containing both.
    pub fn join(&self, other: &TransferSystem) -> Result<TransferSystem> {
        if self.lattice.group().token() != other.lattice.group().token() {
            return Err(Error::MixedGroups);
        }
        let mut ts = self.clone();
        ts.close_with(&other.pairs());
        Ok(ts)
    }

    /// Compares relation bitmasks as binary numbers, bit `k m + h` having
    /// weight `2^(k m + h)`.
    pub fn mask_cmp(&self, other: &TransferSystem) -> Ordering {
        let (a, b) = (self.rel.as_slice(), other.rel.as_slice());
        a.iter().rev().cmp(b.iter().rev())
    }

    /// Adds `pairs` and closes under the five rules. Each newly added pair
    /// is pushed once and propagated once, so the order of rule application
    /// does not affect the result.
    pub(crate) fn close_with(&mut self, pairs: &[(SubgroupId, SubgroupId)]) {
        let lattice = self.lattice.clone();
        let m = lattice.len();
        let group = lattice.group();
        let rel = &mut self.rel;
        let mut work: Vec<(usize, usize)> = Vec::new();
        for &(k, h) in pairs {
            if !rel.put(k.0 * m + h.0) {
                work.push((k.0, h.0));
            }
        }
        let mut found = Vec::new();
        while let Some((k, h)) = work.pop() {
            let (ks, hs) = (SubgroupId(k), SubgroupId(h));
            for g in group.elements() {
                found.push((lattice.conjugate(g, ks).0, lattice.conjugate(g, hs).0));
            }
            for l in lattice.below(hs) {
                found.push((lattice.meet(ks, l).0, l.0));
            }
            for j in lattice.below(ks) {
                if rel.contains(j.0 * m + k) {
                    found.push((j.0, h));
                }
            }
            for x in 0..m {
                if rel.contains(h * m + x) {
                    found.push((k, x));
                }
            }
            for (a, b) in found.drain(..) {
                if !rel.put(a * m + b) {
                    work.push((a, b));
                }
            }
        }
    }

    /// Every violated axiom instance; empty for a transfer system.
    pub fn violations(&self) -> Vec<Violation> {
        violations_of(&self.lattice, &self.rel)
    }

    /// Whether every orbit `H/K` of `t` (an `H`-set) has `K' -> H` for the
    /// class representative `K'` of its stabilizer.
    pub fn admissible(&self, t: &GSet) -> bool {
        let h = t.acting();
        t.orbit_table().iter().all(|o| self.contains(o.rep, h))
    }

    /// Representatives of the `H`-classes of `K` with `H/K` admissible.
    pub fn admissible_orbit_classes(&self, h: SubgroupId) -> Vec<SubgroupId> {
        let mut out: Vec<SubgroupId> = self
            .lattice
            .classes_within(h)
            .reps
            .iter()
            .copied()
            .filter(|&k| self.contains(k, h))
            .collect();
        out.sort();
        out
    }

    /// `e->H1, e->G` style listing of the non-reflexive pairs; `trivial`
    /// when there are none.
    pub fn describe(&self) -> String {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return "trivial".into();
        }
        pairs
            .iter()
            .map(|&(k, h)| format!("{}->{}", self.lattice.label(k), self.lattice.label(h)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Named systems: `trivial`, `complete`, and `c4-linear-isometries`
    /// (only on a cyclic group of order 4).
    pub fn builtin(lattice: Arc<SubgroupLattice>, name: &str) -> Result<Self> {
        match name {
            "trivial" => Ok(Self::minimal(lattice)),
            "complete" => Ok(Self::complete(lattice)),
            "c4-linear-isometries" => {
                let g = lattice.group();
                if g.order() != 4 || !g.elements().any(|x| g.element_order(x) == 4) {
                    return Err(Error::InvalidInput(
                        "c4-linear-isometries needs the cyclic group of order 4".into(),
                    ));
                }
                let (e, top) = (lattice.trivial(), lattice.top());
                Self::generate(lattice, &[(e, top)])
            }
            other => Err(Error::InvalidInput(format!(
                "unknown transfer system '{other}'"
            ))),
        }
    }
}

/// Checks a relation matrix against the five axioms and lists every
/// failing instance.
pub fn validate(lattice: &SubgroupLattice, rel: &[Vec<bool>]) -> Result<Vec<Violation>> {
    let m = lattice.len();
    if rel.len() != m {
        return Err(Error::ShapeMismatch {
            expected: m,
            found: rel.len(),
        });
    }
    if let Some(row) = rel.iter().find(|r| r.len() != m) {
        return Err(Error::ShapeMismatch {
            expected: m,
            found: row.len(),
        });
    }
    let mut bits = FixedBitSet::with_capacity(m * m);
    for (k, row) in rel.iter().enumerate() {
        for (h, &b) in row.iter().enumerate() {
            if b {
                bits.insert(k * m + h);
            }
        }
    }
    Ok(violations_of(lattice, &bits))
}

fn violations_of(lattice: &SubgroupLattice, rel: &FixedBitSet) -> Vec<Violation> {
    let m = lattice.len();
    let has = |k: usize, h: usize| rel.contains(k * m + h);
    let ids = |v: &[usize]| v.iter().copied().map(SubgroupId).collect::<Vec<_>>();
    let mut out = Vec::new();
    for h in 0..m {
        if !has(h, h) {
            out.push(Violation {
                axiom: Axiom::Reflexivity,
                subgroups: ids(&[h]),
                conjugator: None,
            });
        }
    }
    let pairs: Vec<(usize, usize)> = rel.ones().map(|i| (i / m, i % m)).collect();
    for &(k, h) in &pairs {
        if !lattice.le(SubgroupId(k), SubgroupId(h)) {
            out.push(Violation {
                axiom: Axiom::InclusionRefinement,
                subgroups: ids(&[k, h]),
                conjugator: None,
            });
        }
    }
    for &(l, k) in &pairs {
        for h in 0..m {
            if has(k, h) && !has(l, h) {
                out.push(Violation {
                    axiom: Axiom::Transitivity,
                    subgroups: ids(&[l, k, h]),
                    conjugator: None,
                });
            }
        }
    }
    for &(k, h) in &pairs {
        for g in lattice.group().elements() {
            let (gk, gh) = (
                lattice.conjugate(g, SubgroupId(k)),
                lattice.conjugate(g, SubgroupId(h)),
            );
            if !has(gk.0, gh.0) {
                out.push(Violation {
                    axiom: Axiom::ConjugationClosure,
                    subgroups: ids(&[k, h]),
                    conjugator: Some(g),
                });
            }
        }
    }
    for &(k, h) in &pairs {
        if !lattice.le(SubgroupId(k), SubgroupId(h)) {
            continue;
        }
        for l in lattice.below(SubgroupId(h)) {
            if !has(lattice.meet(SubgroupId(k), l).0, l.0) {
                out.push(Violation {
                    axiom: Axiom::RestrictionClosure,
                    subgroups: ids(&[k, h, l.0]),
                    conjugator: None,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Builtin;

    fn lat(b: Builtin) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(b.build().unwrap()).unwrap())
    }

    fn rel_from(m: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut r = vec![vec![false; m]; m];
        for h in 0..m {
            r[h][h] = true;
        }
        for &(k, h) in pairs {
            r[k][h] = true;
        }
        r
    }

    #[test]
    fn validation_on_c4() {
        let c4 = lat(Builtin::Cyclic(4));
        assert!(validate(&c4, &rel_from(3, &[])).unwrap().is_empty());
        assert!(validate(&c4, &rel_from(3, &[(0, 1), (0, 2)]))
            .unwrap()
            .is_empty());
        let bad = validate(&c4, &rel_from(3, &[(0, 2)])).unwrap();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].axiom, Axiom::RestrictionClosure);
        assert_eq!(
            bad[0].subgroups,
            vec![SubgroupId(0), SubgroupId(2), SubgroupId(1)]
        );
        let trans = validate(&c4, &rel_from(3, &[(0, 1), (1, 2)])).unwrap();
        assert!(trans.iter().any(|v| v.axiom == Axiom::Transitivity));
        assert!(matches!(
            validate(&c4, &[vec![true]]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn refinement_and_conjugation_failures() {
        let s3 = lat(Builtin::Symmetric(3));
        let mut r = rel_from(s3.len(), &[(1, 4)]);
        let v = validate(&s3, &r).unwrap();
        assert!(v.iter().any(|v| v.axiom == Axiom::InclusionRefinement));
        r = rel_from(s3.len(), &[(0, 1)]);
        let v = validate(&s3, &r).unwrap();
        assert!(v
            .iter()
            .any(|v| v.axiom == Axiom::ConjugationClosure && v.conjugator.is_some()));
        r[0][0] = false;
        assert!(validate(&s3, &r)
            .unwrap()
            .iter()
            .any(|v| v.axiom == Axiom::Reflexivity));
    }

    #[test]
    fn generation_on_c4() {
        let c4 = lat(Builtin::Cyclic(4));
        let (e, c2, top) = (SubgroupId(0), SubgroupId(1), SubgroupId(2));
        assert_eq!(
            TransferSystem::generate(c4.clone(), &[]).unwrap(),
            TransferSystem::minimal(c4.clone())
        );
        let full = TransferSystem::generate(c4.clone(), &[(e, c2), (c2, top)]).unwrap();
        assert_eq!(full, TransferSystem::complete(c4.clone()));
        let lin = TransferSystem::generate(c4.clone(), &[(e, top)]).unwrap();
        assert_eq!(lin.pairs(), vec![(e, c2), (e, top)]);
        assert!(lin.violations().is_empty());
        assert!(matches!(
            TransferSystem::generate(c4, &[(top, e)]),
            Err(Error::InvalidPair { .. })
        ));
    }

    #[test]
    fn admissibility_on_c4() {
        let c4 = lat(Builtin::Cyclic(4));
        let lin = TransferSystem::builtin(c4.clone(), "c4-linear-isometries").unwrap();
        let top = c4.top();
        let half = GSet::orbit(c4.clone(), top, SubgroupId(1)).unwrap();
        assert!(!lin.admissible(&half));
        let t = GSet::from_orbits(c4.clone(), top, &[(c4.trivial(), 1), (top, 1)]).unwrap();
        assert!(lin.admissible(&t));
        assert!(lin.admissible(&GSet::trivial(c4.clone(), top, 3).unwrap()));
        assert!(lin.admissible(&GSet::empty(c4.clone(), top).unwrap()));
        assert_eq!(lin.admissible_orbit_classes(top), vec![SubgroupId(0), top]);
        let tr = TransferSystem::minimal(c4.clone());
        assert_eq!(tr.admissible_orbit_classes(top), vec![top]);
        assert_eq!(
            TransferSystem::complete(c4)
                .admissible_orbit_classes(top)
                .len(),
            3
        );
    }

    #[test]
    fn builtin_names() {
        let s3 = lat(Builtin::Symmetric(3));
        assert!(TransferSystem::builtin(s3.clone(), "c4-linear-isometries").is_err());
        assert!(TransferSystem::builtin(s3.clone(), "nope").is_err());
        assert_eq!(
            TransferSystem::builtin(s3, "trivial").unwrap().describe(),
            "trivial"
        );
    }
}
