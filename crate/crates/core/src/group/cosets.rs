use fixedbitset::FixedBitSet;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// The double cosets `K g H` partitioning a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetDecomposition {
    /// Each coset as a sorted element list, in order of representative.
    pub cosets: Vec<Vec<usize>>,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
    /// `coset_of[g]` is the index of the coset containing `g`.
    pub coset_of: Vec<usize>,
}

impl DoubleCosetDecomposition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// `K \ G / H` for two subgroups of `group`.
pub fn double_cosets_of(
    group: &FiniteGroup,
    left: &Subgroup,
    right: &Subgroup,
) -> Result<DoubleCosetDecomposition> {
    if left.parent() != group.token() || right.parent() != group.token() {
        return Err(Error::MixedParents);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for g in group.elements() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = cosets.len();
        let mut members = FixedBitSet::with_capacity(n);
        for &k in left.elements() {
            let kg = group.mul(k, g);
            for &h in right.elements() {
                members.insert(group.mul(kg, h));
            }
        }
        let coset: Vec<usize> = members.ones().collect();
        for &x in &coset {
            coset_of[x] = idx;
        }
        cosets.push(coset);
        representatives.push(g);
    }
    Ok(DoubleCosetDecomposition {
        cosets,
        representatives,
        coset_of,
    })
}

/// `N_G(S)`, by testing every element.
pub fn normalizer_of(group: &FiniteGroup, sub: &Subgroup) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(group.order());
    for g in group.elements() {
        if sub
            .elements()
            .iter()
            .all(|&x| sub.contains(group.conj(g, x)))
        {
            members.insert(g);
        }
    }
    Subgroup::from_members_unchecked(group, members)
}

/// A quotient `M / N` of a subgroup `M` by a normal subgroup `N` of `M`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[g]` is the class of `g` for `g` in `M`, `None` outside `M`.
    pub projection: Vec<Option<usize>>,
    /// Least element of each coset; `lifts[w]` projects to `w`.
    pub lifts: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, g: usize) -> Option<usize> {
        self.projection[g]
    }

    pub fn lift(&self, w: usize) -> usize {
        self.lifts[w]
    }
}

/// Builds `ambient / normal`. Cosets are numbered by their least element, so
/// the coset of the identity is element 0.
pub fn quotient(
    group: &FiniteGroup,
    ambient: &Subgroup,
    normal: &Subgroup,
    name: impl Into<String>,
) -> Result<Quotient> {
    if ambient.parent() != group.token() || normal.parent() != group.token() {
        return Err(Error::MixedParents);
    }
    if !normal.is_subgroup_of(ambient) {
        return Err(Error::NotASubgroup("quotient by a non-subgroup".into()));
    }
    let mut projection = vec![None; group.order()];
    let mut lifts = Vec::new();
    for &g in ambient.elements() {
        if projection[g].is_some() {
            continue;
        }
        let idx = lifts.len();
        for &h in normal.elements() {
            projection[group.mul(g, h)] = Some(idx);
        }
        lifts.push(g);
    }
    let order = lifts.len();
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            let prod = group.mul(lifts[a], lifts[b]);
            mul[a * order + b] = projection[prod].expect("ambient is closed") as u32;
        }
    }
    // normality: the class of g n g^-1 must not depend on n
    for &g in ambient.elements() {
        for &x in normal.elements() {
            if !normal.contains(group.conj(g, x)) {
                return Err(Error::NotASubgroup(
                    "quotient by a non-normal subgroup".into(),
                ));
            }
        }
    }
    Ok(Quotient {
        group: FiniteGroup::from_trusted_table(mul, order, name),
        projection,
        lifts,
    })
}
