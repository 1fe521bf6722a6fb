//! Component counts for the fixed points of free algebras and of suspension
//! spectra over an indexing system.
//!
//! At arity `n` the `G`-fixed points of the free algebra on `X` split over
//! the admissible `G`-sets `T` with `|T| = n`; the summand for `T` has
//! `Map^G(T, X) / Aut_G(T)` as its set of components. For spectra the
//! summands are the admissible orbits `G/H`, contributing `X^H / W_G(H)`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{compose, invert, lex_permutations, lex_rank, SubgroupId, SubgroupLattice};
use crate::gset::{orbit_multisets, GSet};
use crate::limits::ORACLE_MAX_ARITY;
use crate::transfer::TransferSystem;

/// Cap on `|Map^G(T, X)|` for a single summand.
pub const MAX_MAPS: usize = 1 << 18;
/// Above this many `(automorphism, map)` pairs the Burnside cross-check is
/// skipped.
pub const BURNSIDE_BUDGET: usize = 1 << 23;

/// One summand `T` at a fixed arity. `orbits` lists `(K, m)`: `m` copies of
/// `G/K`, with `K` a class representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingSummand {
    pub orbits: Vec<(SubgroupId, usize)>,
    pub description: String,
    pub aut_order: usize,
    pub map_count: usize,
    pub components: usize,
    /// `(1/|Aut|) sum_a |Fix(a)|`, when within budget; always equal to
    /// `components`.
    pub burnside: Option<usize>,
}

/// The summands at arity `n` for every orbit class at once, so that the
/// summands for any indexing system are found by filtering.
#[derive(Clone, Debug)]
pub struct SplittingTable {
    lattice: Arc<SubgroupLattice>,
    pub arity: usize,
    pub summands: Vec<SplittingSummand>,
}

impl SplittingTable {
    pub fn new(x: &GSet, n: usize) -> Result<Self> {
        let lattice = x.lattice().clone();
        let classes = lattice.classes().reps.clone();
        Self::over_classes(x, n, &classes)
    }

    fn over_classes(x: &GSet, n: usize, classes: &[SubgroupId]) -> Result<Self> {
        let lattice = x.lattice().clone();
        if x.acting() != lattice.top() {
            return Err(Error::InvalidInput(
                "X must be a G-set for the whole group".into(),
            ));
        }
        lattice.limits().check_arity(n)?;
        let mut summands = Vec::new();
        for orbits in orbit_multisets(&lattice, lattice.top(), classes, n) {
            summands.push(summand(x, orbits)?);
        }
        summands.sort_by(|a, b| a.orbits.cmp(&b.orbits));
        Ok(SplittingTable {
            lattice,
            arity: n,
            summands,
        })
    }

    /// The summands whose orbits are all admissible for `ts`.
    pub fn for_system(&self, ts: &TransferSystem) -> Vec<SplittingSummand> {
        let top = self.lattice.top();
        self.summands
            .iter()
            .filter(|s| s.orbits.iter().all(|&(k, _)| ts.contains(k, top)))
            .cloned()
            .collect()
    }
}

/// Summands at arity `n`, one per isomorphism class of admissible `G`-set of
/// size `n`, with component counts found by enumerating orbits of
/// `Aut_G(T)` on `Map^G(T, X)`.
pub fn free_algebra_fixed_components(
    ts: &TransferSystem,
    x: &GSet,
    n: usize,
) -> Result<Vec<SplittingSummand>> {
    let lattice = ts.lattice();
    if lattice.group().token() != x.lattice().group().token() {
        return Err(Error::MixedGroups);
    }
    let classes = ts.admissible_orbit_classes(lattice.top());
    Ok(SplittingTable::over_classes(x, n, &classes)?.summands)
}

pub fn total_components(summands: &[SplittingSummand]) -> usize {
    summands.iter().map(|s| s.components).sum()
}

fn summand(x: &GSet, orbits: Vec<(SubgroupId, usize)>) -> Result<SplittingSummand> {
    let lattice = x.lattice().clone();
    let t = GSet::from_orbits(lattice, x.acting(), &orbits)?;
    let estimate = orbits
        .iter()
        .try_fold(1usize, |acc, &(k, m)| {
            let fixed = x.fixed_points(k).ok()?.len();
            acc.checked_mul(fixed.checked_pow(m as u32)?)
        })
        .unwrap_or(usize::MAX);
    if estimate > MAX_MAPS {
        return Err(Error::SizeLimitExceeded {
            what: "equivariant map count",
            size: estimate,
            limit: MAX_MAPS,
        });
    }
    let maps = t.equivariant_maps(x)?;
    let aut = t.aut_group();
    let gens: Vec<Vec<usize>> = aut
        .group()
        .generators()
        .iter()
        .map(|&a| aut.permutation(a).to_vec())
        .collect();
    // orbits of f -> f o a, explored along generators
    let mut seen = FixedBitSet::with_capacity(maps.len());
    let mut components = 0;
    let mut stack = Vec::new();
    for start in 0..maps.len() {
        if seen.put(start) {
            continue;
        }
        components += 1;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for a in &gens {
                let moved = compose(&maps.maps[i], a);
                let j = maps
                    .index_of(&moved)
                    .expect("precomposition with an automorphism is equivariant");
                if !seen.put(j) {
                    stack.push(j);
                }
            }
        }
    }
    let burnside = (aut.order().saturating_mul(maps.len()) <= BURNSIDE_BUDGET).then(|| {
        let fixed: usize = (0..aut.order())
            .map(|a| {
                let p = aut.permutation(a);
                maps.maps
                    .iter()
                    .filter(|f| (0..f.len()).all(|i| f[p[i]] == f[i]))
                    .count()
            })
            .sum();
        assert_eq!(fixed % aut.order(), 0, "Burnside sum must divide evenly");
        fixed / aut.order()
    });
    if let Some(b) = burnside {
        assert_eq!(
            b, components,
            "orbit enumeration disagrees with the Burnside count"
        );
    }
    Ok(SplittingSummand {
        description: t.describe(),
        orbits,
        aut_order: aut.order(),
        map_count: maps.len(),
        components,
        burnside,
    })
}

/// The brute-force count of components, cached per `(X, n)` so that it can
/// be read off for many indexing systems.
///
/// Enumerates homomorphisms `f: G -> Σ_n` and equivariant `x: [n] -> X`, and
/// identifies `(f, x)` with `(σ f σ^-1, x o σ^-1)`. Each class records the
/// stabilizers of its points; it counts for an indexing system when all of
/// them are admissible.
#[derive(Clone, Debug)]
pub struct BruteForceOracle {
    lattice: Arc<SubgroupLattice>,
    pub arity: usize,
    classes: Vec<Vec<SubgroupId>>,
}

impl BruteForceOracle {
    pub fn new(x: &GSet, n: usize) -> Result<Self> {
        let lattice = x.lattice().clone();
        if x.acting() != lattice.top() {
            return Err(Error::InvalidInput(
                "X must be a G-set for the whole group".into(),
            ));
        }
        if n > ORACLE_MAX_ARITY {
            return Err(Error::SizeLimitExceeded {
                what: "oracle arity",
                size: n,
                limit: ORACLE_MAX_ARITY,
            });
        }
        let group = lattice.group();
        let perms = lex_permutations(n);
        let homs = homomorphisms(&lattice, &perms);
        let xs_total = x
            .len()
            .checked_pow(n as u32)
            .filter(|&t| t <= MAX_MAPS)
            .ok_or(Error::SizeLimitExceeded {
                what: "labeling count",
                size: usize::MAX,
                limit: MAX_MAPS,
            })?;
        let mut canon: HashSet<Vec<usize>> = HashSet::new();
        let mut classes = Vec::new();
        for f in &homs {
            let fp: Vec<&[usize]> = f.iter().map(|&r| perms[r].as_slice()).collect();
            for code in 0..xs_total {
                let mut c = code;
                let mut lab = vec![0; n];
                for slot in lab.iter_mut().rev() {
                    *slot = c % x.len().max(1);
                    c /= x.len().max(1);
                }
                let equivariant = group
                    .elements()
                    .all(|g| (0..n).all(|i| lab[fp[g][i]] == x.act(g, lab[i])));
                if !equivariant {
                    continue;
                }
                let key = perms
                    .iter()
                    .map(|s| {
                        let si = invert(s);
                        let mut key: Vec<usize> = fp
                            .iter()
                            .map(|p| lex_rank(&compose(&compose(s, p), &si)))
                            .collect();
                        key.extend(si.iter().map(|&j| lab[j]));
                        key
                    })
                    .min()
                    .expect("Σ_n is nonempty");
                if canon.insert(key) {
                    let mut stabs: Vec<SubgroupId> = (0..n)
                        .map(|i| {
                            let members: FixedBitSet =
                                group.elements().filter(|&g| fp[g][i] == i).collect();
                            let mut m = members;
                            m.grow(group.order());
                            lattice
                                .id_of_members(&m)
                                .expect("stabilizers are subgroups")
                        })
                        .collect();
                    stabs.sort();
                    stabs.dedup();
                    classes.push(stabs);
                }
            }
        }
        Ok(BruteForceOracle {
            lattice,
            arity: n,
            classes,
        })
    }

    /// For each class, the distinct stabilizers of its points.
    pub fn stabilizer_sets(&self) -> &[Vec<SubgroupId>] {
        &self.classes
    }

    /// Number of classes whose point stabilizers are all admissible.
    pub fn count(&self, ts: &TransferSystem) -> usize {
        let top = self.lattice.top();
        self.classes
            .iter()
            .filter(|s| s.iter().all(|&k| ts.contains(k, top)))
            .count()
    }
}

/// `brute_force_components(ts, X, n)`: see [`BruteForceOracle`].
pub fn brute_force_components(ts: &TransferSystem, x: &GSet, n: usize) -> Result<usize> {
    if ts.lattice().group().token() != x.lattice().group().token() {
        return Err(Error::MixedGroups);
    }
    Ok(BruteForceOracle::new(x, n)?.count(ts))
}

/// All homomorphisms `G -> Σ_n`, as the lexicographic rank of each image.
fn homomorphisms(lattice: &SubgroupLattice, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let group = lattice.group();
    let gens = group.generators();
    let mut out = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    'outer: loop {
        // extend along words in the generators, then check every product
        let mut f: Vec<Option<usize>> = vec![None; group.order()];
        f[0] = Some(lex_rank(&perms[0]));
        let mut frontier = vec![0usize];
        while let Some(y) = frontier.pop() {
            for (s, &g) in gens.iter().enumerate() {
                let z = group.mul(y, g);
                if f[z].is_none() {
                    let img = compose(&perms[f[y].unwrap()], &perms[pick[s]]);
                    f[z] = Some(lex_rank(&img));
                    frontier.push(z);
                }
            }
        }
        let f: Vec<usize> = f
            .into_iter()
            .map(|v| v.expect("generators generate"))
            .collect();
        let hom = group.elements().all(|a| {
            group
                .elements()
                .all(|b| f[group.mul(a, b)] == lex_rank(&compose(&perms[f[a]], &perms[f[b]])))
        });
        if hom {
            out.push(f);
        }
        let mut k = pick.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < perms.len() {
                continue 'outer;
            }
            pick[k] = 0;
        }
    }
    out
}

/// A summand `G/H` of the fixed points of the suspension spectrum, with
/// `X^H` as a `W_G(H)`-set.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummand {
    pub orbit: SubgroupId,
    pub description: String,
    pub weyl_order: usize,
    pub fixed_points: usize,
    pub components: usize,
    pub burnside: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSplitting {
    pub summands: Vec<SpectrumSummand>,
    /// Rank of the free abelian group of components: `sum_H |X^H / W_G(H)|`.
    pub rank: usize,
}

pub fn spectrum_tom_dieck(ts: &TransferSystem, x: &GSet) -> Result<SpectrumSplitting> {
    let lattice = ts.lattice().clone();
    if lattice.group().token() != x.lattice().group().token() || x.acting() != lattice.top() {
        return Err(Error::MixedGroups);
    }
    let mut summands = Vec::new();
    for h in ts.admissible_orbit_classes(lattice.top()) {
        let weyl = lattice.weyl(h);
        let fixed = x.fixed_points(h)?;
        let mut index = vec![usize::MAX; x.len()];
        for (i, &p) in fixed.iter().enumerate() {
            index[p] = i;
        }
        let action: Vec<Vec<usize>> = weyl
            .group
            .elements()
            .map(|w| {
                fixed
                    .iter()
                    .map(|&p| index[x.act(weyl.lift(w), p)])
                    .collect()
            })
            .collect();
        let wlat = Arc::new(SubgroupLattice::with_limits(
            weyl.group.clone(),
            *lattice.limits(),
        )?);
        let top = wlat.top();
        let xh = GSet::from_action(wlat, top, fixed.len(), action)?;
        let (components, burnside) = xh.burnside_count();
        summands.push(SpectrumSummand {
            orbit: h,
            description: format!("G/{}", lattice.label(h)),
            weyl_order: weyl.order(),
            fixed_points: fixed.len(),
            components,
            burnside,
        });
    }
    let rank = summands.iter().map(|s| s.components).sum();
    Ok(SpectrumSplitting { summands, rank })
}

/// One arity of the coproduct check.
#[derive(Clone, Debug, Serialize)]
pub struct CoproductRow {
    pub arity: usize,
    pub coproduct: usize,
    pub convolution: usize,
    pub summands_matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoproductReport {
    pub rows: Vec<CoproductRow>,
}

impl CoproductReport {
    pub fn holds(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.coproduct == r.convolution && r.summands_matched)
    }
}

/// Compares the components for `X + Y` with the convolution of those for
/// `X` and `Y`, arity by arity up to `bound`. Summand by summand, the count
/// for `T` over `X + Y` must be the sum over splittings `T = T1 + T2` of
/// the products of the counts for `T1` over `X` and `T2` over `Y`.
pub fn coproduct_vs_product_check(
    ts: &TransferSystem,
    x: &GSet,
    y: &GSet,
    bound: usize,
) -> Result<CoproductReport> {
    let xy = x.disjoint_union(y)?;
    let per = |z: &GSet| -> Result<Vec<BTreeMap<Vec<(SubgroupId, usize)>, usize>>> {
        (0..=bound)
            .map(|n| {
                Ok(free_algebra_fixed_components(ts, z, n)?
                    .into_iter()
                    .map(|s| (s.orbits, s.components))
                    .collect())
            })
            .collect()
    };
    let (cx, cy, cxy) = (per(x)?, per(y)?, per(&xy)?);
    let mut rows = Vec::new();
    for n in 0..=bound {
        let coproduct = cxy[n].values().sum();
        let convolution = (0..=n)
            .map(|i| cx[i].values().sum::<usize>() * cy[n - i].values().sum::<usize>())
            .sum();
        let mut expected: BTreeMap<Vec<(SubgroupId, usize)>, usize> =
            cxy[n].keys().map(|k| (k.clone(), 0)).collect();
        for i in 0..=n {
            for (t1, a) in &cx[i] {
                for (t2, b) in &cy[n - i] {
                    *expected.entry(merge(t1, t2)).or_insert(0) += a * b;
                }
            }
        }
        rows.push(CoproductRow {
            arity: n,
            coproduct,
            convolution,
            summands_matched: expected == cxy[n],
        });
    }
    Ok(CoproductReport { rows })
}

fn merge(a: &[(SubgroupId, usize)], b: &[(SubgroupId, usize)]) -> Vec<(SubgroupId, usize)> {
    let mut m: BTreeMap<SubgroupId, usize> = BTreeMap::new();
    for &(k, c) in a.iter().chain(b) {
        *m.entry(k).or_insert(0) += c;
    }
    m.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Builtin;

    fn lat(b: Builtin) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(b.build().unwrap()).unwrap())
    }

    #[test]
    fn trivial_system_counts_multisets() {
        let s3 = lat(Builtin::Symmetric(3));
        let x =
            GSet::from_orbits(s3.clone(), s3.top(), &[(s3.top(), 3), (s3.trivial(), 1)]).unwrap();
        let tr = TransferSystem::minimal(s3.clone());
        let sums = free_algebra_fixed_components(&tr, &x, 2).unwrap();
        assert_eq!(sums.len(), 1);
        // multisets of size 2 from 3 fixed points
        assert_eq!(sums[0].components, 6);
        assert_eq!(brute_force_components(&tr, &x, 2).unwrap(), 6);
    }

    #[test]
    fn free_c2_example() {
        let c2 = lat(Builtin::Cyclic(2));
        let x = GSet::orbit(c2.clone(), c2.top(), c2.trivial()).unwrap();
        let full = TransferSystem::complete(c2.clone());
        let sums = free_algebra_fixed_components(&full, &x, 2).unwrap();
        assert_eq!(sums.len(), 2);
        let by_key: Vec<(usize, usize)> = sums
            .iter()
            .map(|s| (s.orbits[0].0 .0, s.components))
            .collect();
        assert!(by_key.contains(&(0, 1)));
        assert!(by_key.contains(&(1, 0)));
        assert_eq!(brute_force_components(&full, &x, 2).unwrap(), 1);
    }

    #[test]
    fn empty_and_zero_arity() {
        let c2 = lat(Builtin::Cyclic(2));
        let full = TransferSystem::complete(c2.clone());
        let empty = GSet::empty(c2.clone(), c2.top()).unwrap();
        for n in 1..4 {
            assert_eq!(
                total_components(&free_algebra_fixed_components(&full, &empty, n).unwrap()),
                0
            );
            assert_eq!(brute_force_components(&full, &empty, n).unwrap(), 0);
        }
        assert_eq!(brute_force_components(&full, &empty, 0).unwrap(), 1);
        assert_eq!(
            total_components(&free_algebra_fixed_components(&full, &empty, 0).unwrap()),
            1
        );
    }

    #[test]
    fn two_fixed_points_pairs() {
        let c3 = lat(Builtin::Cyclic(3));
        let x = GSet::trivial(c3.clone(), c3.top(), 2).unwrap();
        let tr = TransferSystem::minimal(c3);
        assert_eq!(brute_force_components(&tr, &x, 2).unwrap(), 3);
    }

    #[test]
    fn spectrum_ranks() {
        let s3 = lat(Builtin::Symmetric(3));
        let pt = GSet::trivial(s3.clone(), s3.top(), 1).unwrap();
        assert_eq!(
            spectrum_tom_dieck(&TransferSystem::complete(s3.clone()), &pt)
                .unwrap()
                .rank,
            4
        );
        assert_eq!(
            spectrum_tom_dieck(&TransferSystem::minimal(s3), &pt)
                .unwrap()
                .rank,
            1
        );
        let c4 = lat(Builtin::Cyclic(4));
        let lin = TransferSystem::builtin(c4.clone(), "c4-linear-isometries").unwrap();
        let pt = GSet::trivial(c4.clone(), c4.top(), 1).unwrap();
        let split = spectrum_tom_dieck(&lin, &pt).unwrap();
        assert_eq!(split.rank, 2);
        assert_eq!(
            split.summands.iter().map(|s| s.orbit).collect::<Vec<_>>(),
            vec![c4.trivial(), c4.top()]
        );
    }

    #[test]
    fn coproducts() {
        let c2 = lat(Builtin::Cyclic(2));
        let full = TransferSystem::complete(c2.clone());
        let pt = GSet::trivial(c2.clone(), c2.top(), 1).unwrap();
        let empty = GSet::empty(c2.clone(), c2.top()).unwrap();
        assert!(coproduct_vs_product_check(&full, &pt, &empty, 3)
            .unwrap()
            .holds());
        assert!(coproduct_vs_product_check(&full, &pt, &pt, 2)
            .unwrap()
            .holds());
        let c4 = lat(Builtin::Cyclic(4));
        let lin = TransferSystem::builtin(c4.clone(), "c4-linear-isometries").unwrap();
        let free = GSet::orbit(c4.clone(), c4.top(), c4.trivial()).unwrap();
        let pt = GSet::trivial(c4.clone(), c4.top(), 1).unwrap();
        let r = coproduct_vs_product_check(&lin, &free, &pt, 3).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}
