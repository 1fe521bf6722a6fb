//! Double-coset combinatorics behind the Wirthmüller isomorphism.
//!
//! `(K:G:H)` is the set of double cosets `KgH` with `g^-1 K g <= H`.
//! `W_G(K)` acts on it by `n.KgH = KngH`, the stabilizer of `KgH` is the
//! image of `N_{gHg^-1}(K)`, and `KgH -> g^-1 K g` induces a bijection from
//! the orbits to the `H`-conjugacy classes of `G`-conjugates of `K` lying in
//! `H`.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{SubgroupId, SubgroupLattice};
use crate::gset::GSet;
use crate::transfer::TransferSystem;

/// One `W_G(K)`-orbit on `(K:G:H)`: positions in the coset list and the
/// stabilizer of the first, as elements of `W_G(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KghOrbit {
    pub cosets: Vec<usize>,
    pub stabilizer: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KghSet {
    pub k: SubgroupId,
    pub h: SubgroupId,
    /// Least element of each qualifying double coset, ascending.
    pub representatives: Vec<usize>,
    /// Elements of each qualifying double coset.
    pub members: Vec<Vec<usize>>,
    /// `action[w][i]`: position of `n KgH` for `n` any lift of `w`.
    pub action: Vec<Vec<usize>>,
    /// No double coset mixes qualifying and non-qualifying elements.
    pub filter_consistent: bool,
    /// The action does not depend on the lift of `w` or the element of `KgH`.
    pub well_defined: bool,
    pub orbits: Vec<KghOrbit>,
}

impl KghSet {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

pub fn kgh(lattice: &SubgroupLattice, k: SubgroupId, h: SubgroupId) -> Result<KghSet> {
    let dc = lattice.double_cosets(k, h)?;
    let group = lattice.group();
    let qualifies = |g: usize| lattice.le(lattice.conjugate(group.inv(g), k), h);
    let mut filter_consistent = true;
    let mut position = vec![usize::MAX; dc.len()];
    let mut representatives = Vec::new();
    let mut members = Vec::new();
    for (i, coset) in dc.cosets.iter().enumerate() {
        let all = coset.iter().all(|&g| qualifies(g));
        let any = coset.iter().any(|&g| qualifies(g));
        filter_consistent &= all == any;
        if all {
            position[i] = representatives.len();
            representatives.push(dc.representatives[i]);
            members.push(coset.clone());
        }
    }
    let weyl = lattice.weyl(k);
    let normalizer = lattice.subgroup(weyl.normalizer);
    let mut action = vec![vec![usize::MAX; representatives.len()]; weyl.order()];
    let mut well_defined = true;
    for &n in normalizer.elements() {
        let w = weyl.project(n).expect("n normalizes K");
        for (i, coset) in members.iter().enumerate() {
            for &g in coset {
                let j = position[dc.coset_of[group.mul(n, g)]];
                if j == usize::MAX {
                    well_defined = false;
                    continue;
                }
                let slot = &mut action[w][i];
                if *slot == usize::MAX {
                    *slot = j;
                } else if *slot != j {
                    well_defined = false;
                }
            }
        }
    }
    let mut orbits = Vec::new();
    let mut seen = FixedBitSet::with_capacity(representatives.len());
    for start in 0..representatives.len() {
        if seen.contains(start) {
            continue;
        }
        let mut cosets: Vec<usize> = (0..weyl.order()).map(|w| action[w][start]).collect();
        cosets.sort_unstable();
        cosets.dedup();
        for &c in &cosets {
            seen.insert(c);
        }
        let stabilizer = (0..weyl.order())
            .filter(|&w| action[w][start] == start)
            .collect();
        orbits.push(KghOrbit { cosets, stabilizer });
    }
    Ok(KghSet {
        k,
        h,
        representatives,
        members,
        action,
        filter_consistent,
        well_defined,
        orbits,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerRow {
    pub representative: usize,
    /// Stabilizer of the coset under the action, in `W_G(K)`.
    pub direct: Vec<usize>,
    /// Image in `W_G(K)` of `N_{gHg^-1}(K)`.
    pub expected: Vec<usize>,
    pub orbit_size: usize,
    pub equal: bool,
    pub orbit_stabilizer: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub k: SubgroupId,
    pub h: SubgroupId,
    pub weyl_order: usize,
    pub rows: Vec<StabilizerRow>,
}

impl StabilizerReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.equal && r.orbit_stabilizer)
    }
}

pub fn stabilizer_check(
    lattice: &SubgroupLattice,
    k: SubgroupId,
    h: SubgroupId,
) -> Result<StabilizerReport> {
    let set = kgh(lattice, k, h)?;
    let weyl = lattice.weyl(k);
    let normalizer = lattice.subgroup(weyl.normalizer);
    let mut rows = Vec::new();
    for (i, &g) in set.representatives.iter().enumerate() {
        let direct: Vec<usize> = (0..weyl.order())
            .filter(|&w| set.action[w][i] == i)
            .collect();
        let conj_h = lattice.subgroup(lattice.conjugate(g, h));
        let mut expected: Vec<usize> = normalizer
            .elements()
            .iter()
            .filter(|&&n| conj_h.contains(n))
            .map(|&n| weyl.project(n).expect("n normalizes K"))
            .collect();
        expected.sort_unstable();
        expected.dedup();
        let mut orbit: Vec<usize> = (0..weyl.order()).map(|w| set.action[w][i]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        rows.push(StabilizerRow {
            representative: g,
            equal: direct == expected,
            orbit_stabilizer: orbit.len() * direct.len() == weyl.order(),
            orbit_size: orbit.len(),
            direct,
            expected,
        });
    }
    Ok(StabilizerReport {
        k,
        h,
        weyl_order: weyl.order(),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub k: SubgroupId,
    pub h: SubgroupId,
    /// `(K)_{G;H}`: `H`-class representatives of the `G`-conjugates of `K`
    /// inside `H`, ascending.
    pub classes: Vec<SubgroupId>,
    /// `images[o]`: position in `classes` of `θ` of Weyl orbit `o`.
    pub images: Vec<usize>,
    /// Every element of every coset in an orbit gives the same class.
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl ThetaReport {
    pub fn is_bijection(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

pub fn theta(lattice: &SubgroupLattice, k: SubgroupId, h: SubgroupId) -> Result<ThetaReport> {
    let set = kgh(lattice, k, h)?;
    let group = lattice.group();
    let within = lattice.classes_within(h);
    let class_of = |g: usize| within.rep_of(lattice.conjugate(group.inv(g), k));
    let mut classes: Vec<SubgroupId> = group.elements().filter_map(class_of).collect();
    classes.sort_unstable();
    classes.dedup();
    let mut well_defined = true;
    let mut images = Vec::new();
    for orbit in &set.orbits {
        let mut found = None;
        for &c in &orbit.cosets {
            for &g in &set.members[c] {
                let r = class_of(g);
                if r.is_none() || (found.is_some() && found != r) {
                    well_defined = false;
                }
                found = found.or(r);
            }
        }
        let r = found.expect("orbits are nonempty");
        images.push(classes.binary_search(&r).expect("image is a listed class"));
    }
    let mut hit = FixedBitSet::with_capacity(classes.len());
    let mut injective = true;
    for &i in &images {
        injective &= !hit.put(i);
    }
    let surjective = hit.count_ones(..) == classes.len();
    Ok(ThetaReport {
        k,
        h,
        classes,
        images,
        well_defined,
        injective,
        surjective,
    })
}

/// `(G x_H X)^K` against the disjoint union of the `X^{g^-1 K g}` over
/// `(K:G:H)`.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionFixedPoints {
    pub k: SubgroupId,
    /// `K`-fixed points of the induced set, in its point numbering.
    pub left: Vec<usize>,
    /// `(coset position, point of X fixed by g^-1 K g)` for `g` the least
    /// element of the coset.
    pub right: Vec<(usize, usize)>,
    /// `matching[i]`: the induced point `[g, y]` for `right[i] = (KgH, y)`.
    pub matching: Vec<usize>,
    pub bijective: bool,
    /// The matching intertwines the `W_G(K)`-actions.
    pub equivariant: bool,
}

pub fn restriction_fixed_points(x: &GSet, k: SubgroupId) -> Result<RestrictionFixedPoints> {
    let lattice = x.lattice().clone();
    lattice.check(k).map_err(|_| Error::MixedGroups)?;
    let group = lattice.group();
    let h = x.acting();
    let top = lattice.top();
    let induced = x.induce(top)?;
    let left = induced.fixed_points(k)?;

    let cosets = lattice.coset_reps(h);
    let mut coset_index = vec![usize::MAX; group.order()];
    let hsub = lattice.subgroup(h);
    for (i, &r) in cosets.iter().enumerate() {
        for &y in hsub.elements() {
            coset_index[group.mul(r, y)] = i;
        }
    }
    // [g, y] = [r, (r^-1 g) y] for r the representative of gH
    let point = |g: usize, y: usize| {
        let i = coset_index[g];
        let hh = group.mul(group.inv(cosets[i]), g);
        i * x.len() + x.act(hh, y)
    };

    let set = kgh(&lattice, k, h)?;
    let mut right = Vec::new();
    for (c, &g) in set.representatives.iter().enumerate() {
        let kg = lattice.conjugate(group.inv(g), k);
        for y in x.fixed_points(kg)? {
            right.push((c, y));
        }
    }
    let matching: Vec<usize> = right
        .iter()
        .map(|&(c, y)| point(set.representatives[c], y))
        .collect();
    let mut sorted = matching.clone();
    sorted.sort_unstable();
    let bijective = sorted.windows(2).all(|w| w[0] != w[1]) && sorted == left;

    // n.(KgH, y) = (Kg'H, h y) where n g = κ g' h with κ in K, h in H
    let weyl = lattice.weyl(k);
    let ksub = lattice.subgroup(k);
    let mut equivariant = true;
    for w in 0..weyl.order() {
        let n = weyl.lift(w);
        for (i, &(c, y)) in right.iter().enumerate() {
            let g = set.representatives[c];
            let ng = group.mul(n, g);
            let c2 = set.action[w][c];
            let g2 = set.representatives[c2];
            let hh = ksub.elements().iter().find_map(|&kap| {
                let cand = group.mul(group.inv(g2), group.mul(group.inv(kap), ng));
                hsub.contains(cand).then_some(cand)
            });
            let Some(hh) = hh else {
                equivariant = false;
                continue;
            };
            let moved = (c2, x.act(hh, y));
            match right.iter().position(|&r| r == moved) {
                Some(j) => equivariant &= matching[j] == induced.act(n, matching[i]),
                None => equivariant = false,
            }
        }
    }
    Ok(RestrictionFixedPoints {
        k,
        left,
        right,
        matching,
        bijective,
        equivariant,
    })
}

/// A summand `EW_H(K')_+ ^_{W_H(K')} X^{K'}`, recorded by the `H`-class of
/// `K'`, which determines the other fields.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SummandDescriptor {
    pub class_rep: SubgroupId,
    pub weyl_order: usize,
    pub fixed_points: usize,
}

fn descriptor(
    lattice: &SubgroupLattice,
    h: SubgroupId,
    kp: SubgroupId,
    x: &GSet,
) -> Result<SummandDescriptor> {
    let rep = lattice
        .classes_within(h)
        .rep_of(kp)
        .ok_or(Error::InvalidSubgroupId(kp.0))?;
    let n_h = lattice.meet(lattice.normalizer(rep), h);
    Ok(SummandDescriptor {
        class_rep: rep,
        weyl_order: lattice.order(n_h) / lattice.order(rep),
        fixed_points: x.fixed_points(rep)?.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityTransferReport {
    pub h: SubgroupId,
    /// Whether `G/H` is admissible; otherwise nothing is checked.
    pub applicable: bool,
    pub checked: usize,
    /// `(K, g)` where the two sides disagree, `g` a conjugator with
    /// `g^-1 K g <= H` (or the identity when there is none).
    pub counterexamples: Vec<(SubgroupId, usize)>,
}

/// With `G/H` admissible: `G/K` is admissible iff `H/g^-1 K g` is for every
/// `g` with `g^-1 K g <= H`, checked for every `K` subconjugate to `H`.
pub fn admissibility_transfer_check(
    ts: &TransferSystem,
    h: SubgroupId,
) -> Result<AdmissibilityTransferReport> {
    let lattice = ts.lattice();
    lattice.check(h)?;
    let top = lattice.top();
    let mut report = AdmissibilityTransferReport {
        h,
        applicable: ts.contains(h, top),
        checked: 0,
        counterexamples: Vec::new(),
    };
    if !report.applicable {
        return Ok(report);
    }
    let group = lattice.group();
    for k in lattice.ids() {
        let (sub, witnesses) = lattice.is_subconjugate(k, h)?;
        if !sub {
            continue;
        }
        report.checked += 1;
        let lhs = ts.contains(k, top);
        let bad = witnesses
            .iter()
            .find(|&&g| !ts.contains(lattice.conjugate(group.inv(g), k), h));
        let rhs = bad.is_none();
        if lhs != rhs {
            report
                .counterexamples
                .push((k, bad.copied().unwrap_or(witnesses[0])));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct WirthmullerReport {
    pub h: SubgroupId,
    /// `H/K` admissible, one entry per `H`-class.
    pub target: Vec<SummandDescriptor>,
    /// `G/K` admissible and `K` subconjugate to `H`, one entry per Weyl orbit
    /// on `(K:G:H)`, via `θ`.
    pub source: Vec<SummandDescriptor>,
    pub matches: bool,
    /// Rebuilding the source from the largest member of each conjugacy
    /// class gives the same multiset.
    pub representative_invariant: bool,
    pub theta_bijective: bool,
    pub admissibility: AdmissibilityTransferReport,
}

impl WirthmullerReport {
    pub fn holds(&self) -> bool {
        self.matches
            && self.representative_invariant
            && self.theta_bijective
            && self.admissibility.counterexamples.is_empty()
    }
}

/// The `ts`-independent half of the index comparison at `H`: for each
/// `G`-class of `K` subconjugate to `H`, the `H`-classes of `g^-1 K g` over
/// the Weyl orbits on `(K:G:H)`, computed from two representatives of the
/// class.
#[derive(Clone, Debug)]
pub struct WirthmullerIndex {
    lattice: Arc<SubgroupLattice>,
    h: SubgroupId,
    terms: Vec<ClassTerms>,
    theta_bijective: bool,
}

#[derive(Clone, Debug)]
struct ClassTerms {
    rep: SubgroupId,
    rep_images: Vec<SubgroupId>,
    alt: SubgroupId,
    alt_images: Vec<SubgroupId>,
}

impl WirthmullerIndex {
    pub fn new(lattice: &Arc<SubgroupLattice>, h: SubgroupId) -> Result<Self> {
        lattice.check(h)?;
        let group = lattice.group();
        let within = lattice.classes_within(h);
        let images = |k: SubgroupId| -> Result<Vec<SubgroupId>> {
            let set = kgh(lattice, k, h)?;
            set.orbits
                .iter()
                .map(|orbit| {
                    let g = set.representatives[orbit.cosets[0]];
                    within
                        .rep_of(lattice.conjugate(group.inv(g), k))
                        .ok_or(Error::InvalidSubgroupId(k.0))
                })
                .collect()
        };
        let classes = lattice.classes();
        let mut terms = Vec::new();
        let mut theta_bijective = true;
        for c in 0..classes.len() {
            let rep = classes.reps[c];
            if !lattice.is_subconjugate(rep, h)?.0 {
                continue;
            }
            let alt = *classes.members[c].last().expect("classes are nonempty");
            theta_bijective &=
                theta(lattice, rep, h)?.is_bijection() && theta(lattice, alt, h)?.is_bijection();
            terms.push(ClassTerms {
                rep,
                rep_images: images(rep)?,
                alt,
                alt_images: images(alt)?,
            });
        }
        Ok(WirthmullerIndex {
            lattice: lattice.clone(),
            h,
            terms,
            theta_bijective,
        })
    }

    /// Target and source classes for `ts`, which must make `G/H` admissible.
    pub fn classes(&self, ts: &TransferSystem) -> Result<IndexClasses> {
        let lattice = &self.lattice;
        if ts.lattice().group().token() != lattice.group().token() {
            return Err(Error::MixedGroups);
        }
        let top = lattice.top();
        if !ts.contains(self.h, top) {
            return Err(Error::NotAdmissible(self.h.0));
        }
        let within = lattice.classes_within(self.h);
        let mut target: Vec<SubgroupId> = ts
            .admissible_orbit_classes(self.h)
            .into_iter()
            .map(|k| within.rep_of(k).ok_or(Error::InvalidSubgroupId(k.0)))
            .collect::<Result<_>>()?;
        let mut source = Vec::new();
        let mut alternate = Vec::new();
        for t in &self.terms {
            if ts.contains(t.rep, top) {
                source.extend(&t.rep_images);
            }
            if ts.contains(t.alt, top) {
                alternate.extend(&t.alt_images);
            }
        }
        target.sort();
        source.sort();
        alternate.sort();
        Ok(IndexClasses {
            lattice: lattice.clone(),
            h: self.h,
            target,
            source,
            alternate,
            theta_bijective: self.theta_bijective,
            admissibility: admissibility_transfer_check(ts, self.h)?,
        })
    }
}

/// Class-level target and source multisets, ready to be combined with `X`.
#[derive(Clone, Debug)]
pub struct IndexClasses {
    lattice: Arc<SubgroupLattice>,
    pub h: SubgroupId,
    /// `H`-class representatives `K` with `H/K` admissible.
    pub target: Vec<SubgroupId>,
    /// `H`-class representatives of the `θ` images.
    pub source: Vec<SubgroupId>,
    /// As `source`, from the largest member of each conjugacy class.
    pub alternate: Vec<SubgroupId>,
    pub theta_bijective: bool,
    pub admissibility: AdmissibilityTransferReport,
}

impl IndexClasses {
    pub fn report(&self, x: &GSet) -> Result<WirthmullerReport> {
        let lattice = &self.lattice;
        if x.lattice().group().token() != lattice.group().token() || x.acting() != self.h {
            return Err(Error::MixedGroups);
        }
        let describe = |ks: &[SubgroupId]| -> Result<Vec<SummandDescriptor>> {
            let mut out = ks
                .iter()
                .map(|&k| descriptor(lattice, self.h, k, x))
                .collect::<Result<Vec<_>>>()?;
            out.sort();
            Ok(out)
        };
        let target = describe(&self.target)?;
        let source = describe(&self.source)?;
        let alternate = describe(&self.alternate)?;
        Ok(WirthmullerReport {
            h: self.h,
            matches: source == target,
            representative_invariant: source == alternate,
            target,
            source,
            theta_bijective: self.theta_bijective,
            admissibility: self.admissibility.clone(),
        })
    }
}

/// Compares the summands of `(G x_H X)^G` read off from the target (`H/K`
/// admissible, one per `H`-class) with those from the source (`G/K`
/// admissible, one per Weyl orbit on `(K:G:H)`).
pub fn wirthmuller_index_match(
    ts: &TransferSystem,
    h: SubgroupId,
    x: &GSet,
) -> Result<WirthmullerReport> {
    let lattice = ts.lattice();
    lattice.check(h)?;
    if x.lattice().group().token() != lattice.group().token() || x.acting() != h {
        return Err(Error::MixedGroups);
    }
    WirthmullerIndex::new(lattice, h)?.classes(ts)?.report(x)
}
