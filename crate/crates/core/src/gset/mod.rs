//! Finite G-sets for a subgroup `H` of the lattice's group.
//!
//! A G-set stores its points `0..n` and, for every element of the acting
//! subgroup, the permutation it induces. The orbit decomposition and
//! stabilizer classes are derived on construction; they are the canonical
//! form used for isomorphism testing.

mod aut;
mod maps;

pub use aut::{GSetAutGroup, WreathCertificate, WreathProduct};
pub use maps::{brute_force_maps, EquivariantMapSet};

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{SubgroupId, SubgroupLattice};

/// One orbit: its points (ascending) and the stabilizer of its least point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub stabilizer: SubgroupId,
    /// Conjugacy class of the stabilizer within the acting subgroup.
    pub class: usize,
}

/// A row of the orbit table: `multiplicity` orbits of type `H/rep`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitType {
    pub class: usize,
    pub rep: SubgroupId,
    pub multiplicity: usize,
}

#[derive(Clone)]
pub struct GSet {
    lattice: Arc<SubgroupLattice>,
    acting: SubgroupId,
    size: usize,
    /// `action[g][x] = g.x` for `g` in the acting subgroup; empty rows elsewhere.
    action: Vec<Vec<usize>>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSet")
            .field("acting", &self.acting)
            .field("size", &self.size)
            .field("orbit_table", &self.orbit_table())
            .finish()
    }
}

impl GSet {
    /// Builds a G-set from explicit permutations, checking the action law.
    pub fn from_action(
        lattice: Arc<SubgroupLattice>,
        acting: SubgroupId,
        size: usize,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        lattice.check(acting)?;
        let group = lattice.group();
        if action.len() != group.order() {
            return Err(Error::InvalidInput(
                "action needs one row per group element".into(),
            ));
        }
        let sub = lattice.subgroup(acting);
        for g in group.elements() {
            let row = &action[g];
            if sub.contains(g) {
                if !crate::group::is_permutation(row, size) {
                    return Err(Error::InvalidInput(format!(
                        "element {g} does not act bijectively"
                    )));
                }
            } else if !row.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "element {g} is outside the acting subgroup"
                )));
            }
        }
        if action[0].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidInput("identity acts nontrivially".into()));
        }
        for &a in sub.elements() {
            for &b in sub.elements() {
                let ab = group.mul(a, b);
                if (0..size).any(|x| action[ab][x] != action[a][action[b][x]]) {
                    return Err(Error::InvalidInput(format!(
                        "action is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self::from_action_unchecked(lattice, acting, size, action))
    }

    pub(crate) fn from_action_unchecked(
        lattice: Arc<SubgroupLattice>,
        acting: SubgroupId,
        size: usize,
        action: Vec<Vec<usize>>,
    ) -> Self {
        let sub = lattice.subgroup(acting);
        let classes = lattice.classes_within(acting);
        let mut orbit_of = vec![usize::MAX; size];
        let mut orbits = Vec::new();
        for x in 0..size {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let idx = orbits.len();
            let mut points = Vec::new();
            let mut stab = FixedBitSet::with_capacity(lattice.group().order());
            for &h in sub.elements() {
                let y = action[h][x];
                if y == x {
                    stab.insert(h);
                }
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = idx;
                    points.push(y);
                }
            }
            points.sort_unstable();
            let stabilizer = lattice
                .id_of_members(&stab)
                .expect("stabilizers are subgroups");
            orbits.push(Orbit {
                points,
                stabilizer,
                class: classes
                    .class(stabilizer)
                    .expect("stabilizer lies in the acting group"),
            });
        }
        GSet {
            lattice,
            acting,
            size,
            action,
            orbits,
            orbit_of,
        }
    }

    /// The empty G-set for `acting`.
    pub fn empty(lattice: Arc<SubgroupLattice>, acting: SubgroupId) -> Result<Self> {
        Self::from_orbits(lattice, acting, &[])
    }

    /// `n` points with trivial action.
    pub fn trivial(lattice: Arc<SubgroupLattice>, acting: SubgroupId, n: usize) -> Result<Self> {
        Self::from_orbits(lattice, acting, &[(acting, n)])
    }

    /// The orbit `H/K`.
    pub fn orbit(
        lattice: Arc<SubgroupLattice>,
        acting: SubgroupId,
        stabilizer: SubgroupId,
    ) -> Result<Self> {
        Self::from_orbits(lattice, acting, &[(stabilizer, 1)])
    }

    /// `sum m_K . H/K` in the coset model.
    ///
    /// The points of each copy of `H/K` are the cosets `hK` ordered by least
    /// element, copies are concatenated in the order given, and `H` acts by
    /// left multiplication.
    pub fn from_orbits(
        lattice: Arc<SubgroupLattice>,
        acting: SubgroupId,
        spec: &[(SubgroupId, usize)],
    ) -> Result<Self> {
        lattice.check(acting)?;
        let group = lattice.group();
        let sub = lattice.subgroup(acting).clone();
        let mut action: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
        let mut offset = 0;
        for &(k, mult) in spec {
            lattice.check(k)?;
            if !lattice.le(k, acting) {
                return Err(Error::InvalidSubgroupId(k.0));
            }
            let kset = lattice.subgroup(k);
            // cosets hK of K in H
            let mut coset_of = vec![usize::MAX; group.order()];
            let mut reps = Vec::new();
            for &h in sub.elements() {
                if coset_of[h] != usize::MAX {
                    continue;
                }
                for &x in kset.elements() {
                    coset_of[group.mul(h, x)] = reps.len();
                }
                reps.push(h);
            }
            let index = reps.len();
            for _ in 0..mult {
                for &h in sub.elements() {
                    for &r in &reps {
                        action[h].push(offset + coset_of[group.mul(h, r)]);
                    }
                }
                offset += index;
            }
        }
        Ok(Self::from_action_unchecked(lattice, acting, offset, action))
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn acting(&self) -> SubgroupId {
        self.acting
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `g . x`; `g` must lie in the acting subgroup.
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.action[g]
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_index(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// Stabilizer of an arbitrary point.
    pub fn stabilizer(&self, x: usize) -> SubgroupId {
        let group = self.lattice.group();
        let mut stab = FixedBitSet::with_capacity(group.order());
        for &h in self.lattice.subgroup(self.acting).elements() {
            if self.action[h][x] == x {
                stab.insert(h);
            }
        }
        self.lattice
            .id_of_members(&stab)
            .expect("stabilizers are subgroups")
    }

    /// Orbit types with multiplicities, sorted by class.
    pub fn orbit_table(&self) -> Vec<OrbitType> {
        let classes = self.lattice.classes_within(self.acting);
        let mut counts = vec![0usize; classes.len()];
        for o in &self.orbits {
            counts[o.class] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(class, &multiplicity)| OrbitType {
                class,
                rep: classes.reps[class],
                multiplicity,
            })
            .collect()
    }

    fn same_context(&self, other: &GSet) -> Result<()> {
        if self.lattice.group().token() != other.lattice.group().token()
            || self.acting != other.acting
        {
            return Err(Error::MixedGroups);
        }
        Ok(())
    }

    /// Points fixed by every element of `k`.
    pub fn fixed_points(&self, k: SubgroupId) -> Result<Vec<usize>> {
        self.lattice.check(k)?;
        if !self.lattice.le(k, self.acting) {
            return Err(Error::MixedGroups);
        }
        let ks = self.lattice.subgroup(k);
        Ok((0..self.size)
            .filter(|&x| ks.elements().iter().all(|&g| self.action[g][x] == x))
            .collect())
    }

    /// The same points with the action restricted to `l`.
    pub fn restrict(&self, l: SubgroupId) -> Result<GSet> {
        self.lattice.check(l)?;
        if !self.lattice.le(l, self.acting) {
            return Err(Error::InvalidSubgroupId(l.0));
        }
        let ls = self.lattice.subgroup(l);
        let action = self
            .lattice
            .group()
            .elements()
            .map(|g| {
                if ls.contains(g) {
                    self.action[g].clone()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Ok(Self::from_action_unchecked(
            self.lattice.clone(),
            l,
            self.size,
            action,
        ))
    }

    /// `M x_H T` for `H` the acting subgroup and `H <= M`.
    ///
    /// Point `i |T| + t` is `[r_i, t]` where `r_i` is the least element of the
    /// `i`-th left coset of `H` in `M`.
    pub fn induce(&self, to: SubgroupId) -> Result<GSet> {
        self.lattice.check(to)?;
        if !self.lattice.le(self.acting, to) {
            return Err(Error::InvalidSubgroupId(to.0));
        }
        let group = self.lattice.group();
        let h = self.lattice.subgroup(self.acting);
        let m = self.lattice.subgroup(to);
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for &x in m.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &y in h.elements() {
                coset_of[group.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        let n = self.size;
        let mut action = vec![Vec::new(); group.order()];
        for &g in m.elements() {
            let mut row = vec![0; reps.len() * n];
            for (i, &r) in reps.iter().enumerate() {
                let gr = group.mul(g, r);
                let j = coset_of[gr];
                let hh = group.mul(group.inv(reps[j]), gr);
                for t in 0..n {
                    row[i * n + t] = j * n + self.action[hh][t];
                }
            }
            action[g] = row;
        }
        Ok(Self::from_action_unchecked(
            self.lattice.clone(),
            to,
            reps.len() * n,
            action,
        ))
    }

    /// `c_g^* T`: a G-set for `g H g^-1` where `g h g^-1` acts as `h` did.
    pub fn conjugate(&self, g: usize) -> GSet {
        let group = self.lattice.group();
        let target = self.lattice.conjugate(g, self.acting);
        let mut action = vec![Vec::new(); group.order()];
        for &h in self.lattice.subgroup(self.acting).elements() {
            action[group.conj(g, h)] = self.action[h].clone();
        }
        Self::from_action_unchecked(self.lattice.clone(), target, self.size, action)
    }

    /// `X + Y` with the points of `Y` after those of `X`.
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        self.same_context(other)?;
        let n = self.size;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + n)).collect())
            .collect();
        Ok(Self::from_action_unchecked(
            self.lattice.clone(),
            self.acting,
            n + other.size,
            action,
        ))
    }

    /// `X x Y` with diagonal action; point `(x, y)` is `x |Y| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.same_context(other)?;
        let m = other.size;
        let group = self.lattice.group();
        let sub = self.lattice.subgroup(self.acting);
        let mut action = vec![Vec::new(); group.order()];
        for &g in sub.elements() {
            let mut row = Vec::with_capacity(self.size * m);
            for x in 0..self.size {
                for y in 0..m {
                    row.push(self.action[g][x] * m + other.action[g][y]);
                }
            }
            action[g] = row;
        }
        Ok(Self::from_action_unchecked(
            self.lattice.clone(),
            self.acting,
            self.size * m,
            action,
        ))
    }

    /// Whether `map: self -> target` commutes with the action.
    pub fn is_equivariant(&self, target: &GSet, map: &[usize]) -> bool {
        if self.same_context(target).is_err() || map.len() != self.size {
            return false;
        }
        if map.iter().any(|&y| y >= target.size) {
            return false;
        }
        self.lattice
            .subgroup(self.acting)
            .elements()
            .iter()
            .all(|&g| (0..self.size).all(|x| map[self.action[g][x]] == target.action[g][map[x]]))
    }

    /// The fiber product of `f: X -> Z` and `g: Y -> Z`, as the sub-G-set
    /// `{(x, y) : f(x) = g(y)}` of `X x Y` with points in lexicographic order.
    /// Returns the pullback and its points as pairs.
    pub fn pullback(
        x: &GSet,
        f: &[usize],
        y: &GSet,
        g: &[usize],
        z: &GSet,
    ) -> Result<(GSet, Vec<(usize, usize)>)> {
        x.same_context(y)?;
        x.same_context(z)?;
        if !x.is_equivariant(z, f) {
            return Err(Error::NonEquivariantLeg("first leg".into()));
        }
        if !y.is_equivariant(z, g) {
            return Err(Error::NonEquivariantLeg("second leg".into()));
        }
        let pairs: Vec<(usize, usize)> = (0..x.size)
            .flat_map(|a| (0..y.size).map(move |b| (a, b)))
            .filter(|&(a, b)| f[a] == g[b])
            .collect();
        let prod = x.product(y)?;
        let points: Vec<usize> = pairs.iter().map(|&(a, b)| a * y.size + b).collect();
        Ok((prod.sub_gset(&points)?, pairs))
    }

    /// The sub-G-set on `points` (which must be invariant), relabeled
    /// `0..points.len()` in the given order.
    pub fn sub_gset(&self, points: &[usize]) -> Result<GSet> {
        let mut new_index = vec![usize::MAX; self.size];
        for (i, &p) in points.iter().enumerate() {
            if p >= self.size || new_index[p] != usize::MAX {
                return Err(Error::InvalidInput(format!("bad point {p} in subset")));
            }
            new_index[p] = i;
        }
        let group = self.lattice.group();
        let mut action = vec![Vec::new(); group.order()];
        for &g in self.lattice.subgroup(self.acting).elements() {
            let mut row = Vec::with_capacity(points.len());
            for &p in points {
                let q = new_index[self.action[g][p]];
                if q == usize::MAX {
                    return Err(Error::InvalidInput("subset is not invariant".into()));
                }
                row.push(q);
            }
            action[g] = row;
        }
        Ok(Self::from_action_unchecked(
            self.lattice.clone(),
            self.acting,
            points.len(),
            action,
        ))
    }

    /// Orbit count together with the Burnside average
    /// `(1/|H|) sum_h |Fix(h)|`, checked to be an integer.
    pub fn burnside_count(&self) -> (usize, usize) {
        let sub = self.lattice.subgroup(self.acting);
        let total: usize = sub
            .elements()
            .iter()
            .map(|&g| (0..self.size).filter(|&x| self.action[g][x] == x).count())
            .sum();
        assert_eq!(
            total % sub.order(),
            0,
            "Burnside sum must be divisible by |H|"
        );
        (self.orbits.len(), total / sub.order())
    }

    /// An explicit equivariant bijection `self -> other`, if one exists.
    ///
    /// Orbits of the same type are matched in order of their least points;
    /// the least point of each source orbit goes to the least target point
    /// with the same stabilizer.
    pub fn iso(&self, other: &GSet) -> Result<Option<Vec<usize>>> {
        self.same_context(other)?;
        if self.orbit_table() != other.orbit_table() {
            return Ok(None);
        }
        let classes = self.lattice.classes_within(self.acting).len();
        let mut pending: Vec<Vec<usize>> = vec![Vec::new(); classes];
        for (i, o) in other.orbits.iter().enumerate().rev() {
            pending[o.class].push(i);
        }
        let mut map = vec![usize::MAX; self.size];
        for o in &self.orbits {
            let j = pending[o.class].pop().expect("orbit tables agree");
            let target = &other.orbits[j];
            let x0 = o.points[0];
            let y = *target
                .points
                .iter()
                .find(|&&y| other.stabilizer(y) == o.stabilizer)
                .expect("conjugate stabilizers occur in the orbit");
            for (p, h) in self.transporters(o) {
                map[p] = other.action[h][y];
            }
            debug_assert_eq!(map[x0], y);
        }
        debug_assert!(self.is_equivariant(other, &map));
        Ok(Some(map))
    }

    /// For each point `p` of the orbit, some `h` with `h . x0 = p`.
    pub(crate) fn transporters(&self, orbit: &Orbit) -> Vec<(usize, usize)> {
        let x0 = orbit.points[0];
        let mut seen = vec![false; self.size];
        let mut out = Vec::with_capacity(orbit.points.len());
        for &h in self.lattice.subgroup(self.acting).elements() {
            let p = self.action[h][x0];
            if !std::mem::replace(&mut seen[p], true) {
                out.push((p, h));
            }
        }
        out
    }

    /// Equivariant maps `self -> target`; see [`EquivariantMapSet`].
    pub fn equivariant_maps(&self, target: &GSet) -> Result<EquivariantMapSet> {
        EquivariantMapSet::enumerate(self, target)
    }

    /// `Aut_G(self)`; see [`GSetAutGroup`].
    pub fn aut_group(&self) -> GSetAutGroup {
        GSetAutGroup::new(self)
    }

    /// Human-readable orbit decomposition such as `2.G/H1 + G/e`.
    pub fn describe(&self) -> String {
        let table = self.orbit_table();
        if table.is_empty() {
            return "0".into();
        }
        let top = if self.acting == self.lattice.top() {
            "G".to_string()
        } else {
            self.lattice.label(self.acting)
        };
        table
            .iter()
            .map(|t| {
                let orbit = format!("{top}/{}", self.lattice.label(t.rep));
                if t.multiplicity == 1 {
                    orbit
                } else {
                    format!("{}.{orbit}", t.multiplicity)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Orbit data for every `acting`-set with `n` points whose stabilizers come
/// from `classes`: multiplicity vectors with `sum m_K [acting:K] = n`, as
/// `(K, m)` lists with zero entries dropped, sorted by `K`.
pub fn orbit_multisets(
    lattice: &SubgroupLattice,
    acting: SubgroupId,
    classes: &[SubgroupId],
    n: usize,
) -> Vec<Vec<(SubgroupId, usize)>> {
    fn go(
        sizes: &[(SubgroupId, usize)],
        i: usize,
        left: usize,
        cur: &mut Vec<(SubgroupId, usize)>,
        out: &mut Vec<Vec<(SubgroupId, usize)>>,
    ) {
        if i == sizes.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let (k, s) = sizes[i];
        go(sizes, i + 1, left, cur, out);
        let mut m = 1;
        while m * s <= left {
            cur.push((k, m));
            go(sizes, i + 1, left - m * s, cur, out);
            cur.pop();
            m += 1;
        }
    }
    let h = lattice.order(acting);
    let mut sizes: Vec<(SubgroupId, usize)> =
        classes.iter().map(|&k| (k, h / lattice.order(k))).collect();
    sizes.sort();
    let mut out = Vec::new();
    go(&sizes, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Every isomorphism class of `acting`-set with `n` points.
pub fn all_of_size(
    lattice: &SubgroupLattice,
    acting: SubgroupId,
    n: usize,
) -> Vec<Vec<(SubgroupId, usize)>> {
    let reps = lattice.classes_within(acting).reps.clone();
    orbit_multisets(lattice, acting, &reps, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Builtin;

    fn lat(b: Builtin) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(b.build().unwrap()).unwrap())
    }

    fn counts(x: &GSet) -> Vec<(usize, usize)> {
        x.orbit_table()
            .iter()
            .map(|t| (t.rep.0, t.multiplicity))
            .collect()
    }

    #[test]
    fn coset_models() {
        let c2 = lat(Builtin::Cyclic(2));
        let pt = GSet::orbit(c2.clone(), c2.top(), c2.top()).unwrap();
        assert_eq!(pt.len(), 1);
        let free = GSet::orbit(c2.clone(), c2.top(), c2.trivial()).unwrap();
        assert_eq!(free.permutation(1), &[1, 0]);
        let c4 = lat(Builtin::Cyclic(4));
        let x = GSet::from_orbits(c4.clone(), c4.top(), &[(SubgroupId(1), 2)]).unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(x.orbits().len(), 2);
        assert!(x.orbits().iter().all(|o| o.points.len() == 2));
    }

    #[test]
    fn empty_set_is_allowed() {
        let s3 = lat(Builtin::Symmetric(3));
        let e = GSet::empty(s3.clone(), s3.top()).unwrap();
        assert!(e.is_empty());
        assert!(e.orbit_table().is_empty());
        let x = GSet::orbit(s3.clone(), s3.top(), s3.trivial()).unwrap();
        assert_eq!(
            e.disjoint_union(&x).unwrap().iso(&x).unwrap().is_some(),
            true
        );
        assert!(e.product(&x).unwrap().is_empty());
        assert_eq!(e.restrict(SubgroupId(1)).unwrap().len(), 0);
        assert_eq!(e.induce(s3.top()).unwrap().len(), 0);
        assert_eq!(e.equivariant_maps(&x).unwrap().maps.len(), 1);
        assert_eq!(x.equivariant_maps(&e).unwrap().maps.len(), 0);
        assert_eq!(e.aut_group().order(), 1);
    }

    #[test]
    fn restriction_examples() {
        let c4 = lat(Builtin::Cyclic(4));
        let free = GSet::orbit(c4.clone(), c4.top(), c4.trivial()).unwrap();
        let r = free.restrict(SubgroupId(1)).unwrap();
        assert_eq!(counts(&r), vec![(0, 2)]);
        let pt = GSet::orbit(c4.clone(), c4.top(), c4.top()).unwrap();
        assert_eq!(counts(&pt.restrict(SubgroupId(1)).unwrap()), vec![(1, 1)]);

        let s3 = lat(Builtin::Symmetric(3));
        let a3 = s3.ids().find(|&i| s3.order(i) == 3).unwrap();
        let x = GSet::orbit(s3.clone(), s3.top(), SubgroupId(1)).unwrap();
        let r = x.restrict(a3).unwrap();
        assert_eq!(r.orbits().len(), 1);
        assert_eq!(r.orbits()[0].stabilizer, s3.trivial());
    }

    #[test]
    fn induction_examples() {
        let c4 = lat(Builtin::Cyclic(4));
        let c2 = SubgroupId(1);
        let t = GSet::orbit(c4.clone(), c2, c4.trivial()).unwrap();
        let ind = t.induce(c4.top()).unwrap();
        let free = GSet::orbit(c4.clone(), c4.top(), c4.trivial()).unwrap();
        assert!(ind.iso(&free).unwrap().is_some());
        let pt = GSet::trivial(c4.clone(), c4.trivial(), 1).unwrap();
        assert!(pt.induce(c4.top()).unwrap().iso(&free).unwrap().is_some());
    }

    #[test]
    fn product_examples() {
        let c4 = lat(Builtin::Cyclic(4));
        let x = GSet::orbit(c4.clone(), c4.top(), SubgroupId(1)).unwrap();
        let p = x.product(&x).unwrap();
        assert_eq!(counts(&p), vec![(1, 2)]);
        let two = GSet::from_orbits(c4.clone(), c4.top(), &[(SubgroupId(1), 2)]).unwrap();
        assert!(two.iso(&p).unwrap().is_some());

        let s3 = lat(Builtin::Symmetric(3));
        let y = GSet::orbit(s3.clone(), s3.top(), SubgroupId(1)).unwrap();
        assert_eq!(counts(&y.product(&y).unwrap()), vec![(0, 1), (1, 1)]);
        let pt = GSet::trivial(s3.clone(), s3.top(), 1).unwrap();
        assert!(y.product(&pt).unwrap().iso(&y).unwrap().is_some());
    }

    #[test]
    fn pullback_requires_equivariant_legs() {
        let c4 = lat(Builtin::Cyclic(4));
        let free = GSet::orbit(c4.clone(), c4.top(), c4.trivial()).unwrap();
        let half = GSet::orbit(c4.clone(), c4.top(), SubgroupId(1)).unwrap();
        let proj: Vec<usize> = (0..4).map(|x| x % 2).collect();
        assert!(free.is_equivariant(&half, &proj));
        let (pb, pairs) = GSet::pullback(&free, &proj, &free, &proj, &half).unwrap();
        assert_eq!(pb.len(), 8);
        assert_eq!(pairs.len(), 8);
        assert_eq!(counts(&pb), vec![(0, 2)]);
        let bad = vec![0, 0, 1, 1];
        assert!(matches!(
            GSet::pullback(&free, &bad, &free, &proj, &half),
            Err(Error::NonEquivariantLeg(_))
        ));
    }

    #[test]
    fn iso_distinguishes_fixed_points() {
        let c2 = lat(Builtin::Cyclic(2));
        let two = GSet::trivial(c2.clone(), c2.top(), 2).unwrap();
        let free = GSet::orbit(c2.clone(), c2.top(), c2.trivial()).unwrap();
        assert_eq!(two.iso(&free).unwrap(), None);
        assert_eq!(free.iso(&free).unwrap(), Some(vec![0, 1]));
        let c4 = lat(Builtin::Cyclic(4));
        let x = GSet::orbit(c4.clone(), c4.top(), c4.trivial()).unwrap();
        assert!(matches!(x.iso(&free), Err(Error::MixedGroups)));
    }

    #[test]
    fn fixed_points_of_free_orbit() {
        let s3 = lat(Builtin::Symmetric(3));
        let free = GSet::orbit(s3.clone(), s3.top(), s3.trivial()).unwrap();
        for k in s3.ids().skip(1) {
            assert!(free.fixed_points(k).unwrap().is_empty());
        }
        assert_eq!(free.fixed_points(s3.trivial()).unwrap().len(), 6);
    }
}
