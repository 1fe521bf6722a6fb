use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{
    double_cosets_of, normalizer_of, quotient, DoubleCosetDecomposition, FiniteGroup, Subgroup,
};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Index of a subgroup in the canonical order of its lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubgroupId(pub usize);

impl SubgroupId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Conjugacy classes of the subgroups of `within`, under conjugation by
/// elements of `within`. Classes are numbered by their least member.
#[derive(Clone, Debug)]
pub struct RelativeClasses {
    pub within: SubgroupId,
    /// `class_of[i]` is the class of subgroup `i`, `None` unless `i <= within`.
    pub class_of: Vec<Option<usize>>,
    /// Least member of each class.
    pub reps: Vec<SubgroupId>,
    pub members: Vec<Vec<SubgroupId>>,
}

impl RelativeClasses {
    pub fn class(&self, id: SubgroupId) -> Option<usize> {
        self.class_of[id.0]
    }

    pub fn rep_of(&self, id: SubgroupId) -> Option<SubgroupId> {
        self.class(id).map(|c| self.reps[c])
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// `W_G(H) = N_G(H) / H` with the projection from the normalizer.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub normalizer: SubgroupId,
    pub group: FiniteGroup,
    /// Class in `W` of each element of `G`; `None` outside `N_G(H)`.
    pub projection: Vec<Option<usize>>,
    /// Least element of `N_G(H)` in each class.
    pub lifts: Vec<usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn project(&self, g: usize) -> Option<usize> {
        self.projection[g]
    }

    pub fn lift(&self, w: usize) -> usize {
        self.lifts[w]
    }
}

/// All subgroups of a finite group with inclusion, conjugation, normalizers
/// and Weyl groups.
///
/// Subgroups are sorted by order and then by element list, so id 0 is the
/// trivial subgroup and the last id is the whole group.
pub struct SubgroupLattice {
    group: FiniteGroup,
    limits: Limits,
    subgroups: Vec<Subgroup>,
    index: HashMap<FixedBitSet, SubgroupId>,
    /// `below[j]` holds every `i` with `S_i <= S_j`.
    below: Vec<FixedBitSet>,
    /// `conj[g][i]` is the id of `g S_i g^-1`.
    conj: Vec<Vec<SubgroupId>>,
    meet: Vec<Vec<SubgroupId>>,
    relative: Vec<RelativeClasses>,
    weyl: Vec<WeylGroup>,
}

impl fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group)
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

impl SubgroupLattice {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        Self::with_limits(group, Limits::default())
    }

    pub fn with_limits(group: FiniteGroup, limits: Limits) -> Result<Self> {
        limits.check_group_order(group.order())?;
        let n = group.order();

        let mut found: HashMap<FixedBitSet, ()> = HashMap::new();
        let mut cyclic = Vec::new();
        for g in group.elements() {
            let s = Subgroup::generated(&group, &[g]);
            if found.insert(s.members().clone(), ()).is_none() {
                cyclic.push(s);
            }
        }
        let mut all: Vec<Subgroup> = cyclic.clone();
        let mut head = 0;
        while head < all.len() {
            let s = all[head].clone();
            head += 1;
            for c in &cyclic {
                if c.is_subgroup_of(&s) {
                    continue;
                }
                let joined = join(&group, &s, c);
                if found.insert(joined.members().clone(), ()).is_none() {
                    all.push(joined);
                }
            }
        }
        all.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        let subgroups = all;
        let m = subgroups.len();
        let index: HashMap<FixedBitSet, SubgroupId> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), SubgroupId(i)))
            .collect();

        let mut below = vec![FixedBitSet::with_capacity(m); m];
        for j in 0..m {
            for i in 0..m {
                if subgroups[i].members().is_subset(subgroups[j].members()) {
                    below[j].insert(i);
                }
            }
        }
        let conj: Vec<Vec<SubgroupId>> = group
            .elements()
            .map(|g| {
                subgroups
                    .iter()
                    .map(|s| index[s.conjugate(&group, g).members()])
                    .collect()
            })
            .collect();
        let meet: Vec<Vec<SubgroupId>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| index[&(subgroups[i].members() & subgroups[j].members())])
                    .collect()
            })
            .collect();

        let relative = (0..m)
            .map(|h| relative_classes(&subgroups, &below, &conj, SubgroupId(h)))
            .collect();

        let mut weyl = Vec::with_capacity(m);
        for (i, s) in subgroups.iter().enumerate() {
            let normalizer = normalizer_of(&group, s);
            let q = quotient(&group, &normalizer, s, format!("W({})", i))?;
            weyl.push(WeylGroup {
                normalizer: index[normalizer.members()],
                group: q.group,
                projection: q.projection,
                lifts: q.lifts,
            });
        }
        debug_assert_eq!(subgroups[m - 1].order(), n);

        Ok(SubgroupLattice {
            group,
            limits,
            subgroups,
            index,
            below,
            conj,
            meet,
            relative,
            weyl,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SubgroupId> + '_ {
        (0..self.subgroups.len()).map(SubgroupId)
    }

    pub fn trivial(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn top(&self) -> SubgroupId {
        SubgroupId(self.subgroups.len() - 1)
    }

    pub fn check(&self, id: SubgroupId) -> Result<SubgroupId> {
        if id.0 < self.subgroups.len() {
            Ok(id)
        } else {
            Err(Error::InvalidSubgroupId(id.0))
        }
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id.0]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn order(&self, id: SubgroupId) -> usize {
        self.subgroups[id.0].order()
    }

    /// Id of an arbitrary subgroup of the lattice's group.
    pub fn id_of(&self, s: &Subgroup) -> Result<SubgroupId> {
        if s.parent() != self.group.token() {
            return Err(Error::MixedParents);
        }
        Ok(self.index[s.members()])
    }

    pub fn id_of_members(&self, members: &FixedBitSet) -> Option<SubgroupId> {
        self.index.get(members).copied()
    }

    /// `K <= H`.
    #[inline]
    pub fn le(&self, k: SubgroupId, h: SubgroupId) -> bool {
        self.below[h.0].contains(k.0)
    }

    /// Ids of all subgroups of `h`, ascending.
    pub fn below(&self, h: SubgroupId) -> impl Iterator<Item = SubgroupId> + '_ {
        self.below[h.0].ones().map(SubgroupId)
    }

    /// `g S g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, id: SubgroupId) -> SubgroupId {
        self.conj[g][id.0]
    }

    #[inline]
    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.meet[a.0][b.0]
    }

    /// Conjugacy classes of subgroups of `G`.
    pub fn classes(&self) -> &RelativeClasses {
        &self.relative[self.top().0]
    }

    /// `H`-conjugacy classes of subgroups of `H`.
    pub fn classes_within(&self, h: SubgroupId) -> &RelativeClasses {
        &self.relative[h.0]
    }

    /// Conjugacy class (in `G`) of a subgroup.
    pub fn conj_class(&self, id: SubgroupId) -> usize {
        self.classes().class_of[id.0].expect("every subgroup lies in G")
    }

    pub fn class_rep(&self, id: SubgroupId) -> SubgroupId {
        self.classes().reps[self.conj_class(id)]
    }

    pub fn normalizer(&self, id: SubgroupId) -> SubgroupId {
        self.weyl[id.0].normalizer
    }

    pub fn weyl(&self, id: SubgroupId) -> &WeylGroup {
        &self.weyl[id.0]
    }

    /// Whether some `g` has `g^-1 K g <= H`, with every such `g`.
    pub fn is_subconjugate(&self, k: SubgroupId, h: SubgroupId) -> Result<(bool, Vec<usize>)> {
        self.check(k)?;
        self.check(h)?;
        let witnesses: Vec<usize> = self
            .group
            .elements()
            .filter(|&g| self.le(self.conjugate(self.group.inv(g), k), h))
            .collect();
        Ok((!witnesses.is_empty(), witnesses))
    }

    pub fn double_cosets(&self, k: SubgroupId, h: SubgroupId) -> Result<DoubleCosetDecomposition> {
        self.check(k)?;
        self.check(h)?;
        double_cosets_of(&self.group, self.subgroup(k), self.subgroup(h))
    }

    /// Left cosets `g H` ordered by least element, as their least elements.
    pub fn coset_reps(&self, h: SubgroupId) -> Vec<usize> {
        let sub = self.subgroup(h);
        let mut seen = FixedBitSet::with_capacity(self.group.order());
        let mut reps = Vec::new();
        for g in self.group.elements() {
            if seen.contains(g) {
                continue;
            }
            reps.push(g);
            for &x in sub.elements() {
                seen.insert(self.group.mul(g, x));
            }
        }
        reps
    }

    /// Short label: `e` for the trivial subgroup, `G` for the whole group,
    /// otherwise `H<id>`.
    pub fn label(&self, id: SubgroupId) -> String {
        if id == self.trivial() {
            "e".to_string()
        } else if id == self.top() {
            "G".to_string()
        } else {
            format!("H{}", id.0)
        }
    }

    /// Structural name: `e`, `C<n>` for cyclic subgroups, `V4`, or `[<n>]`.
    pub fn type_name(&self, id: SubgroupId) -> String {
        let s = self.subgroup(id);
        let n = s.order();
        if n == 1 {
            return "e".into();
        }
        if s.elements()
            .iter()
            .any(|&x| self.group.element_order(x) == n)
        {
            return format!("C{n}");
        }
        if n == 4 {
            return "V4".into();
        }
        format!("[{n}]")
    }

    /// Resolves a subgroup reference: a numeric id, `e`, `G`, `H<id>`, or a
    /// structural name such as `C2` matching exactly one conjugacy class (its
    /// least member is returned).
    pub fn resolve(&self, name: &str) -> Result<SubgroupId> {
        let name = name.trim();
        if let Ok(i) = name.parse::<usize>() {
            return self.check(SubgroupId(i));
        }
        match name {
            "e" => return Ok(self.trivial()),
            "G" => return Ok(self.top()),
            _ => {}
        }
        if let Some(Ok(i)) = name.strip_prefix('H').map(str::parse::<usize>) {
            return self.check(SubgroupId(i));
        }
        let matches: Vec<SubgroupId> = self
            .classes()
            .reps
            .iter()
            .copied()
            .filter(|&r| self.type_name(r) == name)
            .collect();
        match matches.as_slice() {
            [one] => Ok(*one),
            [] => Err(Error::InvalidInput(format!("no subgroup named '{name}'"))),
            _ => Err(Error::InvalidInput(format!(
                "'{name}' matches {} conjugacy classes; use a numeric id",
                matches.len()
            ))),
        }
    }
}

fn join(group: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens: Vec<usize> = a.elements().to_vec();
    gens.extend_from_slice(b.elements());
    Subgroup::generated(group, &gens)
}

fn relative_classes(
    subgroups: &[Subgroup],
    below: &[FixedBitSet],
    conj: &[Vec<SubgroupId>],
    within: SubgroupId,
) -> RelativeClasses {
    let m = subgroups.len();
    let mut class_of = vec![None; m];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for i in below[within.0].ones() {
        if class_of[i].is_some() {
            continue;
        }
        let c = reps.len();
        let mut class = Vec::new();
        for &h in subgroups[within.0].elements() {
            let j = conj[h][i];
            if class_of[j.0].is_none() {
                class_of[j.0] = Some(c);
                class.push(j);
            }
        }
        class.sort();
        reps.push(SubgroupId(i));
        members.push(class);
    }
    RelativeClasses {
        within,
        class_of,
        reps,
        members,
    }
}
