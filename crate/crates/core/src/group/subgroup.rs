use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, GroupToken};
use crate::error::{Error, Result};

/// A subgroup, stored as its strictly increasing element list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupToken,
    elements: Vec<usize>,
    members: FixedBitSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.elements.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_members_unchecked(group, {
            let mut m = FixedBitSet::with_capacity(group.order());
            m.insert(0);
            m
        })
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        let mut m = FixedBitSet::with_capacity(group.order());
        m.insert_range(..);
        Self::from_members_unchecked(group, m)
    }

    /// The subgroup generated by `gens`.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut members = FixedBitSet::with_capacity(group.order());
        members.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = group.mul(x, s);
                if !members.put(y) {
                    queue.push(y);
                }
            }
        }
        Self::from_members_unchecked(group, members)
    }

    /// Checks that `elements` contains the identity and is closed.
    pub fn from_elements(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(group.order());
        for &x in elements {
            if x >= group.order() {
                return Err(Error::NotASubgroup(format!("element {x} out of range")));
            }
            members.insert(x);
        }
        if !members.contains(0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for a in members.ones() {
            if !members.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for b in members.ones() {
                if !members.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        let s = Self::from_members_unchecked(group, members);
        if group.order() % s.order() != 0 {
            return Err(Error::NotASubgroup(
                "order does not divide the group order".into(),
            ));
        }
        Ok(s)
    }

    pub(crate) fn from_members_unchecked(group: &FiniteGroup, members: FixedBitSet) -> Self {
        Subgroup {
            parent: group.token(),
            elements: members.ones().collect(),
            members,
        }
    }

    pub fn parent(&self) -> GroupToken {
        self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.parent != other.parent {
            return Err(Error::MixedParents);
        }
        let members = &self.members & &other.members;
        Ok(Subgroup {
            parent: self.parent,
            elements: members.ones().collect(),
            members,
        })
    }

    /// `g S g^-1`.
    pub fn conjugate(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(group.order());
        for &x in &self.elements {
            members.insert(group.conj(g, x));
        }
        Self::from_members_unchecked(group, members)
    }

    /// `x` with `x S x^-1 = S`, as a subgroup of `group`.
    pub fn normalizer(&self, group: &FiniteGroup) -> Subgroup {
        super::normalizer_of(group, self)
    }
}
