//! Exact arithmetic in finite groups.
//!
//! Elements are plain indices `0..order`, with `0` always the identity. A
//! group is either backed by a full multiplication table or, for groups too
//! large to tabulate (symmetric groups of degree 7 and 8, products such as
//! `G x S_n`, automorphism groups of larger G-sets), by a multiplication law
//! evaluated on demand. Every backend exposes the same element-index API.

mod builtin;
mod cosets;
mod lattice;
mod subgroup;

pub use builtin::Builtin;
pub use cosets::{double_cosets_of, normalizer_of, quotient, DoubleCosetDecomposition, Quotient};
pub use lattice::{RelativeClasses, SubgroupId, SubgroupLattice, WeylGroup};
pub use subgroup::Subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest order for which derived groups get a dense multiplication table.
pub(crate) const TABLE_LIMIT: usize = 1024;

/// Largest degree of symmetric group the crate will construct.
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

static NEXT_TOKEN: AtomicU64 = AtomicU64::new(1);

/// Identifies a constructed group; clones share the token.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupToken(u64);

impl GroupToken {
    fn fresh() -> Self {
        GroupToken(NEXT_TOKEN.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Clone)]
enum Law {
    Table(Vec<u32>),
    /// Symmetric group in lexicographic one-line order; `perms[i]` is element `i`.
    Symmetric {
        perms: Arc<Vec<Vec<u8>>>,
    },
    /// Permutation group with an explicit element list.
    Permutations {
        elements: Arc<Vec<Vec<usize>>>,
        index: Arc<HashMap<Vec<usize>, usize>>,
    },
    /// Direct product; `(a, b)` is encoded as `a * |right| + b`.
    Product {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
}

/// A finite group on the element indices `0..order`.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    token: GroupToken,
    order: usize,
    law: Law,
    inv: Vec<u32>,
    /// Faithful permutation labels, when the group came from permutations.
    labels: Option<Arc<Vec<Vec<usize>>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    ///
    /// If the identity is not element 0 it is moved to the front; all other
    /// elements keep their relative order.
    pub fn from_table(table: &[Vec<usize>], name: impl Into<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedTable(format!(
                    "entry {bad} out of range in row {i}"
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NoIdentity)?;

        // new index -> old index, and its inverse
        let mut order: Vec<usize> = vec![identity];
        order.extend((0..n).filter(|&x| x != identity));
        let mut relabel = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = relabel[table[order[a]][order[b]]] as u32;
            }
        }

        let mut inv = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mul[a * n + b] == 0 && mul[b * n + a] == 0)
                .ok_or(Error::NoInverse(order[a]))?;
            inv[a] = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = mul[b * n + c] as usize;
                    if mul[ab * n + c] != mul[a * n + bc] {
                        return Err(Error::NotAssociative(order[a], order[b], order[c]));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            token: GroupToken::fresh(),
            order: n,
            law: Law::Table(mul),
            inv,
            labels: None,
        })
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted_table(mul: Vec<u32>, order: usize, name: impl Into<String>) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mul[a * order + b] == 0)
                .expect("trusted table has inverses");
            inv[a] = b as u32;
        }
        FiniteGroup {
            name: name.into(),
            token: GroupToken::fresh(),
            order,
            law: Law::Table(mul),
            inv,
            labels: None,
        }
    }

    /// The permutation group generated by `generators` on `0..degree`.
    ///
    /// Elements are numbered in breadth-first order from the identity: the
    /// queue is processed in order and each element `x` yields `x * s` for
    /// the generators `s` in input order, where `(x * s)(i) = x(s(i))`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
        max_order: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !is_permutation(g, degree) {
                return Err(Error::InvalidInput(format!(
                    "generator {i} is not a permutation of 0..{degree}"
                )));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for s in generators {
                let y = compose(&x, s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    if elements.len() > max_order {
                        return Err(Error::SizeLimitExceeded {
                            what: "generated permutation group order",
                            size: elements.len(),
                            limit: max_order,
                        });
                    }
                }
            }
        }
        Ok(Self::from_permutation_list(elements, index, name))
    }

    /// Group law on an explicit, closed list of permutations (identity first).
    pub(crate) fn from_permutation_list(
        elements: Vec<Vec<usize>>,
        index: HashMap<Vec<usize>, usize>,
        name: impl Into<String>,
    ) -> Self {
        let order = elements.len();
        debug_assert!(elements[0].iter().enumerate().all(|(i, &x)| i == x));
        let inv: Vec<u32> = elements.iter().map(|p| index[&invert(p)] as u32).collect();
        let labels = Arc::new(elements);
        let law = if order <= TABLE_LIMIT {
            let mut mul = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    mul[a * order + b] = index[&compose(&labels[a], &labels[b])] as u32;
                }
            }
            Law::Table(mul)
        } else {
            Law::Permutations {
                elements: labels.clone(),
                index: Arc::new(index),
            }
        };
        FiniteGroup {
            name: name.into(),
            token: GroupToken::fresh(),
            order,
            law,
            inv,
            labels: Some(labels),
        }
    }

    /// The symmetric group on `0..degree` in lexicographic one-line order.
    pub fn symmetric_group(degree: usize) -> Result<Self> {
        if degree > MAX_SYMMETRIC_DEGREE {
            return Err(Error::SizeLimitExceeded {
                what: "symmetric group degree",
                size: degree,
                limit: MAX_SYMMETRIC_DEGREE,
            });
        }
        let perms = lex_permutations(degree);
        let name = format!("S{degree}");
        if perms.len() <= TABLE_LIMIT {
            let index: HashMap<Vec<usize>, usize> = perms
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            return Ok(Self::from_permutation_list(perms, index, name));
        }
        let small: Vec<Vec<u8>> = perms
            .iter()
            .map(|p| p.iter().map(|&x| x as u8).collect())
            .collect();
        let inv = perms.iter().map(|p| lex_rank(&invert(p)) as u32).collect();
        Ok(FiniteGroup {
            name,
            token: GroupToken::fresh(),
            order: perms.len(),
            law: Law::Symmetric {
                perms: Arc::new(small),
            },
            inv,
            labels: None,
        })
    }

    /// Direct product with elements `(a, b)` numbered `a * |right| + b`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Self {
        let (m, k) = (left.order, right.order);
        let order = m * k;
        let name = format!("{}x{}", left.name, right.name);
        if order <= TABLE_LIMIT {
            let mut mul = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    let l = left.mul(a / k, b / k);
                    let r = right.mul(a % k, b % k);
                    mul[a * order + b] = (l * k + r) as u32;
                }
            }
            return Self::from_trusted_table(mul, order, name);
        }
        let inv = (0..order)
            .map(|a| (left.inv(a / k) * k + right.inv(a % k)) as u32)
            .collect();
        FiniteGroup {
            name,
            token: GroupToken::fresh(),
            order,
            law: Law::Product {
                left: Arc::new(left.clone()),
                right: Arc::new(right.clone()),
            },
            inv,
            labels: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn token(&self) -> GroupToken {
        self.token
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.law {
            Law::Table(mul) => mul[a * self.order + b] as usize,
            Law::Symmetric { perms } => {
                let (p, q) = (&perms[a], &perms[b]);
                let mut r = [0usize; MAX_SYMMETRIC_DEGREE];
                for i in 0..p.len() {
                    r[i] = p[q[i] as usize] as usize;
                }
                lex_rank(&r[..p.len()])
            }
            Law::Permutations { elements, index } => index[&compose(&elements[a], &elements[b])],
            Law::Product { left, right } => {
                let k = right.order;
                left.mul(a / k, b / k) * k + right.mul(a % k, b % k)
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g * x * g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, mut e: usize) -> usize {
        let mut acc = 0;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The permutation labeling element `a`, if the group carries one.
    pub fn permutation(&self, a: usize) -> Option<Vec<usize>> {
        match (&self.labels, &self.law) {
            (Some(labels), _) => Some(labels[a].clone()),
            (None, Law::Symmetric { perms }) => {
                Some(perms[a].iter().map(|&x| x as usize).collect())
            }
            _ => None,
        }
    }

    /// All permutation labels, when the group carries them.
    pub fn permutation_labels(&self) -> Option<&[Vec<usize>]> {
        self.labels.as_deref().map(Vec::as_slice)
    }

    /// Index of a permutation, for permutation groups and symmetric groups.
    pub fn element_of_permutation(&self, p: &[usize]) -> Option<usize> {
        match (&self.law, &self.labels) {
            (Law::Symmetric { perms }, _) => {
                (p.len() == perms[0].len() && is_permutation(p, p.len())).then(|| lex_rank(p))
            }
            (Law::Permutations { index, .. }, _) => index.get(p).copied(),
            (_, Some(labels)) => labels.iter().position(|q| q.as_slice() == p),
            _ => None,
        }
    }

    /// Components `(a, b)` of an element of a direct product.
    pub fn product_components(&self, x: usize) -> Option<(usize, usize)> {
        match &self.law {
            Law::Product { right, .. } => Some((x / right.order, x % right.order)),
            _ => None,
        }
    }

    /// A generating set chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(self);
        for g in self.elements() {
            if !span.contains(g) {
                gens.push(g);
                span = Subgroup::generated(self, &gens);
                if span.order() == self.order {
                    break;
                }
            }
        }
        gens
    }

    /// Dense multiplication table, for small groups.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// `(p * q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut r = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        r[x] = i;
    }
    r
}

pub fn is_permutation(p: &[usize], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Position of a permutation in lexicographic order (Lehmer code).
pub fn lex_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2_tables() {
        let g = FiniteGroup::from_table(&[vec![0]], "1").unwrap();
        assert_eq!(g.order(), 1);
        let c2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]], "C2").unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.inv(1), 1);
    }

    #[test]
    fn identity_is_moved_to_front() {
        // identity is element 1 in the input
        let g = FiniteGroup::from_table(&[vec![0, 0], vec![0, 1]], "bad");
        assert!(matches!(
            g,
            Err(Error::NoIdentity) | Err(Error::NoInverse(_))
        ));
        let c2 = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]], "C2").unwrap();
        assert_eq!(c2.mul(1, 1), 0);
        assert_eq!(c2.mul(0, 1), 1);
    }

    #[test]
    fn rejects_bad_tables() {
        let non_assoc = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 0, 0],
            vec![2, 0, 0, 0],
            vec![3, 0, 0, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&non_assoc, "x"),
            Err(Error::NotAssociative(..))
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]], "x"),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]], "x"),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![1, 1], vec![1, 1]], "x"),
            Err(Error::NoIdentity)
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]], "x"),
            Err(Error::NoInverse(1))
        ));
    }

    #[test]
    fn lex_rank_inverts_enumeration() {
        for n in 0..=5 {
            for (i, p) in lex_permutations(n).iter().enumerate() {
                assert_eq!(lex_rank(p), i);
            }
        }
    }

    #[test]
    fn large_symmetric_law_matches_composition() {
        let s7 = FiniteGroup::symmetric_group(7).unwrap();
        assert_eq!(s7.order(), 5040);
        for (a, b) in [(17, 4000), (5039, 5039), (1234, 77)] {
            let p = s7.permutation(a).unwrap();
            let q = s7.permutation(b).unwrap();
            assert_eq!(s7.permutation(s7.mul(a, b)).unwrap(), compose(&p, &q));
            assert_eq!(s7.mul(a, s7.inv(a)), 0);
        }
    }

    #[test]
    fn product_law_agrees_with_table_product() {
        let s3 = FiniteGroup::symmetric_group(3).unwrap();
        let s6 = FiniteGroup::symmetric_group(6).unwrap();
        let big = FiniteGroup::direct_product(&s3, &s6);
        assert_eq!(big.order(), 4320);
        let x = 5 * 720 + 311;
        let y = 2 * 720 + 17;
        let (a, b) = big.product_components(big.mul(x, y)).unwrap();
        assert_eq!(a, s3.mul(5, 2));
        assert_eq!(b, s6.mul(311, 17));
        assert_eq!(big.mul(x, big.inv(x)), 0);
    }

    #[test]
    fn permutation_bfs_order() {
        // S3 from a transposition and a 3-cycle
        let g =
            FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], "S3", 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.permutation(1).unwrap(), vec![1, 0, 2]);
        assert_eq!(g.permutation(2).unwrap(), vec![1, 2, 0]);
    }
}
