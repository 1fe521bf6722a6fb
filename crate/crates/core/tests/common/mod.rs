#![allow(dead_code)]

use std::sync::Arc;

use ninf_core::{Builtin, SubgroupId, SubgroupLattice, TransferSystem};

/// One representative of every isomorphism type of group of order at most 12.
pub const SMALL_GROUPS: [&str; 24] = [
    "trivial", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2", "D4",
    "Q8", "C9", "C3xC3", "C10", "D5", "C11", "C12", "C2xC6", "D6", "A4", "Dic3",
];

/// Too many transfer systems (over ten million) for the default enumeration
/// guard.
pub const HUGE: &str = "C2xC2xC2";

pub fn lattice(name: &str) -> Arc<SubgroupLattice> {
    let group = name.parse::<Builtin>().unwrap().build().unwrap();
    Arc::new(SubgroupLattice::new(group).unwrap())
}

pub fn groups_up_to(order: usize) -> Vec<(&'static str, Arc<SubgroupLattice>)> {
    SMALL_GROUPS
        .iter()
        .map(|&name| (name, lattice(name)))
        .filter(|(_, l)| l.group().order() <= order)
        .collect()
}

/// Transfer systems as sets of strict pairs, found without the closure
/// machinery: every axiom becomes an implication between pair variables
/// (`a -> b` or `a & b -> c`), computed from element sets.
pub struct RelationOracle {
    pub pairs: Vec<(usize, usize)>,
    requires: Vec<u64>,
    triples: Vec<(usize, usize, usize)>,
}

impl RelationOracle {
    pub fn new(lattice: &SubgroupLattice) -> Self {
        let group = lattice.group();
        let subs: Vec<Vec<bool>> = lattice
            .ids()
            .map(|id| {
                let mut v = vec![false; group.order()];
                for &g in lattice.subgroup(id).elements() {
                    v[g] = true;
                }
                v
            })
            .collect();
        let find = |v: &[bool]| {
            subs.iter()
                .position(|s| s == v)
                .expect("closed under the operation")
        };
        let contained = |a: usize, b: usize| subs[a].iter().zip(&subs[b]).all(|(&x, &y)| !x || y);
        let m = subs.len();
        let mut pairs = Vec::new();
        for k in 0..m {
            for h in 0..m {
                if k != h && contained(k, h) {
                    pairs.push((k, h));
                }
            }
        }
        let var = |k: usize, h: usize| pairs.iter().position(|&p| p == (k, h));
        let mut requires = vec![0u64; pairs.len()];
        let mut triples = Vec::new();
        for (a, &(k, h)) in pairs.iter().enumerate() {
            for g in group.elements() {
                let conj = |s: usize| {
                    let mut v = vec![false; group.order()];
                    for x in group.elements().filter(|&x| subs[s][x]) {
                        v[group.mul(group.mul(g, x), group.inv(g))] = true;
                    }
                    find(&v)
                };
                let b = var(conj(k), conj(h)).expect("conjugate of an inclusion");
                requires[a] |= 1 << b;
            }
            for l in (0..m).filter(|&l| contained(l, h)) {
                let meet: Vec<bool> = subs[k]
                    .iter()
                    .zip(&subs[l])
                    .map(|(&x, &y)| x && y)
                    .collect();
                let kl = find(&meet);
                if kl != l {
                    requires[a] |= 1 << var(kl, l).expect("meet lies below");
                }
            }
            for (b, &(k2, h2)) in pairs.iter().enumerate() {
                if k2 == h {
                    triples.push((a, b, var(k, h2).expect("inclusions compose")));
                }
            }
        }
        for (a, r) in requires.iter_mut().enumerate() {
            *r &= !(1 << a);
        }
        RelationOracle {
            pairs,
            requires,
            triples,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn accepts(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.requires[a] & !mask != 0 {
                return false;
            }
        }
        self.triples
            .iter()
            .all(|&(a, b, c)| mask >> a & 1 == 0 || mask >> b & 1 == 0 || mask >> c & 1 == 1)
    }

    /// Filters all `2^p` relations.
    pub fn exhaustive(&self) -> Vec<u64> {
        assert!(self.len() <= 32, "2^{} relations", self.len());
        (0..1u64 << self.len())
            .filter(|&m| self.accepts(m))
            .collect()
    }

    /// The same set by backtracking, checking each implication as soon as all
    /// of its variables are decided.
    pub fn backtrack(&self) -> Vec<u64> {
        let p = self.len();
        let mut singles_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p];
        for (a, &r) in self.requires.iter().enumerate() {
            for b in (0..p).filter(|&b| r >> b & 1 == 1) {
                singles_at[a.max(b)].push((a, b));
            }
        }
        let mut triples_at: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); p];
        for &(a, b, c) in &self.triples {
            triples_at[a.max(b).max(c)].push((a, b, c));
        }
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((i, mask)) = stack.pop() {
            if i == p {
                out.push(mask);
                continue;
            }
            for bit in [0u64, 1] {
                let m = mask | bit << i;
                let ok = singles_at[i]
                    .iter()
                    .all(|&(a, b)| m >> a & 1 == 0 || m >> b & 1 == 1)
                    && triples_at[i]
                        .iter()
                        .all(|&(a, b, c)| m >> a & 1 == 0 || m >> b & 1 == 0 || m >> c & 1 == 1);
                if ok {
                    stack.push((i + 1, m));
                }
            }
        }
        out.sort();
        out
    }

    pub fn mask_of(&self, ts: &TransferSystem) -> u64 {
        self.pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(k, h))| ts.contains(SubgroupId(k), SubgroupId(h)))
            .fold(0, |m, (a, _)| m | 1 << a)
    }
}

/// `sum m_i <= orbits` for the orbit data `(K, m)`.
pub fn orbit_count(orbits: &[(SubgroupId, usize)]) -> usize {
    orbits.iter().map(|&(_, m)| m).sum()
}

/// Columns of a transfer system as bitmasks over subgroup ids:
/// `col[h]` has bit `k` when `k -> h`.
pub fn columns(ts: &TransferSystem) -> Vec<u64> {
    let lattice = ts.lattice();
    lattice
        .ids()
        .map(|h| {
            lattice
                .below(h)
                .filter(|&k| ts.contains(k, h))
                .fold(0, |m, k| m | 1 << k.0)
        })
        .collect()
}
