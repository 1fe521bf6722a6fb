//! The Burnside-type Mackey functor of an indexing system: at `H` the free
//! abelian group on the admissible orbits `H/K`, with restriction, conjugation
//! and only the admissible transfers.
//!
//! Matrices act on column vectors: rows index the target basis, columns the
//! source basis, and composition is the matrix product.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::SubgroupId;
use crate::gset::GSet;
use crate::transfer::TransferSystem;

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().filter(|&&x| x == 1).count() == 1
                    && row.iter().all(|&x| x == 0 || x == 1)
            })
            && (0..self.cols).all(|c| (0..self.rows).filter(|&r| self.get(r, c) == 1).count() == 1)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[i64]>::to_vec)
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl AddAssign<&IntMatrix> for IntMatrix {
    fn add_assign(&mut self, rhs: &IntMatrix) {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix shapes differ"
        );
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix shapes differ"
        );
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// The levels, restrictions and admissible transfers of the functor.
#[derive(Clone, Debug)]
pub struct IncompleteBurnsideMackey {
    ts: TransferSystem,
    /// `levels[H]`: the `H`-class representatives `K` with `H/K` admissible.
    pub levels: Vec<Vec<SubgroupId>>,
    /// `res[(L, H)]` for every `L <= H`.
    pub res: BTreeMap<(SubgroupId, SubgroupId), IntMatrix>,
    /// `tr[(K, H)]` for every admissible `K -> H`.
    pub tr: BTreeMap<(SubgroupId, SubgroupId), IntMatrix>,
}

pub fn build_mackey(ts: &TransferSystem) -> Result<IncompleteBurnsideMackey> {
    let lattice = ts.lattice().clone();
    let levels: Vec<Vec<SubgroupId>> = lattice
        .ids()
        .map(|h| ts.admissible_orbit_classes(h))
        .collect();
    let mut m = IncompleteBurnsideMackey {
        ts: ts.clone(),
        levels,
        res: BTreeMap::new(),
        tr: BTreeMap::new(),
    };
    for h in lattice.ids() {
        let orbits: Vec<GSet> = m.levels[h.0]
            .iter()
            .map(|&k| GSet::orbit(lattice.clone(), h, k))
            .collect::<Result<_>>()?;
        for l in lattice.below(h) {
            let mut mat = IntMatrix::zeros(m.levels[l.0].len(), orbits.len());
            for (j, o) in orbits.iter().enumerate() {
                m.write_column(&mut mat, j, &o.restrict(l)?, "restriction")?;
            }
            m.res.insert((l, h), mat);
        }
    }
    for (k, h) in ts.pairs().into_iter().chain(lattice.ids().map(|h| (h, h))) {
        let mut mat = IntMatrix::zeros(m.levels[h.0].len(), m.levels[k.0].len());
        for (j, &l) in m.levels[k.0].clone().iter().enumerate() {
            let up = GSet::orbit(lattice.clone(), k, l)?.induce(h)?;
            m.write_column(&mut mat, j, &up, "induction")?;
        }
        m.tr.insert((k, h), mat);
    }
    Ok(m)
}

impl IncompleteBurnsideMackey {
    pub fn transfer_system(&self) -> &TransferSystem {
        &self.ts
    }

    /// Writes the basis decomposition of `t` into column `j`. Fails if an
    /// orbit of `t` is not admissible, which means the relation is not closed.
    fn write_column(&self, mat: &mut IntMatrix, j: usize, t: &GSet, what: &str) -> Result<()> {
        let basis = &self.levels[t.acting().0];
        for o in t.orbit_table() {
            let i = basis.binary_search(&o.rep).map_err(|_| {
                Error::InvalidInput(format!(
                    "{what} produced the inadmissible orbit {} over {}",
                    self.ts.lattice().label(o.rep),
                    self.ts.lattice().label(t.acting())
                ))
            })?;
            mat.set(i, j, o.multiplicity as i64);
        }
        Ok(())
    }

    pub fn rank(&self, h: SubgroupId) -> usize {
        self.levels[h.0].len()
    }

    pub fn res(&self, l: SubgroupId, h: SubgroupId) -> Option<&IntMatrix> {
        self.res.get(&(l, h))
    }

    pub fn tr(&self, k: SubgroupId, h: SubgroupId) -> Option<&IntMatrix> {
        self.tr.get(&(k, h))
    }

    /// `c_g` from level `H` to level `g H g^-1`: `[H/K] -> [gHg^-1 / gKg^-1]`.
    pub fn conj(&self, g: usize, h: SubgroupId) -> Result<IntMatrix> {
        let lattice = self.ts.lattice();
        let target = lattice.conjugate(g, h);
        let mut mat = IntMatrix::zeros(self.rank(target), self.rank(h));
        let within = lattice.classes_within(target);
        for (j, &k) in self.levels[h.0].iter().enumerate() {
            let moved = within
                .rep_of(lattice.conjugate(g, k))
                .expect("gKg^-1 <= gHg^-1");
            let i = self.levels[target.0].binary_search(&moved).map_err(|_| {
                Error::InvalidInput(format!(
                    "conjugation produced the inadmissible orbit {} over {}",
                    lattice.label(moved),
                    lattice.label(target)
                ))
            })?;
            mat.set(i, j, 1);
        }
        Ok(mat)
    }

    /// `(H, rank)` for each conjugacy class representative `H`.
    pub fn rank_table(&self) -> Vec<(SubgroupId, usize)> {
        self.ts
            .lattice()
            .classes()
            .reps
            .iter()
            .map(|&h| (h, self.rank(h)))
            .collect()
    }

    pub fn export(&self) -> MackeyExport {
        let lattice = self.ts.lattice();
        let label = |h: SubgroupId| lattice.label(h);
        MackeyExport {
            group: lattice.group().name().to_string(),
            pairs: self.ts.pairs().iter().map(|&(k, h)| (k.0, h.0)).collect(),
            levels: lattice
                .ids()
                .map(|h| LevelExport {
                    subgroup: h.0,
                    label: label(h),
                    order: lattice.order(h),
                    basis: self.levels[h.0].iter().map(|k| k.0).collect(),
                })
                .collect(),
            restrictions: self
                .res
                .iter()
                .map(|(&(l, h), m)| MapExport {
                    from: h.0,
                    to: l.0,
                    matrix: m.to_rows(),
                })
                .collect(),
            transfers: self
                .tr
                .iter()
                .map(|(&(k, h), m)| MapExport {
                    from: k.0,
                    to: h.0,
                    matrix: m.to_rows(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelExport {
    pub subgroup: usize,
    pub label: String,
    pub order: usize,
    pub basis: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapExport {
    pub from: usize,
    pub to: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeyExport {
    pub group: String,
    pub pairs: Vec<(usize, usize)>,
    pub levels: Vec<LevelExport>,
    pub restrictions: Vec<MapExport>,
    pub transfers: Vec<MapExport>,
}

/// Result of the structural checks on a Mackey functor.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MackeyReport {
    pub double_coset_instances: usize,
    pub double_coset_failures: Vec<String>,
    /// Transfers required by the right-hand side that are not admissible.
    pub inadmissible_terms: Vec<String>,
    pub functoriality_instances: usize,
    pub functoriality_failures: Vec<String>,
    pub conjugation_instances: usize,
    pub conjugation_failures: Vec<String>,
    /// Comparisons with double-coset counts, made for the complete system only.
    pub classical_instances: usize,
    pub classical_failures: Vec<String>,
}

impl MackeyReport {
    pub fn holds(&self) -> bool {
        self.double_coset_failures.is_empty()
            && self.inadmissible_terms.is_empty()
            && self.functoriality_failures.is_empty()
            && self.conjugation_failures.is_empty()
            && self.classical_failures.is_empty()
    }
}

/// Checks, for every admissible `K -> H` and every `L <= H`,
///
/// `res^H_L tr^H_K = sum over LgK in L\H/K of tr^L_{L n gKg^-1} c_g res^K_{g^-1 L g n K}`
///
/// with `g` the least element of each double coset. Also checks
/// functoriality of restriction and transfer, triviality and composition of
/// conjugations, and, for the complete system, that `res tr [K/K]`
/// decomposes as the double cosets predict.
pub fn mackey_double_coset_check(m: &IncompleteBurnsideMackey) -> Result<MackeyReport> {
    let ts = &m.ts;
    let lattice = ts.lattice();
    let group = lattice.group();
    let label = |h: SubgroupId| lattice.label(h);
    let mut report = MackeyReport::default();
    let complete = *ts == TransferSystem::complete(lattice.clone());
    let n = lattice.len();
    let conj_table: Vec<IntMatrix> = group
        .elements()
        .flat_map(|g| lattice.ids().map(move |h| (g, h)))
        .map(|(g, h)| m.conj(g, h))
        .collect::<Result<_>>()?;
    let conj = |g: usize, h: SubgroupId| -> &IntMatrix { &conj_table[g * n + h.0] };
    let mut dcs = BTreeMap::new();
    for (&(k, h), tr) in &m.tr {
        let hsub = lattice.subgroup(h);
        for l in lattice.below(h) {
            report.double_coset_instances += 1;
            let lhs = m.res(l, h).expect("every inclusion has a restriction") * tr;
            let dc = match dcs.get(&(l, k)) {
                Some(dc) => dc,
                None => dcs.entry((l, k)).or_insert(lattice.double_cosets(l, k)?),
            };
            let mut rhs = IntMatrix::zeros(m.rank(l), m.rank(k));
            let mut classical = Vec::new();
            for (i, &g) in dc.representatives.iter().enumerate() {
                if !hsub.contains(g) {
                    continue;
                }
                debug_assert!(dc.cosets[i].iter().all(|&x| hsub.contains(x)));
                let ginv = group.inv(g);
                let inner = lattice.meet(lattice.conjugate(ginv, l), k);
                let outer = lattice.meet(l, lattice.conjugate(g, k));
                debug_assert_eq!(lattice.conjugate(g, inner), outer);
                classical.push(lattice.classes_within(l).rep_of(outer).expect("outer <= L"));
                let Some(t) = m.tr(outer, l) else {
                    report.inadmissible_terms.push(format!(
                        "{}->{} needs the transfer {}->{}",
                        label(k),
                        label(h),
                        label(outer),
                        label(l)
                    ));
                    continue;
                };
                let term = &(t * conj(g, inner)) * m.res(inner, k).expect("inner <= K");
                rhs += &term;
            }
            if lhs != rhs {
                report.double_coset_failures.push(format!(
                    "res to {} of tr {}->{}: {:?} != {:?}",
                    label(l),
                    label(k),
                    label(h),
                    lhs,
                    rhs
                ));
            }
            if complete {
                report.classical_instances += 1;
                // column of [K/K]: the orbits L/(L n gKg^-1), one per double coset
                let col = m.levels[k.0]
                    .binary_search(&k)
                    .expect("K/K is always admissible");
                let mut expected = vec![0i64; m.rank(l)];
                for rep in classical {
                    expected[m.levels[l.0].binary_search(&rep).expect("complete level")] += 1;
                }
                let got: Vec<i64> = (0..m.rank(l)).map(|r| lhs.get(r, col)).collect();
                if got != expected {
                    report.classical_failures.push(format!(
                        "res to {} of {}/{}: {:?} != {:?}",
                        label(l),
                        label(h),
                        label(k),
                        got,
                        expected
                    ));
                }
            }
        }
    }

    for h in lattice.ids() {
        for mid in lattice.below(h) {
            for l in lattice.below(mid) {
                report.functoriality_instances += 1;
                let composed = m.res(l, mid).unwrap() * m.res(mid, h).unwrap();
                if &composed != m.res(l, h).unwrap() {
                    report.functoriality_failures.push(format!(
                        "res {}<={}<={}",
                        label(l),
                        label(mid),
                        label(h)
                    ));
                }
                if let (Some(a), Some(b), Some(c)) = (m.tr(l, mid), m.tr(mid, h), m.tr(l, h)) {
                    report.functoriality_instances += 1;
                    if &(b * a) != c {
                        report.functoriality_failures.push(format!(
                            "tr {}->{}->{}",
                            label(l),
                            label(mid),
                            label(h)
                        ));
                    }
                }
            }
        }
    }

    let gens = group.generators();
    for h in lattice.ids() {
        for &x in lattice.subgroup(h).elements() {
            report.conjugation_instances += 1;
            let c = conj(x, h);
            if *c != IntMatrix::identity(m.rank(h)) {
                report
                    .conjugation_failures
                    .push(format!("inner conjugation by {x} on {}", label(h)));
            }
        }
        for &a in &gens {
            for &b in &gens {
                report.conjugation_instances += 1;
                let ab = group.mul(a, b);
                let lhs = conj(ab, h);
                let rhs = conj(a, lattice.conjugate(b, h)) * conj(b, h);
                if *lhs != rhs || !lhs.is_permutation() {
                    report
                        .conjugation_failures
                        .push(format!("c_{a} c_{b} on {}", label(h)));
                }
            }
        }
    }
    Ok(report)
}
