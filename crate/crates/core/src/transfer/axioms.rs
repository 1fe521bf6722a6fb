use serde::Serialize;

use super::TransferSystem;
use crate::group::SubgroupId;
use crate::gset::GSet;

/// Cap on the number of pullback squares examined per subgroup.
pub const PULLBACK_BUDGET: usize = 4096;

/// Outcome of one closure clause.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomClause {
    pub name: &'static str,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexingReport {
    pub clauses: Vec<AxiomClause>,
}

impl IndexingReport {
    pub fn is_clean(&self) -> bool {
        self.clauses.iter().all(|c| c.counterexamples.is_empty())
    }

    pub fn clause(&self, name: &str) -> Option<&AxiomClause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

struct Clause {
    inner: AxiomClause,
}

impl Clause {
    fn new(name: &'static str) -> Self {
        Clause {
            inner: AxiomClause {
                name,
                checked: 0,
                counterexamples: Vec::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.inner.checked += 1;
        if !ok {
            self.inner.counterexamples.push(describe());
        }
    }
}

/// Re-checks the closure clauses of an indexing system directly on G-sets,
/// for every subgroup `H` and its admissible orbits:
///
/// * products and pullbacks of admissible orbits (along all orbit maps, up to
///   [`PULLBACK_BUDGET`] squares per `H`) are admissible;
/// * every sub-G-set of a sum of two admissible orbits is admissible;
/// * self-induction: `H/K` admissible and `T` admissible for `K` (an orbit or
///   a sum of two) give an admissible induced `H`-set;
/// * restriction to every `L <= H` and conjugation by every `g` preserve
///   admissibility.
///
/// Works on any relation, including ones built without validation, and
/// reports every failure found.
pub fn verify_indexing_axioms(ts: &TransferSystem) -> IndexingReport {
    let lattice = ts.lattice().clone();
    let group = lattice.group();
    let mut products = Clause::new("products");
    let mut pullbacks = Clause::new("pullbacks");
    let mut subsets = Clause::new("sub-G-sets");
    let mut induction = Clause::new("self-induction");
    let mut restriction = Clause::new("restriction");
    let mut conjugation = Clause::new("conjugation");

    let orbits_for = |h: SubgroupId| -> Vec<GSet> {
        ts.admissible_orbit_classes(h)
            .into_iter()
            .map(|k| GSet::orbit(lattice.clone(), h, k).expect("k <= h"))
            .collect()
    };
    let admissible_sets: Vec<Vec<GSet>> = lattice.ids().map(orbits_for).collect();
    let name = |x: &GSet| x.describe();
    let at = |h: SubgroupId| lattice.label(h);

    for h in lattice.ids() {
        let orbits = &admissible_sets[h.0];
        for (i, a) in orbits.iter().enumerate() {
            for b in &orbits[i..] {
                let p = a.product(b).expect("same acting subgroup");
                products.check(ts.admissible(&p), || {
                    format!(
                        "over {}: {} x {} = {} is not admissible",
                        at(h),
                        name(a),
                        name(b),
                        name(&p)
                    )
                });
                let sum = a.disjoint_union(b).expect("same acting subgroup");
                for part in 0..(1usize << sum.orbits().len()) {
                    let points: Vec<usize> = sum
                        .orbits()
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| part >> j & 1 == 1)
                        .flat_map(|(_, o)| o.points.iter().copied())
                        .collect();
                    let sub = sum.sub_gset(&points).expect("orbit unions are invariant");
                    subsets.check(ts.admissible(&sub), || {
                        format!(
                            "over {}: {} inside {} is not admissible",
                            at(h),
                            name(&sub),
                            name(&sum)
                        )
                    });
                }
            }
        }

        let mut budget = PULLBACK_BUDGET;
        'squares: for c in orbits {
            for a in orbits {
                let fs = a.equivariant_maps(c).expect("same acting subgroup").maps;
                for b in orbits {
                    let gs = b.equivariant_maps(c).expect("same acting subgroup").maps;
                    for f in &fs {
                        for g in &gs {
                            if budget == 0 {
                                break 'squares;
                            }
                            budget -= 1;
                            let (p, _) =
                                GSet::pullback(a, f, b, g, c).expect("legs are equivariant");
                            pullbacks.check(ts.admissible(&p), || {
                                format!(
                                    "over {}: pullback of {} -> {} <- {} is {}, not admissible",
                                    at(h),
                                    name(a),
                                    name(c),
                                    name(b),
                                    name(&p)
                                )
                            });
                        }
                    }
                }
            }
        }

        for k in ts.admissible_orbit_classes(h) {
            let inner = &admissible_sets[k.0];
            let mut sources: Vec<GSet> = inner.clone();
            for (i, a) in inner.iter().enumerate() {
                for b in &inner[i..] {
                    sources.push(a.disjoint_union(b).expect("same acting subgroup"));
                }
            }
            for t in &sources {
                let up = t.induce(h).expect("k <= h");
                induction.check(ts.admissible(&up), || {
                    format!(
                        "{}/{} admissible and {} admissible, but the induced {} is not",
                        at(h),
                        at(k),
                        name(t),
                        name(&up)
                    )
                });
            }
        }

        for a in orbits {
            for l in lattice.below(h) {
                let r = a.restrict(l).expect("l <= h");
                restriction.check(ts.admissible(&r), || {
                    format!(
                        "{} restricted to {} is {}, not admissible",
                        name(a),
                        at(l),
                        name(&r)
                    )
                });
            }
            for g in group.elements() {
                let c = a.conjugate(g);
                conjugation.check(ts.admissible(&c), || {
                    format!(
                        "{} conjugated by {g} is {}, not admissible",
                        name(a),
                        name(&c)
                    )
                });
            }
        }
    }

    IndexingReport {
        clauses: vec![
            products.inner,
            pullbacks.inner,
            subsets.inner,
            induction.inner,
            restriction.inner,
            conjugation.inner,
        ],
    }
}
