use std::sync::Arc;

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use ninf_core::graph::{GraphAmbient, OrderedGSet};
use ninf_core::gset::all_of_size;
use ninf_core::mackey::{build_mackey, mackey_double_coset_check};
use ninf_core::transfer::verify_indexing_axioms;
use ninf_core::wirthmuller::{
    restriction_fixed_points, stabilizer_check, theta, wirthmuller_index_match,
};
use ninf_core::{GSet, Result, SubgroupId, SubgroupLattice, TransferSystem};

/// Counterexamples kept per check.
const MAX_REPORTED: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Wirthmuller,
    Mackey,
    Graphs,
    All,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub counterexamples: Vec<Value>,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            instances: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_REPORTED {
                self.counterexamples.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub struct Options<'a> {
    pub h: Option<SubgroupId>,
    pub k: Option<SubgroupId>,
    pub x: Option<&'a str>,
    pub max_arity: usize,
    pub seed: u64,
}

pub fn run(ts: &TransferSystem, suite: Suite, opts: &Options) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Axioms | Suite::All) {
        out.extend(axioms(ts));
    }
    if matches!(suite, Suite::Wirthmuller | Suite::All) {
        out.extend(wirthmuller(ts, opts)?);
    }
    if matches!(suite, Suite::Mackey | Suite::All) {
        out.extend(mackey(ts)?);
    }
    if matches!(suite, Suite::Graphs | Suite::All) {
        out.extend(graphs(ts, opts)?);
    }
    Ok(out)
}

fn axioms(ts: &TransferSystem) -> Vec<Check> {
    let mut validate = Check::new("axioms", "validate");
    let violations = ts.violations();
    validate.instances = 1;
    if !violations.is_empty() {
        validate.failures = violations.len();
        validate.counterexamples = violations
            .iter()
            .take(MAX_REPORTED)
            .map(|v| json!(v))
            .collect();
    }
    let mut out = vec![validate];
    for clause in verify_indexing_axioms(ts).clauses {
        let mut c = Check::new("axioms", format!("indexing/{}", clause.name));
        c.instances = clause.checked;
        c.failures = clause.counterexamples.len();
        c.counterexamples = clause
            .counterexamples
            .iter()
            .take(MAX_REPORTED)
            .map(|s| json!(s))
            .collect();
        out.push(c);
    }
    out
}

fn wirthmuller(ts: &TransferSystem, opts: &Options) -> Result<Vec<Check>> {
    let lattice = ts.lattice();
    let top = lattice.top();
    let mut admissible = Check::new("wirthmuller", "admissible-orbit");
    let mut thetas = Check::new("wirthmuller", "theta-bijection");
    let mut stabilizers = Check::new("wirthmuller", "weyl-stabilizers");
    let mut index = Check::new("wirthmuller", "index-match");
    let mut fixed = Check::new("wirthmuller", "restriction-fixed-points");

    let hs: Vec<SubgroupId> = match opts.h {
        Some(h) => vec![h],
        None => lattice.ids().filter(|&h| ts.contains(h, top)).collect(),
    };
    let ks: Vec<SubgroupId> = match opts.k {
        Some(k) => vec![k],
        None => lattice.ids().collect(),
    };
    for &h in &hs {
        let ok = ts.contains(h, top);
        admissible.record(ok, || {
            json!({
                "H": lattice.label(h),
                "reason": format!("G/{} is not admissible: no transfer from {} to G", lattice.label(h), lattice.label(h)),
            })
        });
        for &k in &ks {
            let t = theta(lattice, k, h)?;
            thetas.record(
                t.is_bijection(),
                || json!({"K": lattice.label(k), "H": lattice.label(h), "report": t}),
            );
            let s = stabilizer_check(lattice, k, h)?;
            stabilizers.record(
                s.holds(),
                || json!({"K": lattice.label(k), "H": lattice.label(h), "report": s}),
            );
        }
        if !ok {
            continue;
        }
        for x in test_sets(lattice, h, opts)? {
            let report = wirthmuller_index_match(ts, h, &x)?;
            index.record(
                report.holds(),
                || json!({"H": lattice.label(h), "X": x.describe(), "report": report}),
            );
            for &k in &ks {
                let r = restriction_fixed_points(&x, k)?;
                fixed.record(r.bijective && r.equivariant, || {
                    json!({"K": lattice.label(k), "H": lattice.label(h), "X": x.describe(), "report": r})
                });
            }
        }
    }
    Ok(vec![admissible, thetas, stabilizers, index, fixed])
}

/// The `--X` set, or every `H`-set with at most three points.
fn test_sets(lattice: &Arc<SubgroupLattice>, h: SubgroupId, opts: &Options) -> Result<Vec<GSet>> {
    if let Some(src) = opts.x {
        return Ok(vec![crate::input::gset(src, lattice, h)?]);
    }
    let mut out = Vec::new();
    for n in 0..=3 {
        for orbits in all_of_size(lattice, h, n) {
            out.push(GSet::from_orbits(lattice.clone(), h, &orbits)?);
        }
    }
    Ok(out)
}

fn mackey(ts: &TransferSystem) -> Result<Vec<Check>> {
    let m = build_mackey(ts)?;
    let r = mackey_double_coset_check(&m)?;
    let check = |name: &str, instances: usize, failures: &[String]| Check {
        suite: "mackey",
        name: name.into(),
        instances,
        failures: failures.len(),
        counterexamples: failures
            .iter()
            .take(MAX_REPORTED)
            .map(|s| json!(s))
            .collect(),
    };
    Ok(vec![
        check(
            "double-coset",
            r.double_coset_instances,
            &r.double_coset_failures,
        ),
        check(
            "admissible-terms",
            r.double_coset_instances,
            &r.inadmissible_terms,
        ),
        check(
            "functoriality",
            r.functoriality_instances,
            &r.functoriality_failures,
        ),
        check(
            "conjugation",
            r.conjugation_instances,
            &r.conjugation_failures,
        ),
        check(
            "burnside-counts",
            r.classical_instances,
            &r.classical_failures,
        ),
    ])
}

fn graphs(ts: &TransferSystem, opts: &Options) -> Result<Vec<Check>> {
    let lattice = ts.lattice();
    let top = lattice.top();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut weyl = Check::new("graphs", "weyl-isomorphism");
    let mut reordered = Check::new("graphs", "weyl-isomorphism-reordered");
    let mut family = Check::new("graphs", "family-membership");
    let mut wreath = Check::new("graphs", "wreath");
    let hs: Vec<SubgroupId> = match opts.h {
        Some(h) => vec![h],
        None => lattice.ids().collect(),
    };
    for n in 1..=opts.max_arity {
        let ambient = GraphAmbient::new(lattice.clone(), n)?;
        for &h in &hs {
            for orbits in all_of_size(lattice, h, n) {
                let t = OrderedGSet::new(GSet::from_orbits(lattice.clone(), h, &orbits)?);
                let describe = || json!({"H": lattice.label(h), "T": t.base().describe()});
                let cert = ambient.weyl_iso_phi(&t)?;
                weyl.record(
                    cert.is_isomorphism(),
                    || json!({"T": describe(), "certificate": cert}),
                );
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                let u = t.reorder(&p)?;
                let cert = ambient.weyl_iso_phi(&u)?;
                reordered.record(
                    cert.is_isomorphism(),
                    || json!({"T": describe(), "order": p, "certificate": cert}),
                );
                let gamma = ambient.graph_subgroup(&t)?;
                let member = ambient.family_membership(ts, &gamma.subgroup);
                family.record(member == ts.admissible(t.base()), || {
                    json!({"T": describe(), "member": member, "admissible": ts.admissible(t.base())})
                });
            }
            if lattice.classes().rep_of(h) == Some(h) {
                let x = GSet::from_orbits(lattice.clone(), top, &[(h, n)])?;
                if let Some(cert) = x.aut_group().wreath()? {
                    wreath.record(
                        cert.is_isomorphism(),
                        || json!({"H": lattice.label(h), "n": n, "certificate": cert}),
                    );
                }
            }
        }
    }
    Ok(vec![weyl, reordered, family, wreath])
}
