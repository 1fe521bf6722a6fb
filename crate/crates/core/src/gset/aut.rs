use std::collections::HashMap;

use serde::Serialize;

use super::GSet;
use crate::error::Result;
use crate::group::{compose, invert, lex_permutations, lex_rank, FiniteGroup, SubgroupId};

/// `Aut_G(T)`: the permutations of the points of `T` commuting with the
/// action, sorted lexicographically (so the identity is element 0).
#[derive(Clone, Debug)]
pub struct GSetAutGroup {
    pub base: GSet,
    group: FiniteGroup,
}

impl GSetAutGroup {
    /// An automorphism sends the base point of each orbit to a point with
    /// exactly the same stabilizer, and distinct orbits to distinct orbits.
    pub(super) fn new(base: &GSet) -> Self {
        let stabs: Vec<SubgroupId> = (0..base.len()).map(|x| base.stabilizer(x)).collect();
        let per_orbit: Vec<(Vec<(usize, usize)>, Vec<usize>)> = base
            .orbits()
            .iter()
            .map(|o| {
                let choices = (0..base.len())
                    .filter(|&y| stabs[y] == o.stabilizer)
                    .collect();
                (base.transporters(o), choices)
            })
            .collect();
        let mut perms = Vec::new();
        let mut pick = vec![0usize; per_orbit.len()];
        'outer: loop {
            let mut used = vec![false; base.orbits().len()];
            let ok = per_orbit
                .iter()
                .zip(&pick)
                .all(|((_, c), &i)| !std::mem::replace(&mut used[base.orbit_index(c[i])], true));
            if ok {
                let mut f = vec![0usize; base.len()];
                for ((transport, choices), &i) in per_orbit.iter().zip(&pick) {
                    for &(p, h) in transport {
                        f[p] = base.act(h, choices[i]);
                    }
                }
                perms.push(f);
            }
            let mut k = pick.len();
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < per_orbit[k].1.len() {
                    continue 'outer;
                }
                pick[k] = 0;
            }
        }
        perms.sort();
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let group =
            FiniteGroup::from_permutation_list(perms, index, format!("Aut({})", base.describe()));
        GSetAutGroup {
            base: base.clone(),
            group,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The point permutation of element `a`.
    pub fn permutation(&self, a: usize) -> &[usize] {
        &self
            .group
            .permutation_labels()
            .expect("automorphisms are permutations")[a]
    }

    pub fn element_of(&self, perm: &[usize]) -> Option<usize> {
        self.group.element_of_permutation(perm)
    }

    /// Identifies `Aut_G(n . G/H)` with `W_G(H) wr S_n` and certifies the
    /// identification. `None` unless `T` is a nonempty multiple of one orbit.
    pub fn wreath(&self) -> Result<Option<WreathCertificate>> {
        let table = self.base.orbit_table();
        let [row] = table.as_slice() else {
            return Ok(None);
        };
        let lattice = self.base.lattice().clone();
        let acting = self.base.acting();
        let h = row.rep;
        let n = row.multiplicity;
        let model = GSet::from_orbits(lattice.clone(), acting, &[(h, n)])?;
        let to_base = model.iso(&self.base)?.expect("same orbit table");
        let from_base = invert(&to_base);

        let weyl = relative_weyl(&self.base, h);
        let wreath = WreathProduct::new(weyl.group.clone(), n);

        // alpha_w(gH) = g n_w^-1 H on one copy of H/K
        let group = lattice.group();
        let hs = lattice.subgroup(h);
        let acting_set = lattice.subgroup(acting);
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for &g in acting_set.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in hs.elements() {
                coset_of[group.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let index = reps.len();
        let alpha: Vec<Vec<usize>> = (0..weyl.group.order())
            .map(|w| {
                let ninv = group.inv(weyl.lifts[w]);
                reps.iter().map(|&r| coset_of[group.mul(r, ninv)]).collect()
            })
            .collect();
        let rho = |a: usize| -> Vec<usize> {
            let (w, pi) = wreath.decode(a);
            let mut model_perm = vec![0; n * index];
            for c in 0..n {
                let target = pi[c];
                let aw = &alpha[w[target]];
                for i in 0..index {
                    model_perm[c * index + i] = target * index + aw[i];
                }
            }
            // transport to the points of the base set
            compose(&to_base, &compose(&model_perm, &from_base))
        };

        let images: Vec<Vec<usize>> = (0..wreath.order()).map(rho).collect();
        let identity_preserved = images[0].iter().enumerate().all(|(i, &x)| i == x);
        let gens = wreath.generators();
        let generators_generate = wreath.closure_size(&gens) == wreath.order();
        let homomorphism = (0..wreath.order()).all(|a| {
            gens.iter()
                .all(|&s| images[wreath.mul(a, s)] == compose(&images[a], &images[s]))
        });
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        let injective = sorted.len() == images.len();
        let onto_aut =
            sorted.len() == self.order() && sorted.iter().all(|p| self.element_of(p).is_some());
        Ok(Some(WreathCertificate {
            stabilizer: h,
            copies: n,
            weyl_order: weyl.group.order(),
            aut_order: self.order(),
            wreath_order: wreath.order(),
            identity_preserved,
            generators_generate,
            homomorphism,
            injective,
            onto_aut,
        }))
    }
}

struct RelativeWeyl {
    group: FiniteGroup,
    lifts: Vec<usize>,
}

/// `W_H'(K) = N_H'(K)/K` for `H'` the acting subgroup of `base`.
fn relative_weyl(base: &GSet, k: SubgroupId) -> RelativeWeyl {
    let lattice = base.lattice();
    let acting = base.acting();
    if acting == lattice.top() {
        let w = lattice.weyl(k);
        return RelativeWeyl {
            group: w.group.clone(),
            lifts: w.lifts.clone(),
        };
    }
    let group = lattice.group();
    let normalizer = lattice
        .subgroup(lattice.normalizer(k))
        .intersection(lattice.subgroup(acting))
        .expect("same group");
    let q = crate::group::quotient(group, &normalizer, lattice.subgroup(k), "W")
        .expect("K is normal in its normalizer");
    RelativeWeyl {
        group: q.group,
        lifts: q.lifts,
    }
}

/// Result of comparing `Aut_G(n . G/H)` with `W_G(H) wr S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathCertificate {
    pub stabilizer: SubgroupId,
    pub copies: usize,
    pub weyl_order: usize,
    pub aut_order: usize,
    pub wreath_order: usize,
    pub identity_preserved: bool,
    /// The generating set used for the homomorphism check spans the wreath product.
    pub generators_generate: bool,
    /// `rho(a s) = rho(a) rho(s)` for every element `a` and generator `s`.
    pub homomorphism: bool,
    pub injective: bool,
    /// The image is exactly the automorphism group.
    pub onto_aut: bool,
}

impl WreathCertificate {
    pub fn is_isomorphism(&self) -> bool {
        self.identity_preserved
            && self.generators_generate
            && self.homomorphism
            && self.injective
            && self.onto_aut
            && self.aut_order == self.wreath_order
    }
}

/// `W wr S_n = W^n x| S_n`, with `(w; pi)(v; tau) = (j -> w_j v_{pi^-1(j)}; pi tau)`.
///
/// Element `(w_0, .., w_{n-1}; pi)` is numbered
/// `(w_0 |W|^(n-1) + .. + w_{n-1}) n! + rank(pi)`, with `rank` the
/// lexicographic rank of `pi`.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    base: FiniteGroup,
    n: usize,
    perms: Vec<Vec<usize>>,
    order: usize,
}

impl WreathProduct {
    pub fn new(base: FiniteGroup, n: usize) -> Self {
        let perms = lex_permutations(n);
        let order = base.order().pow(n as u32) * perms.len();
        WreathProduct {
            base,
            n,
            perms,
            order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn decode(&self, a: usize) -> (Vec<usize>, &[usize]) {
        let f = self.perms.len();
        let pi = &self.perms[a % f];
        let mut code = a / f;
        let m = self.base.order();
        let mut w = vec![0; self.n];
        for j in (0..self.n).rev() {
            w[j] = code % m;
            code /= m;
        }
        (w, pi)
    }

    pub fn encode(&self, w: &[usize], pi: &[usize]) -> usize {
        let m = self.base.order();
        let code = w.iter().fold(0, |acc, &x| acc * m + x);
        code * self.perms.len() + lex_rank(pi)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (w, pi) = self.decode(a);
        let (v, tau) = self.decode(b);
        let pinv = invert(pi);
        let u: Vec<usize> = (0..self.n)
            .map(|j| self.base.mul(w[j], v[pinv[j]]))
            .collect();
        self.encode(&u, &compose(pi, tau))
    }

    /// Base-group generators in the first coordinate, plus the
    /// transpositions `(0 i)`.
    pub fn generators(&self) -> Vec<usize> {
        let id: Vec<usize> = (0..self.n).collect();
        let mut gens = Vec::new();
        if self.n == 0 {
            return gens;
        }
        for g in self.base.generators() {
            let mut w = vec![0; self.n];
            w[0] = g;
            gens.push(self.encode(&w, &id));
        }
        for i in 1..self.n {
            let mut t = id.clone();
            t.swap(0, i);
            gens.push(self.encode(&vec![0; self.n], &t));
        }
        gens
    }

    /// Size of the subgroup generated by `gens`.
    pub fn closure_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !std::mem::replace(&mut seen[y], true) {
                    queue.push(y);
                }
            }
        }
        queue.len()
    }
}
