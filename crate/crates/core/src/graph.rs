//! Graph subgroups `Γ_T = {(h, f(h))}` of `G x Σ_n` for an `H`-set `T` on
//! the points `0..n`, the families they form, and the identification of the
//! Weyl group of `Γ_T` with `Aut_H(T)`.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    compose, invert, is_permutation, lex_rank, quotient, FiniteGroup, Subgroup, SubgroupId,
    SubgroupLattice,
};
use crate::gset::GSet;
use crate::limits::HARD_MAX_ARITY;
use crate::transfer::TransferSystem;

/// A G-set whose points are read as `0..n`, so that the action is a
/// homomorphism `f: H -> Σ_n`.
#[derive(Clone, Debug)]
pub struct OrderedGSet {
    base: GSet,
}

impl OrderedGSet {
    /// Uses the point order of `base` as is (the coset order for sets built
    /// from orbit data).
    pub fn new(base: GSet) -> Self {
        OrderedGSet { base }
    }

    pub fn base(&self) -> &GSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// `f(h)`, as the permutation `x -> h.x`.
    pub fn f(&self, h: usize) -> &[usize] {
        self.base.permutation(h)
    }

    /// Relabels point `x` as `p[x]`.
    pub fn reorder(&self, p: &[usize]) -> Result<OrderedGSet> {
        let n = self.len();
        if !is_permutation(p, n) {
            return Err(Error::InvalidInput(
                "reordering is not a permutation".into(),
            ));
        }
        let lattice = self.base.lattice().clone();
        let q = invert(p);
        let action = lattice
            .group()
            .elements()
            .map(|g| {
                let row = self.base.permutation(g);
                if row.is_empty() {
                    Vec::new()
                } else {
                    (0..n).map(|y| p[row[q[y]]]).collect()
                }
            })
            .collect();
        Ok(OrderedGSet {
            base: GSet::from_action(lattice, self.base.acting(), n, action)?,
        })
    }
}

/// `G x Σ_n` with element `(g, σ)` numbered `g n! + rank(σ)`, ranks taken in
/// lexicographic order of permutations.
#[derive(Clone, Debug)]
pub struct GraphAmbient {
    lattice: Arc<SubgroupLattice>,
    n: usize,
    sym_order: usize,
    product: FiniteGroup,
}

/// `Γ_T` as a subgroup of the ambient product.
#[derive(Clone, Debug)]
pub struct GraphSubgroup {
    pub domain: SubgroupId,
    pub subgroup: Subgroup,
}

/// Machine-checked data for `φ: Aut_H(T) -> W(Γ_T)`, `σ -> [(e, σ)]`, with
/// the Weyl group taken in `H x Σ_n`.
#[derive(Clone, Debug, Serialize)]
pub struct WeylIsoCertificate {
    pub graph_order: usize,
    pub normalizer_order: usize,
    /// Normalizer from the condition `σ f(h) σ^-1 = f(g h g^-1)` agrees with
    /// the one from `x Γ x^-1 = Γ`.
    pub normalizer_cross_checked: bool,
    pub weyl_order: usize,
    pub aut_order: usize,
    /// `phi[a]` is the Weyl class of `(e, σ_a)`.
    pub phi: Vec<usize>,
    pub homomorphism: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl WeylIsoCertificate {
    pub fn is_isomorphism(&self) -> bool {
        self.normalizer_cross_checked
            && self.homomorphism
            && self.injective
            && self.surjective
            && self.normalizer_order == self.graph_order * self.aut_order
    }
}

impl GraphAmbient {
    pub fn new(lattice: Arc<SubgroupLattice>, n: usize) -> Result<Self> {
        let max = lattice.limits().max_arity.min(HARD_MAX_ARITY);
        if n > max {
            return Err(Error::SizeLimitExceeded {
                what: "arity",
                size: n,
                limit: max,
            });
        }
        let sym = FiniteGroup::symmetric_group(n)?;
        let sym_order = sym.order();
        let product = FiniteGroup::direct_product(lattice.group(), &sym);
        Ok(GraphAmbient {
            lattice,
            n,
            sym_order,
            product,
        })
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn product(&self) -> &FiniteGroup {
        &self.product
    }

    pub fn element(&self, g: usize, sigma: &[usize]) -> usize {
        g * self.sym_order + lex_rank(sigma)
    }

    /// `(g, σ)` for an element of the product.
    pub fn components(&self, x: usize) -> (usize, Vec<usize>) {
        let (g, s) = (x / self.sym_order, x % self.sym_order);
        (g, nth_permutation(self.n, s))
    }

    fn check_arity(&self, t: &OrderedGSet) -> Result<()> {
        if t.len() != self.n || t.base.lattice().group().token() != self.lattice.group().token() {
            return Err(Error::ShapeMismatch {
                expected: self.n,
                found: t.len(),
            });
        }
        Ok(())
    }

    pub fn graph_subgroup(&self, t: &OrderedGSet) -> Result<GraphSubgroup> {
        self.check_arity(t)?;
        let h = t.base.acting();
        let elements: Vec<usize> = self
            .lattice
            .subgroup(h)
            .elements()
            .iter()
            .map(|&g| self.element(g, t.f(g)))
            .collect();
        Ok(GraphSubgroup {
            domain: h,
            subgroup: Subgroup::from_elements(&self.product, &elements)?,
        })
    }

    /// The subgroup `{e} x Σ_n`.
    pub fn symmetric_factor(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.sym_order).collect();
        Subgroup::from_elements(&self.product, &elements).expect("the second factor is a subgroup")
    }

    pub fn weyl_iso_phi(&self, t: &OrderedGSet) -> Result<WeylIsoCertificate> {
        let graph = self.graph_subgroup(t)?;
        let gamma = &graph.subgroup;
        let h = graph.domain;
        let group = self.lattice.group();
        let hsub = self.lattice.subgroup(h);
        let perms: Vec<Vec<usize>> = (0..self.sym_order)
            .map(|s| nth_permutation(self.n, s))
            .collect();

        // (g, σ) with g in H normalizes Γ iff σ f(k) σ^-1 = f(g k g^-1) for all k in H
        let mut by_condition = Vec::new();
        for &g in hsub.elements() {
            for (s, sigma) in perms.iter().enumerate() {
                let sigma_inv = invert(sigma);
                let ok = hsub.elements().iter().all(|&k| {
                    compose(&compose(sigma, t.f(k)), &sigma_inv) == t.f(group.conj(g, k))
                });
                if ok {
                    by_condition.push(g * self.sym_order + s);
                }
            }
        }
        let mut by_definition = Vec::new();
        for &g in hsub.elements() {
            for s in 0..self.sym_order {
                let x = g * self.sym_order + s;
                if gamma
                    .elements()
                    .iter()
                    .all(|&y| gamma.contains(self.product.conj(x, y)))
                {
                    by_definition.push(x);
                }
            }
        }
        let normalizer_cross_checked = by_condition == by_definition;
        let normalizer = Subgroup::from_elements(&self.product, &by_condition)?;
        let weyl = quotient(&self.product, &normalizer, gamma, "W(graph)")?;

        let aut = t.base.aut_group();
        let phi: Vec<usize> = (0..aut.order())
            .map(|a| {
                let x = self.element(0, aut.permutation(a));
                weyl.project(x).ok_or_else(|| {
                    Error::InvalidInput("automorphism outside the normalizer".into())
                })
            })
            .collect::<Result<_>>()?;
        let homomorphism = (0..aut.order()).all(|a| {
            (0..aut.order()).all(|b| phi[aut.group().mul(a, b)] == weyl.group.mul(phi[a], phi[b]))
        });
        let mut hit = FixedBitSet::with_capacity(weyl.group.order());
        let mut injective = true;
        for &w in &phi {
            injective &= !hit.put(w);
        }
        let surjective = hit.count_ones(..) == weyl.group.order();
        Ok(WeylIsoCertificate {
            graph_order: gamma.order(),
            normalizer_order: normalizer.order(),
            normalizer_cross_checked,
            weyl_order: weyl.group.order(),
            aut_order: aut.order(),
            phi,
            homomorphism,
            injective,
            surjective,
        })
    }

    /// The `H`-set on `0..n` whose graph is `lambda`, if `lambda` is a graph:
    /// it must meet `{e} x Σ_n` trivially.
    pub fn graph_domain(&self, lambda: &Subgroup) -> Option<OrderedGSet> {
        if lambda.parent() != self.product.token() {
            return None;
        }
        let group = self.lattice.group();
        let mut action = vec![Vec::new(); group.order()];
        let mut members = FixedBitSet::with_capacity(group.order());
        for &x in lambda.elements() {
            let (g, sigma) = self.components(x);
            if members.put(g) {
                return None;
            }
            action[g] = sigma;
        }
        let h = self.lattice.id_of_members(&members)?;
        GSet::from_action(self.lattice.clone(), h, self.n, action)
            .ok()
            .map(OrderedGSet::new)
    }

    /// Whether `lambda` is `Γ_T` for a `ts`-admissible `H`-set `T`.
    pub fn family_membership(&self, ts: &TransferSystem, lambda: &Subgroup) -> bool {
        match self.graph_domain(lambda) {
            Some(t) => ts.admissible(t.base()),
            None => false,
        }
    }
}

/// The `rank`-th permutation of `0..n` in lexicographic order.
fn nth_permutation(n: usize, mut rank: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut fact = (1..n).product::<usize>().max(1);
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let d = rank / fact;
        rank %= fact;
        out.push(pool.remove(d));
        if i > 0 {
            fact /= i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{lex_permutations, Builtin};

    fn lat(b: Builtin) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(b.build().unwrap()).unwrap())
    }

    #[test]
    fn permutation_ranks_round_trip() {
        for n in 0..5 {
            for (r, p) in lex_permutations(n).iter().enumerate() {
                assert_eq!(&nth_permutation(n, r), p);
                assert_eq!(lex_rank(p), r);
            }
        }
    }

    #[test]
    fn trivial_points_give_g_times_identity() {
        let s3 = lat(Builtin::Symmetric(3));
        let t = OrderedGSet::new(GSet::trivial(s3.clone(), s3.top(), 2).unwrap());
        let amb = GraphAmbient::new(s3.clone(), 2).unwrap();
        let g = amb.graph_subgroup(&t).unwrap();
        let expected: Vec<usize> = (0..6).map(|x| amb.element(x, &[0, 1])).collect();
        assert_eq!(g.subgroup.elements(), expected.as_slice());
    }

    #[test]
    fn regular_c2() {
        let c2 = lat(Builtin::Cyclic(2));
        let t = OrderedGSet::new(GSet::orbit(c2.clone(), c2.top(), c2.trivial()).unwrap());
        let amb = GraphAmbient::new(c2.clone(), 2).unwrap();
        let g = amb.graph_subgroup(&t).unwrap();
        assert_eq!(
            g.subgroup.elements(),
            &[amb.element(0, &[0, 1]), amb.element(1, &[1, 0])]
        );
        let cert = amb.weyl_iso_phi(&t).unwrap();
        assert_eq!(
            (cert.normalizer_order, cert.weyl_order, cert.aut_order),
            (4, 2, 2)
        );
        assert!(cert.is_isomorphism());
    }

    #[test]
    fn c4_mod_c2_graph() {
        let c4 = lat(Builtin::Cyclic(4));
        let t = OrderedGSet::new(GSet::orbit(c4.clone(), c4.top(), SubgroupId(1)).unwrap());
        let amb = GraphAmbient::new(c4.clone(), 2).unwrap();
        let g = amb.graph_subgroup(&t).unwrap();
        assert_eq!(g.subgroup.order(), 4);
        let swaps = g
            .subgroup
            .elements()
            .iter()
            .filter(|&&x| amb.components(x).1 == vec![1, 0])
            .count();
        assert_eq!(swaps, 2);
        let lin = TransferSystem::builtin(c4.clone(), "c4-linear-isometries").unwrap();
        assert!(!amb.family_membership(&lin, &g.subgroup));
        let free = OrderedGSet::new(GSet::orbit(c4.clone(), c4.top(), c4.trivial()).unwrap());
        let amb4 = GraphAmbient::new(c4, 4).unwrap();
        assert!(amb4.family_membership(&lin, &amb4.graph_subgroup(&free).unwrap().subgroup));
    }

    #[test]
    fn weyl_iso_small_cases() {
        let s3 = lat(Builtin::Symmetric(3));
        let pt = OrderedGSet::new(GSet::orbit(s3.clone(), s3.top(), s3.top()).unwrap());
        let cert = GraphAmbient::new(s3.clone(), 1)
            .unwrap()
            .weyl_iso_phi(&pt)
            .unwrap();
        assert_eq!((cert.weyl_order, cert.aut_order), (1, 1));
        assert!(cert.is_isomorphism());
        let t = OrderedGSet::new(GSet::orbit(s3.clone(), s3.top(), SubgroupId(1)).unwrap());
        let cert = GraphAmbient::new(s3, 3).unwrap().weyl_iso_phi(&t).unwrap();
        assert_eq!((cert.weyl_order, cert.aut_order), (1, 1));
        assert!(cert.is_isomorphism());
    }

    #[test]
    fn non_graphs_are_rejected() {
        let c2 = lat(Builtin::Cyclic(2));
        let amb = GraphAmbient::new(c2.clone(), 2).unwrap();
        let swap = Subgroup::generated(amb.product(), &[amb.element(0, &[1, 0])]);
        assert!(amb.graph_domain(&swap).is_none());
        assert!(!amb.family_membership(&TransferSystem::complete(c2), &swap));
    }

    #[test]
    fn reordering_conjugates_the_graph() {
        let s3 = lat(Builtin::Symmetric(3));
        let t = OrderedGSet::new(
            GSet::from_orbits(s3.clone(), s3.top(), &[(SubgroupId(4), 1), (s3.top(), 1)]).unwrap(),
        );
        let amb = GraphAmbient::new(s3.clone(), 3).unwrap();
        let p = vec![2, 0, 1];
        let moved = t.reorder(&p).unwrap();
        let a = amb.graph_subgroup(&t).unwrap().subgroup;
        let b = amb.graph_subgroup(&moved).unwrap().subgroup;
        let c = a.conjugate(amb.product(), amb.element(0, &p));
        assert_eq!(b, c);
    }
}
