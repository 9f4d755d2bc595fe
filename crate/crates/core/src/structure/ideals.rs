//! Ideals attached to connection classes and the decompositions they assemble into.

use serde::Serialize;

use crate::connections::ConnectionClass;
use crate::hlr::{
    action_span, anchor_span, bracket_span, center_a, center_l, check_ideal, first_escape, product_span, HlrData,
    IdealCheck,
};
use crate::linalg::{Field, Scalar, Subspace};
use crate::split::Decomposition;

/// `I_[γ] = L_{0,[γ]} ⊕ L_[γ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootIdeal {
    pub class: ConnectionClass,
    /// `Σ A_{-ξ}L_ξ + Σ [L_{-ξ}, L_ξ]` over the class, inside `H`.
    pub cartan_part: Subspace,
    /// `⊕ L_ξ` over the class.
    pub graded_part: Subspace,
    pub total: Subspace,
}

/// `𝒜_[α] = A_{0,[α]} ⊕ A_[α]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightIdeal {
    pub class: ConnectionClass,
    /// `Σ ρ(L_{-β})(A_β) + Σ A_{-β}A_β` over the class, inside `A_0`.
    pub zero_part: Subspace,
    /// `⊕ A_β` over the class.
    pub graded_part: Subspace,
    pub total: Subspace,
}

fn sum(parts: &[Subspace], field: Field, dim: usize) -> Subspace {
    Subspace::sum_all(field, dim, parts).expect("common ambient space")
}

/// Summands whose index functional is missing from `Γ` or `Λ` contribute zero.
pub fn build_root_ideal(h: &HlrData, d: &Decomposition, class: &ConnectionClass) -> RootIdeal {
    let field = h.field();
    let n = h.dim();
    let mut cartan = Vec::new();
    let mut graded = Vec::new();
    for xi in &class.members {
        let l_xi = d.root_space(xi).expect("class member is a root");
        let neg = xi.neg();
        if let Some(a_neg) = d.weight_space(&neg) {
            cartan.push(action_span(h, a_neg, l_xi));
        }
        if let Some(l_neg) = d.root_space(&neg) {
            cartan.push(bracket_span(h, l_neg, l_xi));
        }
        graded.push(l_xi.clone());
    }
    let cartan_part = sum(&cartan, field, n);
    let graded_part = sum(&graded, field, n);
    let total = cartan_part.sum(&graded_part).expect("ambient L");
    RootIdeal { class: class.clone(), cartan_part, graded_part, total }
}

pub fn build_weight_ideal(h: &HlrData, d: &Decomposition, class: &ConnectionClass) -> WeightIdeal {
    let field = h.field();
    let m = h.a.dim();
    let mut zero = Vec::new();
    let mut graded = Vec::new();
    for beta in &class.members {
        let a_beta = d.weight_space(beta).expect("class member is a weight");
        let neg = beta.neg();
        if let Some(l_neg) = d.root_space(&neg) {
            zero.push(anchor_span(h, l_neg, a_beta));
        }
        if let Some(a_neg) = d.weight_space(&neg) {
            zero.push(product_span(&h.a, a_neg, a_beta));
        }
        graded.push(a_beta.clone());
    }
    let zero_part = sum(&zero, field, m);
    let graded_part = sum(&graded, field, m);
    let total = zero_part.sum(&graded_part).expect("ambient A");
    WeightIdeal { class: class.clone(), zero_part, graded_part, total }
}

/// Closure properties of a root ideal; witnesses are products escaping `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootIdealReport {
    /// `[I, I] ⊆ I`
    pub bracket_closed: Option<Vec<Scalar>>,
    /// `ψ(I) = I`
    pub twist_stable: bool,
    /// `A·I ⊆ I`
    pub module_closed: Option<Vec<Scalar>>,
    /// `ρ(I)(A)·L ⊆ I`
    pub anchor_closed: Option<Vec<Scalar>>,
    /// The cartan and graded parts meet only in zero.
    pub direct: bool,
    pub ideal: IdealCheck,
}

impl RootIdealReport {
    pub fn passed(&self) -> bool {
        self.bracket_closed.is_none()
            && self.twist_stable
            && self.module_closed.is_none()
            && self.anchor_closed.is_none()
            && self.direct
            && self.ideal.is_ideal()
    }
}

pub fn verify_root_ideal(h: &HlrData, ri: &RootIdeal) -> RootIdealReport {
    let i = &ri.total;
    let full_a = Subspace::full(h.field(), h.a.dim());
    let full_l = Subspace::full(h.field(), h.dim());
    let image = anchor_span(h, i, &full_a);
    RootIdealReport {
        bracket_closed: first_escape(i, i, i, |u, v| h.bracket(u, v)),
        twist_stable: i.map(&h.psi) == *i,
        module_closed: first_escape(i, &full_a, i, |a, x| h.act(a, x)),
        anchor_closed: first_escape(i, &image, &full_l, |a, x| h.act(a, x)),
        direct: ri.cartan_part.intersect(&ri.graded_part).expect("ambient L").is_zero(),
        ideal: check_ideal(h, i),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightIdealReport {
    /// `𝒜𝒜 ⊆ 𝒜`
    pub self_closed: Option<Vec<Scalar>>,
    /// `𝒜A ⊆ 𝒜`
    pub absorbs: Option<Vec<Scalar>>,
    pub direct: bool,
}

impl WeightIdealReport {
    pub fn passed(&self) -> bool {
        self.self_closed.is_none() && self.absorbs.is_none() && self.direct
    }
}

pub fn verify_weight_ideal(h: &HlrData, wi: &WeightIdeal) -> WeightIdealReport {
    let t = &wi.total;
    let full_a = Subspace::full(h.field(), h.a.dim());
    WeightIdealReport {
        self_closed: first_escape(t, t, t, |a, b| h.a.mul(a, b)),
        absorbs: first_escape(t, t, &full_a, |a, b| h.a.mul(a, b)),
        direct: wi.zero_part.intersect(&wi.graded_part).expect("ambient A").is_zero(),
    }
}

/// Dimension of the product of two ideals from distinct classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossProduct {
    pub left: usize,
    pub right: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub products: Vec<CrossProduct>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.products.iter().all(|p| p.dim == 0)
    }
}

fn cross<F>(spaces: &[&Subspace], product: F) -> OrthogonalityReport
where
    F: Fn(&Subspace, &Subspace) -> Subspace,
{
    let mut products = Vec::new();
    for (i, a) in spaces.iter().enumerate() {
        for (j, b) in spaces.iter().enumerate().skip(i + 1) {
            products.push(CrossProduct { left: i, right: j, dim: product(a, b).dim() });
        }
    }
    OrthogonalityReport { products }
}

/// `[I_[γ], I_[δ]]` for each pair of distinct classes.
pub fn orthogonality(h: &HlrData, ideals: &[RootIdeal]) -> OrthogonalityReport {
    let spaces: Vec<&Subspace> = ideals.iter().map(|r| &r.total).collect();
    cross(&spaces, |a, b| bracket_span(h, a, b))
}

/// `𝒜_[α]𝒜_[β]` for each pair of distinct classes.
pub fn weight_orthogonality(h: &HlrData, ideals: &[WeightIdeal]) -> OrthogonalityReport {
    let spaces: Vec<&Subspace> = ideals.iter().map(|w| &w.total).collect();
    cross(&spaces, |a, b| product_span(&h.a, a, b))
}

/// `X = V + Σ ideals`, with `V` a complement of the ideals' zero-parts in the
/// zero component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assembly {
    /// Sum of the zero-component parts of all ideals.
    pub zero_parts: Subspace,
    pub complement: Subspace,
    pub ideals_dim: usize,
    /// `V + Σ ideals` is the whole space.
    pub reconstructs: bool,
    /// The center vanishes and the zero component is exhausted.
    pub direct_regime: bool,
    /// Pairwise intersections of ideals vanish and dimensions add up; only
    /// evaluated in the direct regime.
    pub direct: Option<bool>,
}

impl Assembly {
    pub fn passed(&self) -> bool {
        self.reconstructs && self.direct != Some(false)
    }
}

fn assemble(
    field: Field,
    dim: usize,
    zero_component: &Subspace,
    zero_parts: &[&Subspace],
    totals: &[&Subspace],
    center_zero: bool,
) -> Assembly {
    let zero_sum = Subspace::sum_all(field, dim, zero_parts.iter().copied()).expect("ambient");
    let complement = zero_sum.complement_in(zero_component).expect("parts lie in the zero component");
    let ideals = Subspace::sum_all(field, dim, totals.iter().copied()).expect("ambient");
    let reconstructs = complement.sum(&ideals).expect("ambient").is_full();
    let direct_regime = center_zero && zero_sum == *zero_component;
    let direct = direct_regime.then(|| {
        let pairwise = totals
            .iter()
            .enumerate()
            .all(|(i, a)| totals.iter().skip(i + 1).all(|b| a.intersect(b).expect("ambient").is_zero()));
        let dims: usize = totals.iter().map(|t| t.dim()).sum();
        pairwise && dims == ideals.dim() && ideals.is_full()
    });
    Assembly { zero_parts: zero_sum, complement, ideals_dim: ideals.dim(), reconstructs, direct_regime, direct }
}

/// `L = U + Σ I_[γ]`.
pub fn assemble_l(h: &HlrData, d: &Decomposition, ideals: &[RootIdeal]) -> Assembly {
    let parts: Vec<&Subspace> = ideals.iter().map(|r| &r.cartan_part).collect();
    let totals: Vec<&Subspace> = ideals.iter().map(|r| &r.total).collect();
    assemble(h.field(), h.dim(), &d.h, &parts, &totals, center_l(h).is_zero())
}

/// `A = V + Σ 𝒜_[α]`.
pub fn assemble_a(h: &HlrData, d: &Decomposition, ideals: &[WeightIdeal]) -> Assembly {
    let parts: Vec<&Subspace> = ideals.iter().map(|w| &w.zero_part).collect();
    let totals: Vec<&Subspace> = ideals.iter().map(|w| &w.total).collect();
    assemble(h.field(), h.a.dim(), &d.a0, &parts, &totals, center_a(h).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connections::{build_orbits, root_classes, weight_classes, DEFAULT_ORBIT_BOUND};
    use crate::corpus::{build, direct_sum};
    use crate::linalg::unit;
    use crate::split::split;

    struct Fixture {
        h: HlrData,
        d: Decomposition,
        roots: Vec<RootIdeal>,
        weights: Vec<WeightIdeal>,
    }

    fn fixture(h: HlrData, cartan: &Subspace) -> Fixture {
        let d = split(&h, cartan).unwrap();
        let orbits = build_orbits(&d, DEFAULT_ORBIT_BOUND).unwrap();
        let roots = root_classes(&d, &orbits).unwrap().iter().map(|c| build_root_ideal(&h, &d, c)).collect();
        let weights = weight_classes(&d).unwrap().iter().map(|c| build_weight_ideal(&h, &d, c)).collect();
        Fixture { h, d, roots, weights }
    }

    fn corpus(id: &str) -> Fixture {
        let e = build(id).unwrap();
        fixture(e.data, &e.h)
    }

    fn span(h: &HlrData, idx: &[usize]) -> Subspace {
        let n = h.dim();
        Subspace::span(h.field(), n, idx.iter().map(|&i| unit(h.field(), n, i)))
    }

    #[test]
    fn sl2_single_ideal_is_everything() {
        let f = corpus("E1");
        assert_eq!(f.roots.len(), 1);
        let ri = &f.roots[0];
        assert_eq!(ri.cartan_part, span(&f.h, &[0]));
        assert!(ri.total.is_full());
        assert!(verify_root_ideal(&f.h, ri).passed());
        let a = assemble_l(&f.h, &f.d, &f.roots);
        assert!(a.complement.is_zero() && a.reconstructs && a.direct_regime);
        assert!(orthogonality(&f.h, &f.roots).products.is_empty());
    }

    #[test]
    fn blocks_give_block_ideals() {
        let f = corpus("E4");
        let totals: Vec<Subspace> = f.roots.iter().map(|r| r.total.clone()).collect();
        assert!(totals.contains(&span(&f.h, &[0, 1, 2])));
        assert!(totals.contains(&span(&f.h, &[3, 4, 5])));
        assert!(f.roots.iter().all(|r| verify_root_ideal(&f.h, r).passed()));
        assert!(orthogonality(&f.h, &f.roots).passed());
        let a = assemble_l(&f.h, &f.d, &f.roots);
        assert!(a.complement.is_zero());
        assert_eq!(a.direct, Some(true));
    }

    #[test]
    fn dual_numbers_empty_summands() {
        let f = corpus("E3");
        let ri = &f.roots[0];
        assert!(ri.cartan_part.is_zero());
        assert_eq!(ri.total, span(&f.h, &[1, 2, 3]));
        assert!(verify_root_ideal(&f.h, ri).passed());
        let wi = &f.weights[0];
        assert!(wi.zero_part.is_zero());
        assert_eq!(wi.total, Subspace::span(f.h.field(), 2, [unit(f.h.field(), 2, 1)]));
        assert!(verify_weight_ideal(&f.h, wi).passed());
        let a = assemble_a(&f.h, &f.d, &f.weights);
        assert!(a.reconstructs && !a.direct_regime);
        assert_eq!(a.complement, f.d.a0);
    }

    #[test]
    fn dropping_a_vector_breaks_closure() {
        let f = corpus("E1");
        let mut broken = f.roots[0].clone();
        broken.total = span(&f.h, &[1, 2]);
        let report = verify_root_ideal(&f.h, &broken);
        let witness = report.bracket_closed.clone().expect("[e, f] = h escapes");
        assert!(!broken.total.contains(&witness));
        assert!(!report.passed());
    }

    #[test]
    fn abelian_line_has_no_ideals() {
        let f = corpus("E2");
        assert!(f.roots.is_empty() && f.weights.is_empty());
        let a = assemble_l(&f.h, &f.d, &f.roots);
        assert_eq!(a.complement, f.d.h);
        assert!(a.reconstructs);
        let b = assemble_a(&f.h, &f.d, &f.weights);
        assert!(b.complement.is_full() && b.reconstructs);
    }

    #[test]
    fn composites_are_orthogonal() {
        let (e1, e3) = (build("E1").unwrap(), build("E3").unwrap());
        let (h, cartan) = direct_sum(&e1.data, &e1.h, &e3.data, &e3.h).unwrap();
        let f = fixture(h, &cartan);
        assert_eq!(f.roots.len(), 2);
        let o = orthogonality(&f.h, &f.roots);
        assert_eq!(o.products.len(), 1);
        assert!(o.passed());

        let f = corpus("P1");
        assert_eq!(f.weights.len(), 3);
        assert!(weight_orthogonality(&f.h, &f.weights).passed());
        assert!(assemble_a(&f.h, &f.d, &f.weights).reconstructs);
    }
}
