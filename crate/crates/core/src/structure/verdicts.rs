//! Tightness, multiplicativity, maximal length, pairing and simple components.

use serde::Serialize;
use thiserror::Error;

use super::{RootIdeal, WeightIdeal};
use crate::hlr::{
    action_span, anchor_span, bracket_span, center_a, center_l, is_ideal, product_span, simplicity_within, HlrData,
    SimplicityVerdict,
};
use crate::linalg::Subspace;
use crate::split::{check_symmetry, Decomposition, ProductKind, RootFunctional, Side};

/// The six tightness conditions with the two displayed sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessVerdict {
    pub tight: bool,
    pub center_l_zero: bool,
    pub center_a_zero: bool,
    pub algebra_square_full: bool,
    pub action_full: bool,
    /// `H = Σ A_{-γ}L_γ + Σ [L_{-γ}, L_γ]`
    pub cartan_exhausted: bool,
    /// `A_0 = Σ ρ(L_{-α})(A_α) + Σ A_{-α}A_α`
    pub zero_weight_exhausted: bool,
    pub cartan_sum: Subspace,
    pub zero_weight_sum: Subspace,
    pub failures: Vec<&'static str>,
}

/// `Σ_{γ∈Γ, -γ∈Λ} A_{-γ}L_γ + Σ_{γ∈Γ} [L_{-γ}, L_γ]`.
pub fn cartan_sum(h: &HlrData, d: &Decomposition) -> Subspace {
    let parts: Vec<Subspace> = d
        .roots
        .iter()
        .flat_map(|c| {
            let neg = c.functional.neg();
            let mut v = Vec::new();
            if let Some(a) = d.weight_space(&neg) {
                v.push(action_span(h, a, &c.space));
            }
            if let Some(l) = d.root_space(&neg) {
                v.push(bracket_span(h, l, &c.space));
            }
            v
        })
        .collect();
    Subspace::sum_all(h.field(), h.dim(), &parts).expect("ambient L")
}

/// `Σ_{α∈Λ, -α∈Γ} ρ(L_{-α})(A_α) + Σ_{α∈Λ} A_{-α}A_α`.
pub fn zero_weight_sum(h: &HlrData, d: &Decomposition) -> Subspace {
    let parts: Vec<Subspace> = d
        .weights
        .iter()
        .flat_map(|c| {
            let neg = c.functional.neg();
            let mut v = Vec::new();
            if let Some(l) = d.root_space(&neg) {
                v.push(anchor_span(h, l, &c.space));
            }
            if let Some(a) = d.weight_space(&neg) {
                v.push(product_span(&h.a, a, &c.space));
            }
            v
        })
        .collect();
    Subspace::sum_all(h.field(), h.a.dim(), &parts).expect("ambient A")
}

pub fn is_tight(h: &HlrData, d: &Decomposition) -> TightnessVerdict {
    let field = h.field();
    let full_a = Subspace::full(field, h.a.dim());
    let full_l = Subspace::full(field, h.dim());
    let cartan = cartan_sum(h, d);
    let zero_weight = zero_weight_sum(h, d);
    let checks = [
        ("center_l_zero", center_l(h).is_zero()),
        ("center_a_zero", center_a(h).is_zero()),
        ("algebra_square_full", product_span(&h.a, &full_a, &full_a) == full_a),
        ("action_full", action_span(h, &full_a, &full_l) == full_l),
        ("cartan_exhausted", cartan == d.h),
        ("zero_weight_exhausted", zero_weight == d.a0),
    ];
    let failures: Vec<&'static str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    TightnessVerdict {
        tight: failures.is_empty(),
        center_l_zero: checks[0].1,
        center_a_zero: checks[1].1,
        algebra_square_full: checks[2].1,
        action_full: checks[3].1,
        cartan_exhausted: checks[4].1,
        zero_weight_exhausted: checks[5].1,
        cartan_sum: cartan,
        zero_weight_sum: zero_weight,
        failures,
    }
}

/// A product predicted to be nonzero that vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingProduct {
    pub kind: ProductKind,
    pub left: RootFunctional,
    pub right: RootFunctional,
    pub target: RootFunctional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativityVerdict {
    pub holds: bool,
    /// Implications whose hypothesis held.
    pub applicable: usize,
    pub failures: Vec<VanishingProduct>,
}

/// `[L_γ, L_δ] ≠ 0` when `γψ⁻¹+δψ⁻¹ ∈ Γ`, `A_α L_γ ≠ 0` when `α+γ ∈ Γ`, and
/// `A_α A_β ≠ 0` when `α+β ∈ Λ`.
pub fn is_root_multiplicative(h: &HlrData, d: &Decomposition) -> MultiplicativityVerdict {
    let mut applicable = 0;
    let mut failures = Vec::new();
    let mut check = |kind, left: &RootFunctional, right: &RootFunctional, target: RootFunctional, span: Subspace| {
        applicable += 1;
        if span.is_zero() {
            failures.push(VanishingProduct { kind, left: left.clone(), right: right.clone(), target });
        }
    };
    for g in &d.roots {
        for x in &d.roots {
            let target = d.psi_shift(&g.functional, -1).add(&d.psi_shift(&x.functional, -1));
            if d.is_root(&target) {
                check(ProductKind::Bracket, &g.functional, &x.functional, target, bracket_span(h, &g.space, &x.space));
            }
        }
    }
    for a in &d.weights {
        for g in &d.roots {
            let target = a.functional.add(&g.functional);
            if d.is_root(&target) {
                check(ProductKind::Action, &a.functional, &g.functional, target, action_span(h, &a.space, &g.space));
            }
        }
    }
    for a in &d.weights {
        for b in &d.weights {
            let target = a.functional.add(&b.functional);
            if d.is_weight(&target) {
                check(
                    ProductKind::AlgebraProduct,
                    &a.functional,
                    &b.functional,
                    target,
                    product_span(&h.a, &a.space, &b.space),
                );
            }
        }
    }
    MultiplicativityVerdict { holds: failures.is_empty(), applicable, failures }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OversizedSpace {
    pub side: Side,
    pub functional: RootFunctional,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalLengthVerdict {
    pub holds: bool,
    pub oversized: Vec<OversizedSpace>,
}

/// Every root and weight space is one-dimensional.
pub fn is_maximal_length(d: &Decomposition) -> MaximalLengthVerdict {
    let oversized: Vec<OversizedSpace> = d
        .roots
        .iter()
        .map(|c| (Side::L, c))
        .chain(d.weights.iter().map(|c| (Side::A, c)))
        .filter(|(_, c)| c.space.dim() != 1)
        .map(|(side, c)| OversizedSpace { side, functional: c.functional.clone(), dim: c.space.dim() })
        .collect();
    MaximalLengthVerdict { holds: oversized.is_empty(), oversized }
}

/// Which weight ideals act trivially on which root ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingTable {
    /// `annihilates[j][i]` is `𝒜_j · I_i = 0`.
    pub annihilates: Vec<Vec<bool>>,
    pub rows: Vec<PairingRow>,
    /// Each root ideal has exactly one annihilating weight ideal.
    pub unique_annihilator: bool,
    /// Each root ideal has exactly one weight ideal acting on it nontrivially.
    pub unique_partner: bool,
    /// The two uniqueness readings disagree on this instance.
    pub discrepancy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingRow {
    pub root_class: usize,
    pub annihilating: Vec<usize>,
    pub acting: Vec<usize>,
}

pub fn pairing(h: &HlrData, roots: &[RootIdeal], weights: &[WeightIdeal]) -> PairingTable {
    let annihilates: Vec<Vec<bool>> =
        weights.iter().map(|w| roots.iter().map(|r| action_span(h, &w.total, &r.total).is_zero()).collect()).collect();
    let rows: Vec<PairingRow> = (0..roots.len())
        .map(|i| {
            let (annihilating, acting): (Vec<usize>, Vec<usize>) = (0..weights.len()).partition(|&j| annihilates[j][i]);
            PairingRow { root_class: i, annihilating, acting }
        })
        .collect();
    let unique_annihilator = rows.iter().all(|r| r.annihilating.len() == 1);
    let unique_partner = rows.iter().all(|r| r.acting.len() == 1);
    PairingTable {
        annihilates,
        rows,
        unique_annihilator,
        unique_partner,
        discrepancy: unique_annihilator != unique_partner,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("subspace is not an ideal")]
    NotAnIdeal,
}

/// Intersections of an ideal with `H` and with each root space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealWeightSplit {
    pub cartan_part: Subspace,
    pub root_parts: Vec<(RootFunctional, Subspace)>,
    /// The parts sum back to the ideal.
    pub reconstructs: bool,
    /// When `Z(L) = 0` and the ideal lies in `H`: whether it is zero.
    pub inside_cartan_is_zero: Option<bool>,
}

pub fn ideal_weight_split(h: &HlrData, d: &Decomposition, i: &Subspace) -> Result<IdealWeightSplit, StructureError> {
    if !is_ideal(h, i) {
        return Err(StructureError::NotAnIdeal);
    }
    let cartan_part = i.intersect(&d.h).expect("ambient L");
    let root_parts: Vec<(RootFunctional, Subspace)> =
        d.roots.iter().map(|c| (c.functional.clone(), i.intersect(&c.space).expect("ambient L"))).collect();
    let total =
        Subspace::sum_all(h.field(), h.dim(), std::iter::once(&cartan_part).chain(root_parts.iter().map(|p| &p.1)))
            .expect("ambient L");
    let inside_cartan_is_zero = (center_l(h).is_zero() && d.h.contains_space(i)).then(|| i.is_zero());
    Ok(IdealWeightSplit { cartan_part, reconstructs: total == *i, root_parts, inside_cartan_is_zero })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Tight,
    MaximalLength,
    RootMultiplicative,
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("hypotheses not met: {failed:?}")]
pub struct HypothesisFailure {
    pub failed: Vec<Hypothesis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub space: Subspace,
    pub verdict: SimplicityVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentShape {
    /// `L` itself is simple.
    Simple,
    /// `L = I ⊕ I'` for a single connection class.
    Pair,
    /// One summand per connection class.
    PerClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleComponents {
    pub shape: ComponentShape,
    pub l_summands: Vec<Summand>,
    pub a_summands: Vec<Subspace>,
    /// The `L`-summands are independent and span `L`.
    pub l_direct: bool,
    /// The `A`-summands are independent and span `A`.
    pub a_direct: bool,
    pub cross_brackets_zero: bool,
    pub cross_products_zero: bool,
    /// For each `L`-summand, the `A`-summands acting on it nontrivially.
    pub partners: Vec<Vec<usize>>,
    /// `H` equals the sum of `A_{-γ}L_γ` and `[L_{-γ}, L_γ]`.
    pub cartan_exhausted: bool,
}

impl SimpleComponents {
    /// Every summand is certified simple and the decomposition is direct.
    pub fn certified(&self) -> bool {
        self.l_direct
            && self.a_direct
            && self.cross_brackets_zero
            && self.cross_products_zero
            && self.l_summands.iter().all(|s| s.verdict.simple && s.verdict.seed_complete)
    }
}

fn independent_and_spanning(spaces: &[&Subspace], ambient: &Subspace) -> bool {
    let total = Subspace::sum_all(ambient.field(), ambient.ambient_dim(), spaces.iter().copied()).expect("ambient");
    let dims: usize = spaces.iter().map(|s| s.dim()).sum();
    total == *ambient && dims == total.dim()
}

/// `Σ_{γ∈Γ_I∩Λ} A_γ L_{-γ} ⊕ ⊕_{γ∈Γ_I} L_{-γ}`, where `Γ_I` holds the roots
/// whose spaces meet `i`.
fn opposite_ideal(h: &HlrData, d: &Decomposition, i: &Subspace) -> Subspace {
    let met: Vec<RootFunctional> = d
        .roots
        .iter()
        .filter(|c| !c.space.intersect(i).expect("ambient L").is_zero())
        .map(|c| c.functional.clone())
        .collect();
    let mut parts = Vec::new();
    for g in &met {
        let neg = g.neg();
        if let Some(l_neg) = d.root_space(&neg) {
            if let Some(a) = d.weight_space(g) {
                parts.push(action_span(h, a, l_neg));
            }
            parts.push(l_neg.clone());
        }
    }
    Subspace::sum_all(h.field(), h.dim(), &parts).expect("ambient L")
}

/// Decomposes `L` and `A` into simple summands when the structure hypotheses hold.
pub fn simple_components(
    h: &HlrData,
    d: &Decomposition,
    roots: &[RootIdeal],
    weights: &[WeightIdeal],
) -> Result<SimpleComponents, HypothesisFailure> {
    let mut failed = Vec::new();
    if !super::is_tight(h, d).tight {
        failed.push(Hypothesis::Tight);
    }
    if !is_maximal_length(d).holds {
        failed.push(Hypothesis::MaximalLength);
    }
    if !is_root_multiplicative(h, d).holds {
        failed.push(Hypothesis::RootMultiplicative);
    }
    if !check_symmetry(d) {
        failed.push(Hypothesis::Symmetric);
    }
    if !failed.is_empty() {
        return Err(HypothesisFailure { failed });
    }
    let field = h.field();
    let full_l = Subspace::full(field, h.dim());
    let full_a = Subspace::full(field, h.a.dim());
    let (shape, l_spaces) = if roots.len() <= 1 {
        let verdict = simplicity_within(h, d, &full_l);
        match &verdict.proper_ideal {
            None => (ComponentShape::Simple, vec![full_l.clone()]),
            Some(i) => {
                let other = opposite_ideal(h, d, i);
                (ComponentShape::Pair, vec![i.clone(), other])
            }
        }
    } else {
        (ComponentShape::PerClass, roots.iter().map(|r| r.total.clone()).collect())
    };
    let l_summands: Vec<Summand> =
        l_spaces.iter().map(|s| Summand { space: s.clone(), verdict: simplicity_within(h, d, s) }).collect();
    let a_summands: Vec<Subspace> = weights.iter().map(|w| w.total.clone()).collect();
    let l_refs: Vec<&Subspace> = l_spaces.iter().collect();
    let a_refs: Vec<&Subspace> = a_summands.iter().collect();
    let pairs = |n: usize| (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
    let cross_brackets_zero = pairs(l_spaces.len()).all(|(i, j)| bracket_span(h, &l_spaces[i], &l_spaces[j]).is_zero());
    let cross_products_zero =
        pairs(a_summands.len()).all(|(i, j)| product_span(&h.a, &a_summands[i], &a_summands[j]).is_zero());
    let partners = l_spaces
        .iter()
        .map(|l| (0..a_summands.len()).filter(|&j| !action_span(h, &a_summands[j], l).is_zero()).collect())
        .collect();
    Ok(SimpleComponents {
        shape,
        l_direct: independent_and_spanning(&l_refs, &full_l),
        a_direct: independent_and_spanning(&a_refs, &full_a),
        l_summands,
        a_summands,
        cross_brackets_zero,
        cross_products_zero,
        partners,
        cartan_exhausted: cartan_sum(h, d) == d.h,
    })
}
