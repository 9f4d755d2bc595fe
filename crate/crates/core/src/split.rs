//! Root and weight space decompositions relative to a splitting Cartan subalgebra.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hlr::{action_span, anchor_span, bracket_span, product_span, HlrData};
use crate::linalg::{simultaneous_eigenspaces, Field, LinalgError, Matrix, Scalar, Subspace};

/// A linear functional on `H`, stored by its values on the basis of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RootFunctional(pub Vec<Scalar>);

impl RootFunctional {
    pub fn zero(field: Field, rank: usize) -> Self {
        Self(vec![field.zero(); rank])
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|v| -v).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for RootFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A root space `L_γ` or weight space `A_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub functional: RootFunctional,
    pub space: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub h: Subspace,
    /// Column `j` holds the coordinates of `ψ(h_j)` in the basis of `H`.
    pub psi_h: Matrix,
    pub roots: Vec<Component>,
    pub weights: Vec<Component>,
    pub a0: Subspace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    L,
    A,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::A => "A",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    /// `[L_γ, L_ξ] ⊆ L_{γψ⁻¹+ξψ⁻¹}`
    Bracket,
    /// `A_α A_β ⊆ A_{α+β}`
    AlgebraProduct,
    /// `A_α L_γ ⊆ L_{α+γ}`
    Action,
    /// `ρ(L_γ)(A_α) ⊆ A_{α+γ}`
    Anchor,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("H is not a subspace of L (ambient {found}, expected {expected})")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("H is not a maximal abelian subalgebra")]
    NotMasa,
    #[error("the twist of L is not invertible")]
    PsiNotInvertible,
    #[error("the twist of A is not invertible")]
    PhiNotInvertible,
    #[error("the twist of L does not map H onto H")]
    PsiNotInvariant,
    #[error("not split over the base field: {side} eigenspaces cover {covered} of {dim} dimensions")]
    NotSplit { side: Side, covered: usize, dim: usize },
    #[error("zero root space has dimension {zero_dim}, H has dimension {h_dim}")]
    CartanMismatch { zero_dim: usize, h_dim: usize },
    #[error("weight space {0} is not stable under the twist of A")]
    PhiNotInvariant(RootFunctional),
    #[error("grading violated: {kind:?} of {left} and {right} escapes component {target}")]
    GradingViolation { kind: ProductKind, left: RootFunctional, right: RootFunctional, target: RootFunctional },
    #[error(transparent)]
    Linalg(LinalgError),
}

impl Decomposition {
    pub fn field(&self) -> Field {
        self.h.field()
    }

    /// Dimension of `H`.
    pub fn rank(&self) -> usize {
        self.h.dim()
    }

    pub fn zero_functional(&self) -> RootFunctional {
        RootFunctional::zero(self.field(), self.rank())
    }

    pub fn root_functionals(&self) -> Vec<RootFunctional> {
        self.roots.iter().map(|c| c.functional.clone()).collect()
    }

    pub fn weight_functionals(&self) -> Vec<RootFunctional> {
        self.weights.iter().map(|c| c.functional.clone()).collect()
    }

    pub fn is_root(&self, f: &RootFunctional) -> bool {
        self.roots.iter().any(|c| &c.functional == f)
    }

    pub fn is_weight(&self, f: &RootFunctional) -> bool {
        self.weights.iter().any(|c| &c.functional == f)
    }

    pub fn root_space(&self, f: &RootFunctional) -> Option<&Subspace> {
        self.roots.iter().find(|c| &c.functional == f).map(|c| &c.space)
    }

    pub fn weight_space(&self, f: &RootFunctional) -> Option<&Subspace> {
        self.weights.iter().find(|c| &c.functional == f).map(|c| &c.space)
    }

    /// `L_f`, where `L_0 = H` and `L_f = 0` for non-roots.
    pub fn l_component(&self, f: &RootFunctional) -> Subspace {
        if f.is_zero() {
            return self.h.clone();
        }
        self.root_space(f).cloned().unwrap_or_else(|| Subspace::zero(self.field(), self.h.ambient_dim()))
    }

    /// `A_f`, where `A_0` is the zero-weight space and `A_f = 0` for non-weights.
    pub fn a_component(&self, f: &RootFunctional) -> Subspace {
        if f.is_zero() {
            return self.a0.clone();
        }
        self.weight_space(f).cloned().unwrap_or_else(|| Subspace::zero(self.field(), self.a0.ambient_dim()))
    }

    /// `γψ^z`, the functional `h ↦ γ(ψ^z(h))`.
    pub fn psi_shift(&self, f: &RootFunctional, z: i64) -> RootFunctional {
        let p = self.psi_h.pow(z).expect("twist restricted to H is invertible");
        RootFunctional(p.transpose().apply(&f.0))
    }

    /// `L_0 ⊕ ⊕ L_γ` with their functionals, zero component first.
    pub fn l_components(&self) -> Vec<(RootFunctional, &Subspace)> {
        std::iter::once((self.zero_functional(), &self.h))
            .chain(self.roots.iter().map(|c| (c.functional.clone(), &c.space)))
            .collect()
    }

    /// `A_0 ⊕ ⊕ A_α` with their functionals, zero component first.
    pub fn a_components(&self) -> Vec<(RootFunctional, &Subspace)> {
        std::iter::once((self.zero_functional(), &self.a0))
            .chain(self.weights.iter().map(|c| (c.functional.clone(), &c.space)))
            .collect()
    }
}

fn centralizer(h: &HlrData, cartan: &Subspace) -> Subspace {
    let n = h.dim();
    let rows: Vec<Vec<Scalar>> = cartan.basis().iter().flat_map(|v| h.ad(v).row_vecs()).collect();
    if rows.is_empty() {
        return Subspace::full(h.field(), n);
    }
    Matrix::from_rows(h.field(), rows).expect("uniform rows").kernel()
}

/// `[H, H] = 0` and `H` is its own centralizer.
pub fn verify_masa(h: &HlrData, cartan: &Subspace) -> bool {
    cartan.ambient_dim() == h.dim() && bracket_span(h, cartan, cartan).is_zero() && centralizer(h, cartan) == *cartan
}

fn eigen_parts(
    h: &HlrData,
    side: Side,
    dim: usize,
    ops: &[Matrix],
) -> Result<Vec<crate::linalg::JointEigenspace>, SplitError> {
    simultaneous_eigenspaces(h.field(), dim, ops).map_err(|e| match e {
        LinalgError::NotDiagonalizable { covered, dim } => SplitError::NotSplit { side, covered, dim },
        other => SplitError::Linalg(other),
    })
}

/// Root spaces are the joint eigenspaces of `ψ⁻¹∘ad_h`, weight spaces those
/// of `φ⁻¹∘ρ(h)`, over the basis vectors `h` of `H`.
pub fn split(h: &HlrData, cartan: &Subspace) -> Result<Decomposition, SplitError> {
    let field = h.field();
    let n = h.dim();
    let m = h.a.dim();
    if cartan.ambient_dim() != n {
        return Err(SplitError::AmbientMismatch { expected: n, found: cartan.ambient_dim() });
    }
    if !verify_masa(h, cartan) {
        return Err(SplitError::NotMasa);
    }
    let psi_inv = h.psi.inverse().ok_or(SplitError::PsiNotInvertible)?;
    let phi_inv = h.a.phi.inverse().ok_or(SplitError::PhiNotInvertible)?;
    let mut psi_cols = Vec::with_capacity(cartan.dim());
    for v in cartan.basis() {
        psi_cols.push(cartan.coordinates(&h.psi.apply(v)).ok_or(SplitError::PsiNotInvariant)?);
    }
    let psi_h = Matrix::from_columns(field, cartan.dim(), &psi_cols);

    let l_ops: Vec<Matrix> = cartan.basis().iter().map(|v| psi_inv.mul(&h.ad(v))).collect();
    let a_ops: Vec<Matrix> = cartan.basis().iter().map(|v| phi_inv.mul(&h.rho(v))).collect();
    let mut roots = Vec::new();
    let mut l0 = Subspace::zero(field, n);
    for part in eigen_parts(h, Side::L, n, &l_ops)? {
        let f = RootFunctional(part.values);
        if f.is_zero() {
            l0 = part.space;
        } else {
            roots.push(Component { functional: f, space: part.space });
        }
    }
    if l0 != *cartan {
        return Err(SplitError::CartanMismatch { zero_dim: l0.dim(), h_dim: cartan.dim() });
    }
    let mut weights = Vec::new();
    let mut a0 = Subspace::zero(field, m);
    for part in eigen_parts(h, Side::A, m, &a_ops)? {
        let f = RootFunctional(part.values);
        if f.is_zero() {
            a0 = part.space;
        } else {
            if !part.space.contains_space(&part.space.map(&h.a.phi)) {
                return Err(SplitError::PhiNotInvariant(f));
            }
            weights.push(Component { functional: f, space: part.space });
        }
    }
    Ok(Decomposition { h: cartan.clone(), psi_h, roots, weights, a0 })
}

/// A nonzero product between two components and the component it lands in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedProduct {
    pub kind: ProductKind,
    pub left: RootFunctional,
    pub right: RootFunctional,
    pub target: RootFunctional,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub pairs_checked: usize,
    pub nonzero_products: Vec<GradedProduct>,
}

/// Checks every product law between components, the zero components included.
pub fn check_grading(h: &HlrData, d: &Decomposition) -> Result<GradingReport, SplitError> {
    let ls = d.l_components();
    let as_ = d.a_components();
    let mut report = GradingReport { pairs_checked: 0, nonzero_products: Vec::new() };
    let mut record = |kind: ProductKind,
                      left: &RootFunctional,
                      right: &RootFunctional,
                      target: RootFunctional,
                      span: Subspace,
                      allowed: Subspace|
     -> Result<(), SplitError> {
        report.pairs_checked += 1;
        if !allowed.contains_space(&span) {
            return Err(SplitError::GradingViolation { kind, left: left.clone(), right: right.clone(), target });
        }
        if !span.is_zero() {
            report.nonzero_products.push(GradedProduct {
                kind,
                left: left.clone(),
                right: right.clone(),
                target,
                dim: span.dim(),
            });
        }
        Ok(())
    };
    for (g, lg) in &ls {
        for (x, lx) in &ls {
            let target = d.psi_shift(g, -1).add(&d.psi_shift(x, -1));
            let allowed = d.l_component(&target);
            record(ProductKind::Bracket, g, x, target, bracket_span(h, lg, lx), allowed)?;
        }
    }
    for (a, aa) in &as_ {
        for (b, ab) in &as_ {
            let target = a.add(b);
            let allowed = d.a_component(&target);
            record(ProductKind::AlgebraProduct, a, b, target, product_span(&h.a, aa, ab), allowed)?;
        }
    }
    for (a, aa) in &as_ {
        for (g, lg) in &ls {
            let target = a.add(g);
            let allowed = d.l_component(&target);
            record(ProductKind::Action, a, g, target, action_span(h, aa, lg), allowed)?;
        }
    }
    for (g, lg) in &ls {
        for (a, aa) in &as_ {
            let target = a.add(g);
            let allowed = d.a_component(&target);
            record(ProductKind::Anchor, g, a, target, anchor_span(h, lg, aa), allowed)?;
        }
    }
    Ok(report)
}

/// `ψ(L_γ) ⊆ L_{γψ⁻¹}` and `ψ⁻¹(L_γ) ⊆ L_{γψ}` for one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    pub root: RootFunctional,
    pub forward: bool,
    pub backward: bool,
}

impl ShiftCheck {
    pub fn passed(&self) -> bool {
        self.forward && self.backward
    }
}

/// Runs [`ShiftCheck`] on `H` and every root space.
pub fn check_psi_shift(h: &HlrData, d: &Decomposition) -> Vec<ShiftCheck> {
    let psi_inv = h.psi.inverse().expect("regular algebra");
    d.l_components()
        .into_iter()
        .map(|(g, space)| {
            let forward = d.l_component(&d.psi_shift(&g, -1)).contains_space(&space.map(&h.psi));
            let backward = d.l_component(&d.psi_shift(&g, 1)).contains_space(&space.map(&psi_inv));
            ShiftCheck { root: g, forward, backward }
        })
        .collect()
}

/// `Γ = -Γ` and `Λ = -Λ`.
pub fn check_symmetry(d: &Decomposition) -> bool {
    d.roots.iter().all(|c| d.is_root(&c.functional.neg())) && d.weights.iter().all(|c| d.is_weight(&c.functional.neg()))
}
