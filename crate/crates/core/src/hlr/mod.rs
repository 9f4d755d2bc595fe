//! Hom-Lie Rinehart algebras stored by structure constants.

mod axioms;
mod derivation;
mod ideal;
mod spans;

pub use axioms::{verify_algebra, verify_axioms, Axiom, AxiomCheck, AxiomReport, Counterexample};
pub use derivation::{derivation_hlra, derivation_space, is_phi_derivation};
pub use ideal::{
    center_a, center_l, check_ideal, ideal_closure, is_ideal, is_simple, is_subalgebra, kernel_of_anchor,
    simplicity_within, IdealCheck, SimplicityVerdict,
};
pub use spans::{action_span, anchor_action_span, anchor_span, bracket_span, first_escape, product_span};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{unit, Field, LinalgError, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HlrError {
    #[error("{what}: expected dimension {expected}, found {found}")]
    Shape { what: &'static str, expected: usize, found: usize },
    #[error("not a Hom-Lie algebra: {0:?} fails")]
    InvalidHomLie(Axiom),
    #[error("the algebra twist is not invertible")]
    PhiNotInvertible,
    #[error("derivation space is not closed under {0}")]
    NotClosed(&'static str),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A dense three-index tensor `t[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Tensor3 {
    dims: [usize; 3],
    #[serde(skip)]
    field: Field,
    entries: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(field: Field, d0: usize, d1: usize, d2: usize) -> Self {
        Self { dims: [d0, d1, d2], field, entries: vec![field.zero(); d0 * d1 * d2] }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(i < self.dims[0] && j < self.dims[1] && k < self.dims[2], "tensor index");
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let o = self.offset(i, j, k);
        self.entries[o] = v;
    }

    /// The output vector `t[i][j][·]`.
    pub fn fiber(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j, 0);
        &self.entries[o..o + self.dims[2]]
    }

    /// Bilinear evaluation `Σ x_i y_j t[i][j][·]`.
    pub fn contract(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dims[0], "left operand length");
        assert_eq!(y.len(), self.dims[1], "right operand length");
        let mut out = vec![self.field.zero(); self.dims[2]];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(self.fiber(i, j)) {
                    if !t.is_zero() {
                        *o = &*o + &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// Nonzero entries in lexicographic index order.
    pub fn nonzero(&self) -> impl Iterator<Item = ([usize; 3], &Scalar)> + '_ {
        let [_, d1, d2] = self.dims;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(o, v)| ([o / (d1 * d2), (o / d2) % d1, o % d2], v))
    }

    /// Block sum: entries of `other` are shifted past the dimensions of `self`.
    pub fn block_sum(&self, other: &Tensor3) -> Tensor3 {
        let [a0, a1, a2] = self.dims;
        let [b0, b1, b2] = other.dims;
        let mut t = Tensor3::zeros(self.field, a0 + b0, a1 + b1, a2 + b2);
        for ([i, j, k], v) in self.nonzero() {
            t.set(i, j, k, v.clone());
        }
        for ([i, j, k], v) in other.nonzero() {
            t.set(a0 + i, a1 + j, a2 + k, v.clone());
        }
        t
    }

    /// Matrix of `y ↦ t(x, y)`.
    pub fn left_operator(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dims[1]).map(|j| self.contract(x, &unit(self.field, self.dims[1], j))).collect();
        Matrix::from_columns(self.field, self.dims[2], &cols)
    }
}

/// A commutative associative algebra `A` with a linear twist `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraData {
    pub field: Field,
    pub labels: Vec<String>,
    /// `a_i · a_j = Σ_k mult[i][j][k] a_k`
    pub mult: Tensor3,
    pub phi: Matrix,
}

impl AlgebraData {
    pub fn new(field: Field, labels: Vec<String>, mult: Tensor3, phi: Matrix) -> Result<Self, HlrError> {
        let n = labels.len();
        check_dims("algebra product", mult.dims(), [n, n, n])?;
        check_square("phi", &phi, n)?;
        Ok(Self { field, labels, mult, phi })
    }

    /// The ground field as a one-dimensional algebra with `φ = id`.
    pub fn ground(field: Field) -> Self {
        let mut mult = Tensor3::zeros(field, 1, 1, 1);
        mult.set(0, 0, 0, field.one());
        Self { field, labels: vec!["1".into()], mult, phi: Matrix::identity(field, 1) }
    }

    /// `A₁ × A₂` with componentwise product and twist.
    pub fn direct_sum(&self, other: &AlgebraData) -> Result<AlgebraData, HlrError> {
        if self.field != other.field {
            return Err(HlrError::FieldMismatch);
        }
        AlgebraData::new(
            self.field,
            suffixed(&self.labels, &other.labels),
            self.mult.block_sum(&other.mult),
            self.phi.block_diag(&other.phi),
        )
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mult.contract(a, b)
    }

    /// Multiplication by `a` as a matrix.
    pub fn mul_operator(&self, a: &[Scalar]) -> Matrix {
        self.mult.left_operator(a)
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        unit(self.field, self.dim(), i)
    }
}

/// The full tuple `(A, L, [·,·], φ, ψ, ρ)` together with the `A`-module action on `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HlrData {
    pub a: AlgebraData,
    pub labels: Vec<String>,
    /// `[x_i, x_j] = Σ_k bracket[i][j][k] x_k`
    pub bracket: Tensor3,
    pub psi: Matrix,
    /// `a_i · x_j = Σ_k action[i][j][k] x_k`
    pub action: Tensor3,
    /// `anchor[i]` is `ρ(x_i)` acting on `A`.
    pub anchor: Vec<Matrix>,
}

impl HlrData {
    pub fn new(
        a: AlgebraData,
        labels: Vec<String>,
        bracket: Tensor3,
        psi: Matrix,
        action: Tensor3,
        anchor: Vec<Matrix>,
    ) -> Result<Self, HlrError> {
        let n = labels.len();
        let m = a.dim();
        check_dims("bracket", bracket.dims(), [n, n, n])?;
        check_square("psi", &psi, n)?;
        check_dims("action", action.dims(), [m, n, n])?;
        if anchor.len() != n {
            return Err(HlrError::Shape { what: "anchor count", expected: n, found: anchor.len() });
        }
        for r in &anchor {
            check_square("anchor", r, m)?;
        }
        Ok(Self { a, labels, bracket, psi, action, anchor })
    }

    /// Wraps a Hom-Lie algebra as a Hom-Lie Rinehart algebra over the ground
    /// field: scalar action and zero anchor.
    pub fn from_hom_lie(field: Field, labels: Vec<String>, bracket: Tensor3, psi: Matrix) -> Result<Self, HlrError> {
        let n = labels.len();
        let mut action = Tensor3::zeros(field, 1, n, n);
        for j in 0..n {
            action.set(0, j, j, field.one());
        }
        let anchor = vec![Matrix::zeros(field, 1, 1); n];
        let h = Self::new(AlgebraData::ground(field), labels, bracket, psi, action, anchor)?;
        let report = verify_axioms(&h);
        for axiom in [Axiom::SkewSymmetry, Axiom::HomJacobi, Axiom::PsiMultiplicative, Axiom::PsiInvertible] {
            if !report.get(axiom).is_some_and(AxiomCheck::passed) {
                return Err(HlrError::InvalidHomLie(axiom));
            }
        }
        Ok(h)
    }

    /// `L₁ ⊕ L₂` over `A₁ × A₂`; each factor acts and anchors on its own block only.
    pub fn direct_sum(&self, other: &HlrData) -> Result<HlrData, HlrError> {
        let a = self.a.direct_sum(&other.a)?;
        let field = a.field;
        let (m1, m2) = (self.a.dim(), other.a.dim());
        let anchor = self
            .anchor
            .iter()
            .map(|r| r.block_diag(&Matrix::zeros(field, m2, m2)))
            .chain(other.anchor.iter().map(|r| Matrix::zeros(field, m1, m1).block_diag(r)))
            .collect();
        HlrData::new(
            a,
            suffixed(&self.labels, &other.labels),
            self.bracket.block_sum(&other.bracket),
            self.psi.block_diag(&other.psi),
            self.action.block_sum(&other.action),
            anchor,
        )
    }

    pub fn field(&self) -> Field {
        self.a.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        unit(self.field(), self.dim(), i)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket.contract(x, y)
    }

    /// `a · x` for `a ∈ A`, `x ∈ L`.
    pub fn act(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.action.contract(a, x)
    }

    /// `ρ(x)` as a matrix on `A`.
    pub fn rho(&self, x: &[Scalar]) -> Matrix {
        let m = self.a.dim();
        let mut out = Matrix::zeros(self.field(), m, m);
        for (xi, r) in x.iter().zip(&self.anchor) {
            if !xi.is_zero() {
                out = out.add(&r.scale(xi));
            }
        }
        out
    }

    /// `ad_x = [x, ·]` as a matrix on `L`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        self.bracket.left_operator(x)
    }
}

fn suffixed(left: &[String], right: &[String]) -> Vec<String> {
    let tag = |labels: &[String], n: usize| labels.iter().map(move |l| format!("{l}_{n}")).collect::<Vec<_>>();
    let mut out = tag(left, 1);
    out.extend(tag(right, 2));
    out
}

fn check_dims(what: &'static str, found: [usize; 3], expected: [usize; 3]) -> Result<(), HlrError> {
    for (f, e) in found.iter().zip(expected) {
        if *f != e {
            return Err(HlrError::Shape { what, expected: e, found: *f });
        }
    }
    Ok(())
}

fn check_square(what: &'static str, m: &Matrix, n: usize) -> Result<(), HlrError> {
    if m.rows() != n || m.cols() != n {
        return Err(HlrError::Shape { what, expected: n, found: if m.rows() != n { m.rows() } else { m.cols() } });
    }
    Ok(())
}
