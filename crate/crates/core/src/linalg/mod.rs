//! Exact dense linear algebra over `Q` or `F_p`.

mod eigen;
mod matrix;
mod scalar;
mod subspace;

pub use eigen::{eval_poly, roots_in_field, simultaneous_eigenspaces, JointEigenspace};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar, MAX_PRIME};
pub use subspace::{unit, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("operators {first} and {second} do not commute")]
    NonCommuting { first: usize, second: usize },
    #[error("joint eigenspaces over the base field cover {covered} of {dim} dimensions")]
    NotDiagonalizable { covered: usize, dim: usize },
    #[error("invalid prime modulus {0}")]
    InvalidModulus(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("characteristic polynomial coefficients too large for the rational root search")]
    RootSearchTooLarge,
}

/// `a + b` for equal-length vectors.
pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}
