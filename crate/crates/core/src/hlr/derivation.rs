//! `φ`-derivations of `A` and the Hom-Lie Rinehart algebra they form.

use super::{AlgebraData, HlrData, HlrError, Tensor3};
use crate::linalg::{vec_add, Matrix, Scalar, Subspace};

/// Checks `D(ab) = φ(a)D(b) + D(a)φ(b)` on all basis pairs.
pub fn is_phi_derivation(a: &AlgebraData, d: &Matrix) -> bool {
    let n = a.dim();
    assert_eq!((d.rows(), d.cols()), (n, n), "derivation shape");
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = d.apply(a.mult.fiber(i, j));
            let rhs = vec_add(&a.mul(&a.phi.column(i), &d.column(j)), &a.mul(&d.column(i), &a.phi.column(j)));
            lhs == rhs
        })
    })
}

/// `Der_φ(A)` as a subspace of `End(A)`, matrices flattened row-major.
///
/// The unknown entry `D[p][q]` sits at position `p·n + q`.
pub fn derivation_space(a: &AlgebraData) -> Subspace {
    let field = a.field;
    let n = a.dim();
    let unknowns = n * n;
    let mut rows = Vec::new();
    for i in 0..n {
        let phi_i = a.phi.column(i);
        for j in 0..n {
            let phi_j = a.phi.column(j);
            let prod = a.mult.fiber(i, j);
            for k in 0..n {
                let mut row = vec![field.zero(); unknowns];
                // D(a_i a_j)_k = Σ_m prod_m D[k][m]
                for (mm, c) in prod.iter().enumerate() {
                    row[k * n + mm] = &row[k * n + mm] + c;
                }
                for p in 0..n {
                    // φ(a_i)·D(a_j) contributes D[p][j]·(φ(a_i)a_p)_k
                    let left = a.mul(&phi_i, &a.basis(p));
                    row[p * n + j] = &row[p * n + j] - &left[k];
                    // D(a_i)·φ(a_j) contributes D[p][i]·(a_p φ(a_j))_k
                    let right = a.mul(&a.basis(p), &phi_j);
                    row[p * n + i] = &row[p * n + i] - &right[k];
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::zero(field, unknowns);
    }
    Matrix::from_rows(field, rows).expect("uniform rows").kernel()
}

fn unflatten(a: &AlgebraData, v: &[Scalar]) -> Matrix {
    let n = a.dim();
    Matrix::from_rows(a.field, v.chunks(n.max(1)).map(<[Scalar]>::to_vec).collect()).expect("square chunks")
}

/// `(Der_φ(A), A, [·,·]_φ, φ, ψ_φ, ρ_φ)` on a computed basis of `Der_φ(A)`.
///
/// Bracket `[D1,D2] = φD1φ⁻¹D2φ⁻¹ - φD2φ⁻¹D1φ⁻¹`, twist and anchor
/// `D ↦ φDφ⁻¹`, action `(a·D)(b) = a·D(b)`.
pub fn derivation_hlra(a: &AlgebraData) -> Result<HlrData, HlrError> {
    let field = a.field;
    let m = a.dim();
    let phi_inv = a.phi.inverse().ok_or(HlrError::PhiNotInvertible)?;
    let space = derivation_space(a);
    let basis: Vec<Matrix> = space.basis().iter().map(|v| unflatten(a, v)).collect();
    let n = basis.len();
    let coords = |d: &Matrix, what: &'static str| -> Result<Vec<Scalar>, HlrError> {
        space.coordinates(d.entries()).ok_or(HlrError::NotClosed(what))
    };
    let twist = |d: &Matrix| a.phi.mul(d).mul(&phi_inv);

    let mut bracket = Tensor3::zeros(field, n, n, n);
    for (i, d1) in basis.iter().enumerate() {
        for (j, d2) in basis.iter().enumerate() {
            let t1 = twist(d1).mul(d2).mul(&phi_inv);
            let t2 = twist(d2).mul(d1).mul(&phi_inv);
            for (k, c) in coords(&t1.sub(&t2), "bracket")?.into_iter().enumerate() {
                bracket.set(i, j, k, c);
            }
        }
    }
    let mut psi_cols = Vec::with_capacity(n);
    let mut anchor = Vec::with_capacity(n);
    for d in &basis {
        let t = twist(d);
        psi_cols.push(coords(&t, "twist")?);
        anchor.push(t);
    }
    let psi = Matrix::from_columns(field, n, &psi_cols);
    let mut action = Tensor3::zeros(field, m, n, n);
    for ai in 0..m {
        let left = a.mul_operator(&a.basis(ai));
        for (j, d) in basis.iter().enumerate() {
            for (k, c) in coords(&left.mul(d), "action")?.into_iter().enumerate() {
                action.set(ai, j, k, c);
            }
        }
    }
    let labels = (0..n).map(|i| format!("D{i}")).collect();
    HlrData::new(a.clone(), labels, bracket, psi, action, anchor)
}
