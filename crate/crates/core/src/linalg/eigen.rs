//! Eigenvalues lying in the base field and joint eigenspaces of commuting operators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Field, LinalgError, Matrix, Scalar, Subspace};

/// Trial-division budget for the rational root search.
const DIVISOR_SEARCH_LIMIT: u128 = 1 << 26;

/// One joint eigenspace: `op_i · v = values[i] · v` for every `v` in `space`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointEigenspace {
    pub values: Vec<Scalar>,
    pub space: Subspace,
}

/// Horner evaluation; coefficients in increasing degree.
pub fn eval_poly(poly: &[Scalar], x: &Scalar) -> Scalar {
    let field = x.field();
    poly.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c)
}

/// Distinct roots of `poly` lying in the field, in ascending order.
pub fn roots_in_field(field: Field, poly: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
    let mut roots = match field {
        Field::Rational => rational_roots(poly)?,
        Field::Prime { p } => {
            (0..p).map(|v| field.from_i64(v as i64)).filter(|x| eval_poly(poly, x).is_zero()).collect()
        }
    };
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn rational_roots(poly: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
    let mut coeffs: Vec<BigRational> =
        poly.iter().map(|c| c.as_rational().expect("rational polynomial").clone()).collect();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let mut roots = Vec::new();
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    if coeffs[0].is_zero() {
        roots.push(Field::Rational.zero());
        let first = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero poly");
        coeffs.drain(..first);
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let denom_lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> =
        coeffs.iter().map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer()).collect();
    let low = divisors(&ints[0])?;
    let high = divisors(ints.last().expect("nonempty"))?;
    let scalars: Vec<Scalar> = coeffs.into_iter().map(Scalar::Rational).collect();
    for p in &low {
        for q in &high {
            for sign in [1i32, -1] {
                let cand = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                let x = Scalar::Rational(cand);
                if eval_poly(&scalars, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<u128>, LinalgError> {
    let n = n.abs().to_u128().ok_or(LinalgError::RootSearchTooLarge)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if d > DIVISOR_SEARCH_LIMIT {
            return Err(LinalgError::RootSearchTooLarge);
        }
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Joint eigenspaces of pairwise commuting `dim × dim` operators, restricted to
/// eigenvalues in the base field.
///
/// Spaces are returned ordered by the pivot of their first canonical basis
/// vector. Fails with `NotDiagonalizable` when they do not exhaust `k^dim`.
pub fn simultaneous_eigenspaces(field: Field, dim: usize, ops: &[Matrix]) -> Result<Vec<JointEigenspace>, LinalgError> {
    for op in ops {
        if op.rows() != dim || op.cols() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: if op.rows() != dim { op.rows() } else { op.cols() },
            });
        }
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutes_with(&ops[j]) {
                return Err(LinalgError::NonCommuting { first: i, second: j });
            }
        }
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut parts = vec![JointEigenspace { values: Vec::new(), space: Subspace::full(field, dim) }];
    for op in ops {
        let roots = roots_in_field(field, &op.char_poly())?;
        let eigenspaces: Vec<(Scalar, Subspace)> = roots
            .into_iter()
            .map(|r| {
                let k = op.shift(&r).kernel();
                (r, k)
            })
            .collect();
        let mut next = Vec::new();
        for part in &parts {
            for (r, k) in &eigenspaces {
                let joint = part.space.intersect(k)?;
                if !joint.is_zero() {
                    let mut values = part.values.clone();
                    values.push(r.clone());
                    next.push(JointEigenspace { values, space: joint });
                }
            }
        }
        parts = next;
    }
    let covered: usize = parts.iter().map(|p| p.space.dim()).sum();
    if covered != dim {
        return Err(LinalgError::NotDiagonalizable { covered, dim });
    }
    parts.sort_by_key(|p| p.space.pivots()[0]);
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;

    const Q: Field = Field::Rational;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn diagonal_single_operator() {
        let d = Matrix::diagonal(Q, &ints(&[2, -2]));
        let parts = simultaneous_eigenspaces(Q, 2, &[d]).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].values, ints(&[2]));
        assert_eq!(parts[0].space, Subspace::span(Q, 2, [unit(Q, 2, 0)]));
        assert_eq!(parts[1].values, ints(&[-2]));
        assert_eq!(parts[1].space, Subspace::span(Q, 2, [unit(Q, 2, 1)]));
    }

    #[test]
    fn identity_is_one_space() {
        let parts = simultaneous_eigenspaces(Q, 3, &[Matrix::identity(Q, 3)]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].values, ints(&[1]));
        assert!(parts[0].space.is_full());
    }

    #[test]
    fn two_diagonal_operators() {
        let a = Matrix::diagonal(Q, &ints(&[1, 1, 2]));
        let b = Matrix::diagonal(Q, &ints(&[0, 3, 0]));
        let parts = simultaneous_eigenspaces(Q, 3, &[a.clone(), b.clone()]).unwrap();
        let expected = [(ints(&[1, 0]), 0), (ints(&[1, 3]), 1), (ints(&[2, 0]), 2)];
        assert_eq!(parts.len(), 3);
        for (part, (vals, idx)) in parts.iter().zip(expected) {
            assert_eq!(part.values, vals);
            assert_eq!(part.space, Subspace::span(Q, 3, [unit(Q, 3, idx)]));
            for v in part.space.basis() {
                for (op, val) in [&a, &b].iter().zip(&part.values) {
                    let lhs = op.apply(v);
                    let rhs: Vec<Scalar> = v.iter().map(|x| x * val).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rotation_is_not_diagonalizable_over_q() {
        let r = Matrix::from_i64(Q, &[&[0, -1], &[1, 0]]);
        assert_eq!(
            simultaneous_eigenspaces(Q, 2, std::slice::from_ref(&r)),
            Err(LinalgError::NotDiagonalizable { covered: 0, dim: 2 })
        );
        // -1 is a square mod 5
        let f5 = Field::prime(5).unwrap();
        let r5 = Matrix::from_i64(f5, &[&[0, -1], &[1, 0]]);
        assert_eq!(simultaneous_eigenspaces(f5, 2, &[r5]).unwrap().len(), 2);
    }

    #[test]
    fn nilpotent_is_not_diagonalizable() {
        let n = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        assert!(matches!(
            simultaneous_eigenspaces(Q, 2, &[n]),
            Err(LinalgError::NotDiagonalizable { covered: 1, dim: 2 })
        ));
    }

    #[test]
    fn non_commuting_rejected() {
        let a = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]);
        let b = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(simultaneous_eigenspaces(Q, 2, &[a, b]), Err(LinalgError::NonCommuting { first: 0, second: 1 }));
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2x - 1)(x + 3) x = 2x^3 + 5x^2 - 3x
        let poly = ints(&[0, -3, 5, 2]);
        let roots = roots_in_field(Q, &poly).unwrap();
        assert_eq!(roots, vec![Q.from_i64(-3), Q.zero(), Q.ratio(1, 2).unwrap()]);
    }
}
