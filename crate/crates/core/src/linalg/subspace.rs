use serde::Serialize;

use super::{Field, LinalgError, Matrix, Scalar};

/// A subspace of `k^n` stored by its reduced row-echelon basis.
///
/// The basis is canonical, so two subspaces are equal as sets exactly when the
/// derived `PartialEq` says so.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    #[serde(skip)]
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Self { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Self::span(field, ambient_dim, (0..ambient_dim).map(|i| unit(field, ambient_dim, i)))
    }

    /// Span of arbitrary vectors of length `ambient_dim`.
    pub fn span<I>(field: Field, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient_dim, "vector length"))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if rows.is_empty() {
            return Self::zero(field, ambient_dim);
        }
        let m = Matrix::from_rows(field, rows).expect("uniform rows");
        let (r, pivots) = m.rref_with_pivots();
        Self { field, ambient_dim, basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect()
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(())
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        // RREF basis: the coordinate on row i is the entry of v at pivot i.
        let coords: Vec<Scalar> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                *r = &*r - &(c * b);
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        Ok(Self::span(self.field, self.ambient_dim, self.basis.iter().chain(&other.basis).cloned()))
    }

    /// Sum of a family of subspaces sharing `ambient_dim`.
    pub fn sum_all<'a, I>(field: Field, ambient_dim: usize, parts: I) -> Result<Subspace, LinalgError>
    where
        I: IntoIterator<Item = &'a Subspace>,
    {
        let mut vectors = Vec::new();
        for p in parts {
            if p.ambient_dim != ambient_dim {
                return Err(LinalgError::DimensionMismatch { expected: ambient_dim, found: p.ambient_dim });
            }
            vectors.extend(p.basis.iter().cloned());
        }
        Ok(Self::span(field, ambient_dim, vectors))
    }

    /// `{x : <x, s> = 0 for every s in self}` with the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.field, self.ambient_dim);
        }
        Matrix::from_rows(self.field, self.basis.clone()).expect("uniform rows").kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// A complement of `self` inside `ambient`, chosen greedily from the basis of
    /// `ambient` (lowest index first).
    pub fn complement_in(&self, ambient: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(ambient)?;
        if !ambient.contains_space(self) {
            return Err(LinalgError::NotContained);
        }
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for v in &ambient.basis {
            if acc.dim() == ambient.dim() {
                break;
            }
            if !acc.contains(v) {
                acc = acc.sum(&Self::span(self.field, self.ambient_dim, [v.clone()]))?;
                chosen.push(v.clone());
            }
        }
        Ok(Self::span(self.field, self.ambient_dim, chosen))
    }

    /// Image of this subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim, "map domain");
        Self::span(self.field, m.rows(), self.basis.iter().map(|v| m.apply(v)))
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(self.field, 0, self.ambient_dim);
        }
        Matrix::from_rows(self.field, self.basis.clone()).expect("uniform rows")
    }
}

/// The standard basis vector `e_i` of `k^n`.
pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn e(i: usize) -> Vec<Scalar> {
        unit(Q, 3, i)
    }

    fn sp(vs: &[Vec<Scalar>]) -> Subspace {
        Subspace::span(Q, 3, vs.iter().cloned())
    }

    #[test]
    fn sum_and_intersection() {
        assert_eq!(sp(&[e(0)]).sum(&sp(&[e(1)])).unwrap(), sp(&[e(0), e(1)]));
        assert_eq!(sp(&[e(0), e(1)]).intersect(&sp(&[e(1), e(2)])).unwrap(), sp(&[e(1)]));
        assert!(sp(&[e(0)]).sum(&Subspace::zero(Q, 2)).is_err());
    }

    #[test]
    fn complement_is_direct() {
        let s = sp(&[vec![Q.one(), Q.one(), Q.zero()]]);
        let full = Subspace::full(Q, 3);
        let c = s.complement_in(&full).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(s.sum(&c).unwrap().is_full());
        assert!(s.intersect(&c).unwrap().is_zero());
        // greedy from e1: e1 is outside s, then e2 is already in s + <e1>
        assert_eq!(c, sp(&[e(0), e(2)]));
    }

    #[test]
    fn complement_requires_containment() {
        assert_eq!(sp(&[e(0)]).complement_in(&sp(&[e(1)])), Err(LinalgError::NotContained));
    }

    #[test]
    fn coordinates_reconstruct() {
        let s = sp(&[vec![Q.one(), Q.from_i64(2), Q.zero()], e(2)]);
        let v = vec![Q.from_i64(3), Q.from_i64(6), Q.from_i64(-1)];
        assert_eq!(s.coordinates(&v).unwrap(), vec![Q.from_i64(3), Q.from_i64(-1)]);
        assert!(s.coordinates(&e(1)).is_none());
    }
}
