use super::field::{Field, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A linear subspace of `field^ambient`, stored by its reduced echelon basis
/// so that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, ambient, 0) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// The span of the columns of `gens`.
    pub fn span(gens: &Matrix) -> Subspace {
        let (r, pivots) = gens.transpose().rref();
        let basis = r.submatrix(0..pivots.len(), 0..gens.rows()).transpose();
        Subspace { ambient: gens.rows(), basis }
    }

    pub fn span_vectors(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        Subspace::span(&Matrix::from_columns(field, ambient, vectors))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Columns form a basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        self.basis.solve(v).is_some()
    }

    pub fn try_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    pub fn try_intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient));
        }
        let system = self.basis.hstack(&-&other.basis);
        let k = system.kernel();
        let coeffs = k.submatrix(0..self.dim(), 0..k.cols());
        Ok(Subspace::span(&(&self.basis * &coeffs)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.try_sum(other).expect("subspace sum")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.try_intersection(other).expect("subspace intersection")
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim() <= other.dim() && other.sum(self).dim() == other.dim()
    }

    /// `dim(self / (self ∩ other))`.
    pub fn quotient_dim(&self, other: &Subspace) -> usize {
        self.dim() - self.intersection(other).dim()
    }

    /// Image under a linear map whose source is the ambient space.
    pub fn image(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        Subspace::span(&(map * &self.basis))
    }

    /// Projection onto a contiguous block of coordinates.
    pub fn project(&self, coords: std::ops::Range<usize>) -> Subspace {
        Subspace::span(&self.basis.submatrix(coords, 0..self.dim()))
    }

    /// The subspace `{x : (x, 0) ∈ self}` for a split `ambient = a + b`,
    /// returned in the first factor.
    pub fn slice_first(&self, a: usize) -> Subspace {
        let b = self.ambient - a;
        let top = self.basis.submatrix(0..a, 0..self.dim());
        let bottom = self.basis.submatrix(a..a + b, 0..self.dim());
        let k = bottom.kernel();
        Subspace::span(&(&top * &k))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.basis.solve(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: Field, n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()
    }

    #[test]
    fn equal_subspaces_sum_and_meet_to_themselves() {
        let f = Field::Prime(5);
        let a = Subspace::span_vectors(f, 3, &[e(f, 3, 0), e(f, 3, 1)]);
        assert_eq!(a.sum(&a), a);
        assert_eq!(a.intersection(&a), a);
    }

    #[test]
    fn two_lines_in_the_plane() {
        let f = Field::Prime(5);
        let a = Subspace::span_vectors(f, 2, &[vec![f.one(), f.one()]]);
        let b = Subspace::span_vectors(f, 2, &[vec![f.one(), f.from_i64(2)]]);
        assert_eq!(a.sum(&b).dim(), 2);
        assert_eq!(a.intersection(&b).dim(), 0);
    }

    #[test]
    fn coordinate_planes_meet_in_a_line() {
        let f = Field::Rational;
        let a = Subspace::span_vectors(f, 3, &[e(f, 3, 0), e(f, 3, 1)]);
        let b = Subspace::span_vectors(f, 3, &[e(f, 3, 1), e(f, 3, 2)]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span_vectors(f, 3, &[e(f, 3, 1)]));
    }

    #[test]
    fn spans_are_canonical() {
        let f = Field::Rational;
        let a = Subspace::span_vectors(f, 2, &[vec![f.from_i64(2), f.from_i64(4)]]);
        let b = Subspace::span_vectors(f, 2, &[vec![f.from_i64(-1), f.from_i64(-2)]]);
        assert_eq!(a, b);
    }
}
