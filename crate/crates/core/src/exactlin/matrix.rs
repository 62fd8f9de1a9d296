use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.field(), field);
                data.push(s);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from row-major integers.
    pub fn from_ints(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix { field, rows, cols, data: entries.iter().map(|&v| field.from_i64(v)).collect() }
    }

    /// Builds a matrix from rows of integers; all rows must have equal length.
    pub fn from_int_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows.iter().flat_map(|r| {
            assert_eq!(r.len(), cols, "ragged rows");
            r.iter().copied()
        }).collect();
        Matrix::from_ints(field, rows.len(), cols, &flat)
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(s) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, s) in c.iter().enumerate() {
                m.data[i * m.cols + j] = s.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        debug_assert_eq!(s.field(), self.field);
        self.data[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension("cannot add matrices of different shapes".into()));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { rhs.get(i, j - self.cols).clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    /// Adds `b` into `self` at `(r0, c0)`.
    pub fn paste_add(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let idx = (r0 + i) * self.cols + c0 + j;
                self.data[idx] = &self.data[idx] + b.get(i, j);
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Reduced row echelon form and pivot columns. Over F_p the first nonzero
    /// entry is the pivot; over Q the entry of smallest bit size.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for i in r..m.rows {
                let e = m.get(i, c);
                if e.is_zero() {
                    continue;
                }
                match (self.field, best) {
                    (_, None) => best = Some(i),
                    (Field::Rational, Some(b)) if e.size() < m.get(b, c).size() => best = Some(i),
                    _ => {}
                }
                if let (Field::Prime(_), Some(_)) = (self.field, best) {
                    break;
                }
            }
            let Some(piv) = best else { continue };
            m.swap_rows(r, piv);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = m.get(r, j);
                    if sub.is_zero() {
                        continue;
                    }
                    let t = &factor * sub;
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space as the columns of a `cols x k` matrix.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![None; n];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let free: Vec<usize> = (0..n).filter(|&c| is_pivot[c].is_none()).collect();
        let mut out = Matrix::zeros(self.field, n, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, self.field.one());
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, fc);
                if !v.is_zero() {
                    out.set(pc, k, -v);
                }
            }
        }
        out
    }

    /// Solves `self * x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Evaluates `poly` (coefficients from the constant term up) at this matrix.
    pub fn eval_poly(&self, coeffs: &[Scalar]) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in coeffs.iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = &acc.data[idx] + c;
            }
        }
        acc
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_add(&-rhs).expect("matrix difference")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_of_small_matrices() {
        let f5 = Field::Prime(5);
        assert_eq!(Matrix::identity(f5, 3).rank(), 3);
        assert_eq!(Matrix::zeros(f5, 2, 4).rank(), 0);
        let f2 = Field::Prime(2);
        assert_eq!(Matrix::from_int_rows(f2, &[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn empty_matrix_is_its_own_inverse() {
        let e = Matrix::zeros(Field::Rational, 0, 0);
        assert_eq!(e.inverse().unwrap(), e);
    }

    #[test]
    fn kernel_of_one_equation() {
        let f5 = Field::Prime(5);
        let k = Matrix::from_int_rows(f5, &[&[1, 2]]).kernel();
        assert_eq!(k.cols(), 1);
        // x + 2y = 0 has the solution (3, 1) over F_5
        assert_eq!(k.col(0), vec![f5.from_i64(3), f5.from_i64(1)]);
    }

    #[test]
    fn kernel_extremes() {
        let q = Field::Rational;
        assert_eq!(Matrix::identity(q, 3).kernel().cols(), 0);
        assert_eq!(Matrix::zeros(q, 3, 3).kernel().cols(), 3);
    }

    #[test]
    fn inverse_and_solve() {
        let q = Field::Rational;
        let a = Matrix::from_int_rows(q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(q, 2));
        let x = a.solve(&[q.from_i64(3), q.from_i64(2)]).unwrap();
        assert_eq!(x, vec![q.one(), q.one()]);
        assert!(Matrix::from_int_rows(q, &[&[1, 1], &[1, 1]]).inverse().is_err());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Matrix::identity(Field::Prime(3), 2);
        let b = Matrix::identity(Field::Rational, 2);
        assert!(matches!(a.checked_mul(&b), Err(Error::FieldMismatch(..))));
    }
}
