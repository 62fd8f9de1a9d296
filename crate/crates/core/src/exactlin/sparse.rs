use std::collections::HashMap;

use super::field::{Field, Scalar};

/// Sparse vector as `(index, value)` pairs, indices strictly increasing, no
/// stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `y + a·x`.
pub fn axpy(a: &Scalar, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push(y[j].clone());
            j += 1;
        } else {
            let v = &y[j].1 + &(a * &x[i].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &Scalar, x: &[(usize, Scalar)]) -> SparseVec {
    x.iter().map(|(i, v)| (*i, a * v)).collect()
}

pub fn to_dense(field: Field, n: usize, x: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

pub fn from_dense(x: &[Scalar]) -> SparseVec {
    x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

/// Column echelon basis keyed by the largest nonzero index of each column.
/// Every stored column carries a tag vector that is combined alongside it.
#[derive(Clone, Debug)]
pub struct Reducer {
    field: Field,
    cols: HashMap<usize, (SparseVec, SparseVec)>,
}

impl Reducer {
    pub fn new(field: Field) -> Reducer {
        Reducer { field, cols: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Returns `(v − Σ cᵢ colᵢ, Σ cᵢ tagᵢ)` with the residue reduced against
    /// every stored pivot.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> (SparseVec, SparseVec) {
        let mut v: SparseVec = v.to_vec();
        let mut comb: SparseVec = Vec::new();
        let mut top = v.len();
        while top > 0 {
            let (idx, c) = v[top - 1].clone();
            match self.cols.get(&idx) {
                Some((col, tag)) => {
                    v = axpy(&-&c, col, &v);
                    comb = axpy(&c, tag, &comb);
                    top = v.partition_point(|(i, _)| *i < idx);
                }
                None => top -= 1,
            }
        }
        (v, comb)
    }

    /// Stores a column whose leading entry is not yet a pivot. The column is
    /// normalized so its leading entry is one.
    pub fn insert(&mut self, col: SparseVec, tag: SparseVec) {
        let (idx, lead) = col.last().cloned().expect("inserting a zero column");
        assert!(!self.cols.contains_key(&idx), "pivot already present");
        let inv = lead.inv().unwrap();
        self.cols.insert(idx, (scale(&inv, &col), scale(&inv, &tag)));
    }

    /// Reduces and stores `col` if it is independent; reports whether it was.
    pub fn add(&mut self, col: &[(usize, Scalar)], tag: SparseVec) -> bool {
        let (r, comb) = self.reduce(col);
        if r.is_empty() {
            return false;
        }
        let tag = axpy(&-&self.field.one(), &comb, &tag);
        self.insert(r, tag);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_tracks_combinations() {
        let f = Field::Prime(7);
        let s = |v: i64| f.from_i64(v);
        let mut r = Reducer::new(f);
        r.insert(vec![(0, s(1)), (2, s(3))], vec![(0, s(1))]);
        r.insert(vec![(1, s(2))], vec![(1, s(1))]);
        // 2·c0 + 3·c1 expressed back
        let v = axpy(&s(3), &[(1, s(2))], &scale(&s(2), &[(0, s(1)), (2, s(3))]));
        let (res, comb) = r.reduce(&v);
        assert!(res.is_empty());
        // the tags undo the normalization, recovering the original coefficients
        assert_eq!(comb, vec![(0, s(2)), (1, s(3))]);
    }

    #[test]
    fn axpy_cancels() {
        let f = Field::Rational;
        let x = vec![(1, f.one())];
        assert!(axpy(&f.from_i64(-1), &x, &x).is_empty());
    }
}
