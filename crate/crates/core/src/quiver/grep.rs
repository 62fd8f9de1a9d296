use std::f64::consts::TAU;

use super::bars::lifted_angle;
use super::window::{ceil_half, floor_half, ZWindowRep};
use crate::error::{Error, Result};
use crate::exactlin::{CanonicalBlock, Field, Matrix, Scalar};
use crate::relation::Relation;

/// A representation of the circular zigzag `G_{2m}`: vertices `1..=2m`, odd
/// vertices at regular levels, even vertex `2i` at the critical angle `θ_i`,
/// `α_i: V_{2i−1} → V_{2i}` and `β_i: V_{2i+1} → V_{2i}` (with `V_{2m+1} = V_1`).
#[derive(Clone, Debug, PartialEq)]
pub struct GRep {
    pub field: Field,
    pub m: usize,
    pub degree: usize,
    pub dims: Vec<usize>,
    pub alpha: Vec<Matrix>,
    pub beta: Vec<Matrix>,
    pub angles: Vec<f64>,
}

pub fn default_angles(m: usize) -> Vec<f64> {
    (1..=m).map(|i| TAU * i as f64 / m as f64).collect()
}

impl GRep {
    pub fn new(
        field: Field,
        m: usize,
        degree: usize,
        dims: Vec<usize>,
        alpha: Vec<Matrix>,
        beta: Vec<Matrix>,
        angles: Option<Vec<f64>>,
    ) -> Result<GRep> {
        let angles = angles.unwrap_or_else(|| default_angles(m));
        let rep = GRep { field, m, degree, dims, alpha, beta, angles };
        rep.validate()?;
        Ok(rep)
    }

    fn validate(&self) -> Result<()> {
        let m = self.m;
        if m == 0 {
            return Err(Error::Input("m: must be at least 1".into()));
        }
        if self.dims.len() != 2 * m {
            return Err(Error::Input(format!("dims: expected {} entries, got {}", 2 * m, self.dims.len())));
        }
        if self.alpha.len() != m {
            return Err(Error::Input(format!("alpha: expected {m} matrices, got {}", self.alpha.len())));
        }
        if self.beta.len() != m {
            return Err(Error::Input(format!("beta: expected {m} matrices, got {}", self.beta.len())));
        }
        if self.angles.len() != m {
            return Err(Error::Input(format!("angles: expected {m} values, got {}", self.angles.len())));
        }
        for w in self.angles.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Input("angles: must be strictly increasing".into()));
            }
        }
        if !(self.angles[0] > 0.0) || self.angles[m - 1] > TAU + 1e-12 {
            return Err(Error::Input("angles: must lie in (0, 2π]".into()));
        }
        for i in 1..=m {
            let a = &self.alpha[i - 1];
            if a.field() != self.field {
                return Err(Error::Input(format!("alpha[{}]: field {} differs from {}", i - 1, a.field(), self.field)));
            }
            if (a.rows(), a.cols()) != (self.dim(2 * i as i64), self.dim(2 * i as i64 - 1)) {
                return Err(Error::Input(format!(
                    "alpha[{}]: expected {}x{}, got {}x{}",
                    i - 1,
                    self.dim(2 * i as i64),
                    self.dim(2 * i as i64 - 1),
                    a.rows(),
                    a.cols()
                )));
            }
            let b = &self.beta[i - 1];
            if b.field() != self.field {
                return Err(Error::Input(format!("beta[{}]: field {} differs from {}", i - 1, b.field(), self.field)));
            }
            if (b.rows(), b.cols()) != (self.dim(2 * i as i64), self.dim(2 * i as i64 + 1)) {
                return Err(Error::Input(format!(
                    "beta[{}]: expected {}x{}, got {}x{}",
                    i - 1,
                    self.dim(2 * i as i64),
                    self.dim(2 * i as i64 + 1),
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(())
    }

    /// `dim V_v` with the vertex index read modulo `2m`.
    pub fn dim(&self, v: i64) -> usize {
        self.dims[(v - 1).rem_euclid(2 * self.m as i64) as usize]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The map carried by the cover edge between `a` and `a+1`: some `α_i`
    /// when `a` is odd, some `β_i` when `a` is even.
    pub fn cover_edge(&self, a: i64) -> &Matrix {
        let m = self.m as i64;
        if a.rem_euclid(2) == 1 {
            &self.alpha[((a + 1) / 2 - 1).rem_euclid(m) as usize]
        } else {
            &self.beta[(a.div_euclid(2) - 1).rem_euclid(m) as usize]
        }
    }

    pub fn crit_value(&self, c: i64) -> f64 {
        lifted_angle(&self.angles, c)
    }

    /// The circular block matrix `⊕ V_odd → ⊕ V_even`; row block `i` holds
    /// `α_i` and `−β_i`.
    pub fn m_matrix(&self) -> Matrix {
        let m = self.m;
        let odd_off: Vec<usize> = (0..m).scan(0, |acc, i| {
            let o = *acc;
            *acc += self.dims[2 * i];
            Some(o)
        }).collect();
        let even_off: Vec<usize> = (0..m).scan(0, |acc, i| {
            let o = *acc;
            *acc += self.dims[2 * i + 1];
            Some(o)
        }).collect();
        let rows = (0..m).map(|i| self.dims[2 * i + 1]).sum();
        let cols = (0..m).map(|i| self.dims[2 * i]).sum();
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..m {
            out.paste_add(even_off[i], odd_off[i], &self.alpha[i]);
            out.paste_add(even_off[i], odd_off[(i + 1) % m], &-&self.beta[i]);
        }
        out
    }

    /// `(dim ker M, dim coker M)`.
    pub fn ker_coker(&self) -> (usize, usize) {
        let mm = self.m_matrix();
        let r = mm.rank();
        (mm.cols() - r, mm.rows() - r)
    }

    /// `α_1 ↦ u·α_1`.
    pub fn twist(&self, u: &Scalar) -> Result<GRep> {
        if u.is_zero() {
            return Err(Error::Argument("twist by zero".into()));
        }
        let mut out = self.clone();
        out.alpha[0] = self.alpha[0].scale(u);
        Ok(out)
    }

    /// `T_{k,l}` as a window over vertices `2k..=2l`, `1 ≤ k ≤ l ≤ m`.
    pub fn truncate(&self, k: i64, l: i64) -> Result<ZWindowRep> {
        if !(1 <= k && k <= l && l <= self.m as i64) {
            return Err(Error::Argument(format!("truncation needs 1 ≤ {k} ≤ {l} ≤ {}", self.m)));
        }
        self.window(2 * k, 2 * l)
    }

    /// The covering representation restricted to vertices `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<ZWindowRep> {
        let dims = (lo..=hi).map(|v| self.dim(v)).collect();
        let maps = (lo..hi).map(|a| self.cover_edge(a).clone()).collect();
        let values = (floor_half(lo)..=ceil_half(hi)).map(|c| self.crit_value(c)).collect();
        ZWindowRep::new(self.field, self.degree, lo, dims, maps, values)
    }

    /// `periods` copies of the representation on the cover, vertices
    /// `1..=2m·periods`.
    pub fn unroll(&self, periods: usize) -> Result<ZWindowRep> {
        if periods == 0 {
            return Err(Error::Argument("unroll needs at least one period".into()));
        }
        self.window(1, (2 * self.m * periods) as i64)
    }

    /// The relation `V_{2i−1} ⇝ V_{2i+1}` given by `α_i v = β_i w`.
    pub fn elementary_relation(&self, i: usize) -> Relation {
        Relation::from_pair(&self.alpha[i - 1], &self.beta[i - 1]).expect("shapes validated")
    }

    /// The composite relation once around the circle, starting at the odd
    /// vertex `2·start − 1`.
    pub fn circle_relation(&self, start: usize) -> Result<Relation> {
        if !(1..=self.m).contains(&start) {
            return Err(Error::Argument(format!("start {start} outside 1..={}", self.m)));
        }
        let mut r = Relation::identity(self.field, self.dim(2 * start as i64 - 1));
        for s in 0..self.m {
            let i = (start - 1 + s) % self.m + 1;
            r = Relation::compose(&self.elementary_relation(i), &r)?;
        }
        Ok(r)
    }

    pub fn direct_sum(parts: &[GRep]) -> Result<GRep> {
        let first = parts.first().ok_or_else(|| Error::Argument("empty direct sum".into()))?;
        let m = first.m;
        if parts.iter().any(|p| p.m != m || p.field != first.field) {
            return Err(Error::Argument("summands differ in m or field".into()));
        }
        let dims = (0..2 * m).map(|k| parts.iter().map(|p| p.dims[k]).sum()).collect();
        let cat = |pick: &dyn Fn(&GRep) -> &Vec<Matrix>| -> Vec<Matrix> {
            (0..m)
                .map(|i| Matrix::block_diag(first.field, &parts.iter().map(|p| pick(p)[i].clone()).collect::<Vec<_>>()))
                .collect()
        };
        let alpha = cat(&|p| &p.alpha);
        let beta = cat(&|p| &p.beta);
        GRep::new(first.field, m, first.degree, dims, alpha, beta, Some(first.angles.clone()))
    }

    /// Applies base changes `P_v` at every vertex: `α_i ↦ P_{2i} α_i P_{2i−1}⁻¹`,
    /// `β_i ↦ P_{2i} β_i P_{2i+1}⁻¹`.
    pub fn conjugate(&self, base: &[Matrix]) -> Result<GRep> {
        let m = self.m;
        if base.len() != 2 * m {
            return Err(Error::Argument("one base change per vertex".into()));
        }
        let inv: Vec<Matrix> = base.iter().map(Matrix::inverse).collect::<Result<_>>()?;
        let mut out = self.clone();
        for i in 0..m {
            let even = 2 * i + 1;
            let odd_a = 2 * i;
            let odd_b = (2 * i + 2) % (2 * m);
            out.alpha[i] = &(&base[even] * &self.alpha[i]) * &inv[odd_a];
            out.beta[i] = &(&base[even] * &self.beta[i]) * &inv[odd_b];
        }
        Ok(out)
    }

    /// The indecomposable `ρ^I` whose covering consists of the translates of
    /// the interval with vertex support `[p, q]`.
    pub fn interval(field: Field, m: usize, degree: usize, p: i64, q: i64, angles: Option<Vec<f64>>) -> Result<GRep> {
        if p > q {
            return Err(Error::Argument(format!("empty support [{p},{q}]")));
        }
        let period = 2 * m as i64;
        let class = |s: i64| (s - 1).rem_euclid(period) as usize;
        let mut basis: Vec<Vec<i64>> = vec![Vec::new(); 2 * m];
        for s in p..=q {
            basis[class(s)].push(s);
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let map = |src: usize, dst: usize, step: i64| -> Matrix {
            let mut a = Matrix::zeros(field, basis[dst].len(), basis[src].len());
            for (j, s) in basis[src].iter().enumerate() {
                if let Some(i) = basis[dst].iter().position(|&t| t == s + step) {
                    a.set(i, j, field.one());
                }
            }
            a
        };
        let alpha = (0..m).map(|i| map(2 * i, 2 * i + 1, 1)).collect();
        let beta = (0..m).map(|i| map((2 * i + 2) % (2 * m), 2 * i + 1, -1)).collect();
        GRep::new(field, m, degree, dims, alpha, beta, angles)
    }

    /// `ρ^{II}(V, T)`: `V` at every vertex, `α_1 = T`, every other map the
    /// identity.
    pub fn regular(m: usize, degree: usize, t: &Matrix, angles: Option<Vec<f64>>) -> Result<GRep> {
        if !t.is_invertible() {
            return Err(Error::Singular);
        }
        let f = t.field();
        let n = t.rows();
        let id = Matrix::identity(f, n);
        let mut alpha = vec![id.clone(); m];
        alpha[0] = t.clone();
        GRep::new(f, m, degree, vec![n; 2 * m], alpha, vec![id; m], angles)
    }

    /// `ρ^{II}` of a single canonical block.
    pub fn jordan(m: usize, degree: usize, block: &CanonicalBlock, angles: Option<Vec<f64>>) -> Result<GRep> {
        GRep::regular(m, degree, &block.matrix(), angles)
    }

    /// The zero representation.
    pub fn zero(field: Field, m: usize, degree: usize, angles: Option<Vec<f64>>) -> GRep {
        GRep::new(
            field,
            m,
            degree,
            vec![0; 2 * m],
            vec![Matrix::zeros(field, 0, 0); m],
            vec![Matrix::zeros(field, 0, 0); m],
            angles,
        )
        .expect("zero representation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_model_dims() {
        let f = Field::Prime(5);
        // m = 2, support [2, 8] wraps once: vertices 2,3,4,5,6,7,8
        let r = GRep::interval(f, 2, 0, 2, 8, None).unwrap();
        assert_eq!(r.dims, vec![1, 2, 2, 2]);
        assert_eq!(r.total_dim(), 7);
    }

    #[test]
    fn regular_relation_is_the_monodromy() {
        let f = Field::Prime(7);
        let t = Matrix::from_int_rows(f, &[&[2, 1], &[0, 3]]);
        let r = GRep::regular(3, 1, &t, None).unwrap();
        assert_eq!(r.circle_relation(1).unwrap(), Relation::graph_of(&t));
    }

    #[test]
    fn twist_scales_only_alpha_one() {
        let q = Field::Rational;
        let r = GRep::regular(2, 0, &Matrix::identity(q, 1), None).unwrap();
        let t = r.twist(&q.from_i64(3)).unwrap();
        assert_eq!(t.alpha[0], Matrix::from_int_rows(q, &[&[3]]));
        assert_eq!(t.alpha[1], r.alpha[1]);
        assert_eq!(r.twist(&q.one()).unwrap(), r);
        assert!(r.twist(&q.zero()).is_err());
    }

    #[test]
    fn shapes_are_validated() {
        let q = Field::Rational;
        let err = GRep::new(q, 1, 0, vec![1, 1], vec![Matrix::zeros(q, 1, 2)], vec![Matrix::identity(q, 1)], None);
        assert!(matches!(err, Err(Error::Input(msg)) if msg.starts_with("alpha[0]")));
    }
}
