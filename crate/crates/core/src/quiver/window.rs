use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::relation::Relation;

/// A finite stretch `lo..=hi` of a zigzag `x_lo ↔ x_lo+1 ↔ ⋯ ↔ x_hi` whose
/// arrows point from odd vertices to even vertices. Even vertex `2c` sits at
/// the critical value with index `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZWindowRep {
    pub field: Field,
    pub degree: usize,
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `maps[e]` joins vertices `lo+e` and `lo+e+1`, directed odd to even.
    pub maps: Vec<Matrix>,
    /// Critical values for indices `crit_lo()..`; covers every endpoint of a
    /// bar supported in the window.
    pub values: Vec<f64>,
}

/// An interval summand of a window, by vertex support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowBar {
    pub p: i64,
    pub q: i64,
    pub mult: usize,
}

pub(crate) fn floor_half(v: i64) -> i64 {
    v.div_euclid(2)
}

pub(crate) fn ceil_half(v: i64) -> i64 {
    (v + 1).div_euclid(2)
}

impl ZWindowRep {
    pub fn new(field: Field, degree: usize, lo: i64, dims: Vec<usize>, maps: Vec<Matrix>, values: Vec<f64>) -> Result<ZWindowRep> {
        let w = ZWindowRep { field, degree, lo, dims, maps, values };
        w.validate()?;
        Ok(w)
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    /// Index of the first critical value stored in `values`.
    pub fn crit_lo(&self) -> i64 {
        floor_half(self.lo)
    }

    pub fn crit_hi(&self) -> i64 {
        ceil_half(self.hi())
    }

    pub fn crit_value(&self, c: i64) -> Option<f64> {
        let k = c - self.crit_lo();
        if k < 0 {
            return None;
        }
        self.values.get(k as usize).copied()
    }

    pub fn dim_at(&self, v: i64) -> usize {
        if v < self.lo || v > self.hi() {
            0
        } else {
            self.dims[(v - self.lo) as usize]
        }
    }

    /// The map on the edge between `a` and `a+1`.
    pub fn edge(&self, a: i64) -> &Matrix {
        &self.maps[(a - self.lo) as usize]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Input("window has no vertices".into()));
        }
        if self.maps.len() + 1 != self.dims.len() {
            return Err(Error::Input(format!("window with {} vertices needs {} maps", self.dims.len(), self.dims.len() - 1)));
        }
        let need = (self.crit_hi() - self.crit_lo() + 1) as usize;
        if self.values.len() != need {
            return Err(Error::Input(format!("window needs {need} critical values, got {}", self.values.len())));
        }
        for (e, m) in self.maps.iter().enumerate() {
            let a = self.lo + e as i64;
            let (src, dst) = if a.rem_euclid(2) == 1 { (a, a + 1) } else { (a + 1, a) };
            if m.field() != self.field {
                return Err(Error::FieldMismatch(self.field, m.field()));
            }
            if m.rows() != self.dim_at(dst) || m.cols() != self.dim_at(src) {
                return Err(Error::Input(format!(
                    "maps[{e}]: expected {}x{}, got {}x{}",
                    self.dim_at(dst),
                    self.dim_at(src),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }

    /// The bidiagonal block matrix `⊕ V_odd → ⊕ V_even`: `α` enters with a
    /// plus sign, `β` with a minus sign.
    pub fn m_matrix(&self) -> Matrix {
        let evens: Vec<i64> = (self.lo..=self.hi()).filter(|v| v.rem_euclid(2) == 0).collect();
        let odds: Vec<i64> = (self.lo..=self.hi()).filter(|v| v.rem_euclid(2) == 1).collect();
        let offset = |list: &[i64], v: i64| -> usize {
            list.iter().take_while(|&&x| x < v).map(|&x| self.dim_at(x)).sum()
        };
        let rows = evens.iter().map(|&v| self.dim_at(v)).sum();
        let cols = odds.iter().map(|&v| self.dim_at(v)).sum();
        let mut m = Matrix::zeros(self.field, rows, cols);
        for a in self.lo..self.hi() {
            let map = self.edge(a);
            if a.rem_euclid(2) == 1 {
                m.paste_add(offset(&evens, a + 1), offset(&odds, a), map);
            } else {
                m.paste_add(offset(&evens, a), offset(&odds, a + 1), &-map);
            }
        }
        m
    }

    /// `T_{k,l}`: keeps vertices `2k..=2l`.
    pub fn truncate(&self, k: i64, l: i64) -> Result<ZWindowRep> {
        if k > l {
            return Err(Error::Argument(format!("truncation range {k} > {l}")));
        }
        let lo = self.lo.max(2 * k);
        let hi = self.hi().min(2 * l);
        if lo > hi {
            return Err(Error::Argument("truncation range misses the window".into()));
        }
        let a = (lo - self.lo) as usize;
        let b = (hi - self.lo) as usize;
        let c0 = floor_half(lo) - self.crit_lo();
        let c1 = ceil_half(hi) - self.crit_lo();
        ZWindowRep::new(
            self.field,
            self.degree,
            lo,
            self.dims[a..=b].to_vec(),
            self.maps[a..b].to_vec(),
            self.values[c0 as usize..=c1 as usize].to_vec(),
        )
    }

    /// The relation `V_a ⇝ V_{a+1}` carried by one edge.
    pub fn edge_relation(&self, a: i64) -> Relation {
        let m = self.edge(a);
        if a.rem_euclid(2) == 1 {
            Relation::graph_of(m)
        } else {
            Relation::graph_of(m).dagger()
        }
    }

    /// Number of interval summands whose support contains `[p, q]`: the
    /// rank of the zigzag relation `V_p ⇝ V_q`, i.e. its dimension minus its
    /// kernel and multivalued part.
    pub fn generalized_rank(&self, p: i64, q: i64) -> Result<usize> {
        if p < self.lo || q > self.hi() || p > q {
            return Err(Error::Argument(format!("range [{p},{q}] outside window [{},{}]", self.lo, self.hi())));
        }
        Ok(self.rank_sweep(p, q).pop().unwrap())
    }

    /// `grk(p, q')` for every `q'` in `p..=q`.
    pub(crate) fn rank_sweep(&self, p: i64, q: i64) -> Vec<usize> {
        let mut r = Relation::identity(self.field, self.dim_at(p));
        let mut out = vec![self.dim_at(p)];
        for a in p..q {
            r = Relation::compose(&self.edge_relation(a), &r).expect("edge dimensions");
            let parts = r.parts();
            out.push(r.dim() - parts.ker.dim() - parts.mul.dim());
        }
        out
    }

    /// Interval multiplicities by inclusion–exclusion over generalized ranks.
    pub fn decompose(&self) -> Result<Vec<WindowBar>> {
        let n = self.dims.len();
        let mut g = vec![vec![0usize; n]; n];
        for i in 0..n {
            let sweep = self.rank_sweep(self.lo + i as i64, self.hi());
            g[i][i..].copy_from_slice(&sweep);
        }
        let at = |i: isize, j: isize| -> i64 {
            if i < 0 || j >= n as isize || i > j {
                0
            } else {
                g[i as usize][j as usize] as i64
            }
        };
        let mut bars = Vec::new();
        for i in 0..n as isize {
            for j in i..n as isize {
                let mult = at(i, j) - at(i - 1, j) - at(i, j + 1) + at(i - 1, j + 1);
                if mult < 0 {
                    return Err(Error::Internal(format!("negative interval multiplicity at [{i},{j}]")));
                }
                if mult > 0 {
                    bars.push(WindowBar { p: self.lo + i as i64, q: self.lo + j as i64, mult: mult as usize });
                }
            }
        }
        check_bookkeeping(self, &bars)?;
        Ok(bars)
    }
}

pub(crate) fn check_bookkeeping(w: &ZWindowRep, bars: &[WindowBar]) -> Result<()> {
    for v in w.lo..=w.hi() {
        let covered: usize = bars.iter().filter(|b| b.p <= v && v <= b.q).map(|b| b.mult).sum();
        if covered != w.dim_at(v) {
            return Err(Error::Internal(format!(
                "vertex {v} has dimension {} but intervals cover {covered}",
                w.dim_at(v)
            )));
        }
    }
    Ok(())
}

/// A window carrying one interval summand supported on `[p, q]`, with unit
/// critical values `c ↦ c`.
pub fn interval_window(field: Field, lo: i64, hi: i64, p: i64, q: i64) -> ZWindowRep {
    let inside = |v: i64| p <= v && v <= q;
    let dims: Vec<usize> = (lo..=hi).map(|v| inside(v) as usize).collect();
    let maps = (lo..hi)
        .map(|a| {
            let (src, dst) = if a.rem_euclid(2) == 1 { (a, a + 1) } else { (a + 1, a) };
            let (r, c) = (inside(dst) as usize, inside(src) as usize);
            if r == 1 && c == 1 { Matrix::identity(field, 1) } else { Matrix::zeros(field, r, c) }
        })
        .collect();
    let values = (floor_half(lo)..=ceil_half(hi)).map(|c| c as f64).collect();
    ZWindowRep::new(field, 0, lo, dims, maps, values).expect("interval window")
}

/// Direct sum of windows over the same vertex range.
pub fn window_sum(parts: &[ZWindowRep]) -> ZWindowRep {
    let first = &parts[0];
    let n = first.dims.len();
    let dims = (0..n).map(|i| parts.iter().map(|w| w.dims[i]).sum()).collect();
    let maps = (0..n - 1)
        .map(|e| Matrix::block_diag(first.field, &parts.iter().map(|w| w.maps[e].clone()).collect::<Vec<_>>()))
        .collect();
    ZWindowRep::new(first.field, first.degree, first.lo, dims, maps, first.values.clone()).expect("window sum")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_closed_interval() {
        let f = Field::Prime(5);
        let w = interval_window(f, 1, 6, 2, 4);
        assert_eq!(w.decompose().unwrap(), vec![WindowBar { p: 2, q: 4, mult: 1 }]);
    }

    #[test]
    fn fold_zigzag() {
        // κ ← κ² → κ with both maps the fold [1 1]: vertices 0, 1, 2
        let f = Field::Rational;
        let fold = Matrix::from_int_rows(f, &[&[1, 1]]);
        let w = ZWindowRep::new(f, 0, 0, vec![1, 2, 1], vec![fold.clone(), fold], vec![0.0, 1.0]).unwrap();
        let bars = w.decompose().unwrap();
        assert_eq!(bars, vec![WindowBar { p: 0, q: 2, mult: 1 }, WindowBar { p: 1, q: 1, mult: 1 }]);
    }

    #[test]
    fn truncation_cuts_intervals() {
        let f = Field::Prime(3);
        let w = interval_window(f, 0, 8, 1, 7);
        let t = w.truncate(1, 3).unwrap();
        assert_eq!((t.lo, t.hi()), (2, 6));
        assert_eq!(t.decompose().unwrap(), vec![WindowBar { p: 2, q: 6, mult: 1 }]);
        assert_eq!(w.truncate(0, 4).unwrap(), w);
    }

    #[test]
    fn m_matrix_of_intervals() {
        let f = Field::Prime(5);
        let dk = |w: &ZWindowRep| {
            let m = w.m_matrix();
            let r = m.rank();
            (m.cols() - r, m.rows() - r)
        };
        assert_eq!(dk(&interval_window(f, 0, 8, 2, 6)), (0, 1));
        assert_eq!(dk(&interval_window(f, 0, 8, 2, 5)), (0, 0));
        assert_eq!(dk(&interval_window(f, 0, 8, 3, 6)), (0, 0));
        assert_eq!(dk(&interval_window(f, 0, 8, 3, 5)), (1, 0));
    }
}
