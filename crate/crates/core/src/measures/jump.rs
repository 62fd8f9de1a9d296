use std::collections::HashMap;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::complex::{build_rep_leveled, homology, induced_map, Homology, LevelComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::invariants::{Configuration, Values};

/// δ and the C^m jump function share the configuration layout.
pub type JumpFunction = Configuration;

/// `(a, b] × [c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Box2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Box2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Box2> {
        if !(a < b && c < d) {
            return Err(Error::Argument(format!("box needs a < b and c < d, got ({a},{b}]×[{c},{d})")));
        }
        Ok(Box2 { a, b, c, d })
    }
}

/// Smallest gap between consecutive critical values; for circle maps the
/// values are angles and the list is extended periodically.
pub fn epsilon_f(values: &[f64], periodic: bool) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Argument("no critical values".into()));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut eps = v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if periodic {
        eps = eps.min(v[0] + TAU - v[v.len() - 1]);
    }
    Ok(eps)
}

/// Homology of sublevel and superlevel sets of one window of the cover (or
/// of the whole complex, for real-valued maps). Critical index `i` sits at
/// level `2i`; the window runs over the odd levels `lo..=hi`.
pub struct LevelOracle<'a> {
    lc: &'a LevelComplex,
    field: Field,
    r: usize,
    lo: i64,
    hi: i64,
    whole: (SimplicialComplex, Homology),
    sub: HashMap<i64, (SimplicialComplex, Homology, Subspace)>,
    sup: HashMap<i64, (SimplicialComplex, Homology, Subspace)>,
}

impl<'a> LevelOracle<'a> {
    pub fn new(lc: &'a LevelComplex, field: Field, r: usize, lo: i64, hi: i64) -> LevelOracle<'a> {
        let w = lc.window(lo, hi);
        let h = homology(&w, field, r);
        LevelOracle { lc, field, r, lo, hi, whole: (w, h), sub: HashMap::new(), sup: HashMap::new() }
    }

    pub fn dim_total(&self) -> usize {
        self.whole.1.dim()
    }

    fn part(&self, lo: i64, hi: i64) -> Result<(SimplicialComplex, Homology, Subspace)> {
        let k = if lo > hi { SimplicialComplex::empty() } else { self.lc.window(lo, hi) };
        let h = homology(&k, self.field, self.r);
        let img = induced_map(&k, &h, &self.whole.0, &self.whole.1)?;
        Ok((k, h, Subspace::span(&img)))
    }

    /// Sublevel set up to critical index `i`.
    fn sublevel(&mut self, i: i64) -> Result<&(SimplicialComplex, Homology, Subspace)> {
        if !self.sub.contains_key(&i) {
            let p = self.part(self.lo, (2 * i).min(self.hi))?;
            self.sub.insert(i, p);
        }
        Ok(&self.sub[&i])
    }

    /// Superlevel set from critical index `j`.
    fn superlevel(&mut self, j: i64) -> Result<&(SimplicialComplex, Homology, Subspace)> {
        if !self.sup.contains_key(&j) {
            let p = self.part((2 * j).max(self.lo), self.hi)?;
            self.sup.insert(j, p);
        }
        Ok(&self.sup[&j])
    }

    /// `F(c_i, c_j) = dim(𝕀_{c_i} ∩ 𝕀^{c_j})`.
    pub fn f(&mut self, i: i64, j: i64) -> Result<usize> {
        let a = self.sublevel(i)?.2.clone();
        let b = &self.superlevel(j)?.2;
        Ok(a.intersection(b).dim())
    }

    /// `G(c_i, c_j) = dim H / (𝕀_{c_i} + 𝕀^{c_j})`.
    pub fn g(&mut self, i: i64, j: i64) -> Result<usize> {
        let total = self.whole.1.dim();
        let a = self.sublevel(i)?.2.clone();
        let b = &self.superlevel(j)?.2;
        Ok(total - a.sum(b).dim())
    }

    /// Kernel dimension of `H_r(X_{≤c_i}) → H_r(X_{≤c_j})`, zero unless `i < j`.
    pub fn t_sub(&mut self, i: i64, j: i64) -> Result<usize> {
        if i >= j {
            return Ok(0);
        }
        let small = self.sublevel(i)?.clone();
        let big = self.sublevel(j)?;
        let m = induced_map(&small.0, &small.1, &big.0, &big.1)?;
        Ok(m.cols() - m.rank())
    }

    /// Kernel dimension of `H_r(X^{≥c_i}) → H_r(X^{≥c_j})`, zero unless `i > j`.
    pub fn t_sup(&mut self, i: i64, j: i64) -> Result<usize> {
        if i <= j {
            return Ok(0);
        }
        let small = self.superlevel(i)?.clone();
        let big = self.superlevel(j)?;
        let m: Matrix = induced_map(&small.0, &small.1, &big.0, &big.1)?;
        Ok(m.cols() - m.rank())
    }

    /// `F(c_{i−1}, c_{j+1}) + F(c_i, c_j) − F(c_{i−1}, c_j) − F(c_i, c_{j+1})`.
    pub fn delta_at(&mut self, i: i64, j: i64) -> Result<usize> {
        let v = self.f(i - 1, j + 1)? as i64 + self.f(i, j)? as i64 - self.f(i - 1, j)? as i64 - self.f(i, j + 1)? as i64;
        usize::try_from(v).map_err(|_| Error::Internal(format!("negative jump {v} at ({i},{j})")))
    }

    /// Jump of `T` at `(c_i, c_j)`, `i ≠ j`.
    pub fn cm_at(&mut self, i: i64, j: i64) -> Result<usize> {
        let v = if i < j {
            self.t_sub(i, j)? as i64 + self.t_sub(i - 1, j - 1)? as i64
                - self.t_sub(i - 1, j)? as i64
                - self.t_sub(i, j - 1)? as i64
        } else {
            self.t_sup(i, j)? as i64 + self.t_sup(i + 1, j + 1)? as i64
                - self.t_sup(i, j + 1)? as i64
                - self.t_sup(i + 1, j)? as i64
        };
        usize::try_from(v).map_err(|_| Error::Internal(format!("negative jump {v} at ({i},{j})")))
    }
}

/// The data needed to place windows: level complex, critical values and the
/// largest span a bar can have, in critical indices.
pub struct MapLevels<'a> {
    pub lc: &'a LevelComplex,
    pub values: &'a Values,
    pub field: Field,
}

impl<'a> MapLevels<'a> {
    pub fn new(lc: &'a LevelComplex, values: &'a Values, field: Field) -> MapLevels<'a> {
        MapLevels { lc, values, field }
    }

    fn m(&self) -> Option<i64> {
        match self.values {
            Values::Angles(a) => Some(a.len() as i64),
            Values::Reals(_) => None,
        }
    }

    /// Bound on the index span of any bar in degrees `r` and `r − 1`: half the
    /// total dimension of the representations, plus two.
    fn reach(&self, r: usize) -> Result<i64> {
        let Values::Angles(angles) = self.values else {
            return Ok(0);
        };
        let m = angles.len();
        let mut n = 0;
        for d in [Some(r), r.checked_sub(1)].into_iter().flatten() {
            n = n.max(build_rep_leveled(self.lc, m, angles, self.field, d)?.total_dim());
        }
        Ok(n as i64 / 2 + 2)
    }

    /// Index pairs to evaluate and the window needed for them, with `pad`
    /// extra critical indices on both sides.
    fn grid(&self, r: usize, pad: i64) -> Result<(Vec<(i64, i64)>, i64, i64)> {
        match (self.values, self.m()) {
            (Values::Reals(v), _) => {
                let k = v.len() as i64 - 1;
                let pairs = (0..=k).flat_map(|i| (0..=k).map(move |j| (i, j))).collect();
                Ok((pairs, -1, 2 * k + 1))
            }
            (Values::Angles(_), Some(m)) => {
                let reach = self.reach(r)?;
                let pairs = (1..=m).flat_map(|i| (i - reach..=i + reach).map(move |j| (i, j))).collect();
                let (lo, hi) = (1 - reach - 1 - pad, m + reach + 1 + pad);
                Ok((pairs, 2 * lo - 1, 2 * hi + 1))
            }
            _ => unreachable!(),
        }
    }

    fn jump(&self, r: usize, cm: bool) -> Result<JumpFunction> {
        let run = |pad: i64| -> Result<Vec<(i64, i64, usize)>> {
            let (pairs, lo, hi) = self.grid(r, pad)?;
            let mut o = LevelOracle::new(self.lc, self.field, r, lo, hi);
            let mut out = Vec::new();
            for (i, j) in pairs {
                if cm && i == j {
                    continue;
                }
                let v = if cm { o.cm_at(i, j)? } else { o.delta_at(i, j)? };
                if v > 0 {
                    out.push((i, j, v));
                }
            }
            Ok(out)
        };
        let first = run(1)?;
        if let Some(m) = self.m() {
            // one more period on each side must not change anything
            if run(1 + m)? != first {
                return Err(Error::Internal("cover window did not stabilize".into()));
            }
        }
        Ok(Configuration::from_indices(r, self.values, first))
    }

    /// `δ_r` at critical pairs via the finite F formula.
    pub fn delta(&self, r: usize) -> Result<JumpFunction> {
        self.jump(r, false)
    }

    /// The jump function of `T`, supported off the diagonal.
    pub fn cm_jump(&self, r: usize) -> Result<JumpFunction> {
        self.jump(r, true)
    }

    /// Largest critical index with value `≤ x`.
    fn index_below(&self, x: f64) -> i64 {
        match self.values {
            Values::Reals(v) => v.iter().rposition(|&c| c <= x).map_or(-1, |i| i as i64),
            Values::Angles(a) => {
                let m = a.len() as i64;
                let mut i = ((x / TAU).floor() as i64) * m;
                while self.values.at(i + 1) <= x {
                    i += 1;
                }
                while self.values.at(i) > x {
                    i -= 1;
                }
                i
            }
        }
    }

    /// Smallest critical index with value `≥ x`.
    fn index_above(&self, x: f64) -> i64 {
        match self.values {
            Values::Reals(v) => v.iter().position(|&c| c >= x).map_or(v.len() as i64, |i| i as i64),
            Values::Angles(_) => {
                let i = self.index_below(x);
                if self.values.at(i) == x {
                    i
                } else {
                    i + 1
                }
            }
        }
    }

    fn oracle_for(&self, r: usize, idx: &[i64]) -> Result<LevelOracle<'a>> {
        let (lo, hi) = match self.values {
            Values::Reals(v) => (-1, 2 * v.len() as i64 - 1),
            Values::Angles(_) => {
                let reach = self.reach(r)?;
                let mn = *idx.iter().min().unwrap();
                let mx = *idx.iter().max().unwrap();
                (2 * (mn - reach - 1) - 1, 2 * (mx + reach + 1) + 1)
            }
        };
        Ok(LevelOracle::new(self.lc, self.field, r, lo, hi))
    }

    /// `(F(a, b), G(a, b))` at arbitrary values; on the cover of a circle map
    /// these are computed on a window reaching every bar through `[a, b]`.
    pub fn f_g_values(&self, r: usize, a: f64, b: f64) -> Result<(usize, usize)> {
        let (i, j) = (self.index_below(a), self.index_above(b));
        let mut o = self.oracle_for(r, &[i, j])?;
        Ok((o.f(i, j)?, o.g(i, j)?))
    }

    /// `μ(B) = F(a, d) + F(b, c) − F(a, c) − F(b, d)`, checked against the same
    /// combination of G: `G(x, y) − F(x, y)` splits into a term in `x` and a
    /// term in `y`, which cancel.
    pub fn mu_box(&self, r: usize, bx: &Box2) -> Result<usize> {
        let (ia, ib) = (self.index_below(bx.a), self.index_below(bx.b));
        let (jc, jd) = (self.index_above(bx.c), self.index_above(bx.d));
        let mut o = self.oracle_for(r, &[ia, ib, jc, jd])?;
        let f = o.f(ia, jd)? as i64 + o.f(ib, jc)? as i64 - o.f(ia, jc)? as i64 - o.f(ib, jd)? as i64;
        let g = o.g(ia, jd)? as i64 + o.g(ib, jc)? as i64 - o.g(ia, jc)? as i64 - o.g(ib, jd)? as i64;
        if f != g {
            return Err(Error::Internal(format!("F and G box measures differ: {f} vs {g}")));
        }
        usize::try_from(f).map_err(|_| Error::Internal(format!("negative box measure {f}")))
    }
}
