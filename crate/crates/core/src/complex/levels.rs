use std::collections::{BTreeSet, HashMap};
use std::f64::consts::TAU;

use super::simplicial::{homology, induced_map, Homology, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::quiver::{default_angles, GRep, ZWindowRep};

/// A simplicial map to the circle triangulated by `m ≥ 3` vertices at angles
/// `θ_1 < ⋯ < θ_m`. Vertex images are 0-based: image `j` is the angle
/// `θ_{j+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleMap {
    pub m: usize,
    pub angles: Vec<f64>,
    pub vertex_image: Vec<usize>,
}

/// A simplicial map to the interval triangulated by `k + 1` vertices at
/// values `c_0 < ⋯ < c_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMap {
    pub k: usize,
    pub values: Vec<f64>,
    pub vertex_image: Vec<usize>,
}

impl CircleMap {
    pub fn new(m: usize, angles: Option<Vec<f64>>, vertex_image: Vec<usize>) -> Result<CircleMap> {
        if m < 3 {
            return Err(Error::Input("circle_m: a triangulated circle needs at least 3 vertices".into()));
        }
        let angles = angles.unwrap_or_else(|| default_angles(m));
        if angles.len() != m || angles.windows(2).any(|w| !(w[0] < w[1])) || !(angles[0] > 0.0) || angles[m - 1] > TAU + 1e-12 {
            return Err(Error::Input("angles: need m strictly increasing values in (0, 2π]".into()));
        }
        if let Some(v) = vertex_image.iter().position(|&j| j >= m) {
            return Err(Error::Input(format!("vertex_image[{v}]: {} is not a circle vertex", vertex_image[v])));
        }
        Ok(CircleMap { m, angles, vertex_image })
    }

    /// Level of a target vertex in the subdivided circle: `θ_{j+1}` sits at
    /// level `2(j+1)`.
    fn vertex_level(&self, j: usize) -> i64 {
        2 * (j as i64 + 1)
    }

    /// Level of the midpoint of the target edge joining images `j` and `j'`,
    /// or `None` when they are not adjacent.
    fn midpoint_level(&self, j: usize, jj: usize) -> Option<i64> {
        let m = self.m;
        let lower = if (j + 1) % m == jj {
            j
        } else if (jj + 1) % m == j {
            jj
        } else {
            return None;
        };
        // between θ_{lower+1} and θ_{lower+2}: the regular level t_{lower+2}
        Some(((2 * lower as i64 + 2) % (2 * m as i64)) + 1)
    }
}

impl IntervalMap {
    pub fn new(k: usize, values: Option<Vec<f64>>, vertex_image: Vec<usize>) -> Result<IntervalMap> {
        let values = values.unwrap_or_else(|| (0..=k).map(|j| j as f64).collect());
        if values.len() != k + 1 || values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Input("values: need k + 1 strictly increasing values".into()));
        }
        if let Some(v) = vertex_image.iter().position(|&j| j > k) {
            return Err(Error::Input(format!("vertex_image[{v}]: {} is not an interval vertex", vertex_image[v])));
        }
        Ok(IntervalMap { k, values, vertex_image })
    }
}

/// A complex whose vertices carry levels such that every simplex spans at
/// most two adjacent levels. Odd levels are regular values, even levels the
/// candidate critical values. For circle maps the levels are read modulo
/// `period = 2m`, and simplices joining level `2m` to level `1` cross the
/// cut of the circle.
#[derive(Clone, Debug)]
pub struct LevelComplex {
    pub complex: SimplicialComplex,
    pub level: Vec<i64>,
    pub period: Option<i64>,
    /// Lifted simplices with sheet offsets per vertex and the level range
    /// on sheet zero.
    lifted: Vec<(Vec<(usize, i64)>, i64, i64)>,
}

const SHEET_OFFSET: i64 = 1 << 20;

impl LevelComplex {
    fn build(complex: SimplicialComplex, level: Vec<i64>, period: Option<i64>) -> LevelComplex {
        let lifted = complex
            .all_simplices()
            .map(|s| {
                let lv: Vec<i64> = s.iter().map(|&v| level[v]).collect();
                let wraps = period.is_some_and(|p| lv.contains(&p) && lv.contains(&1));
                let verts: Vec<(usize, i64)> = s.iter().map(|&v| (v, (wraps && level[v] == 1) as i64)).collect();
                let p = period.unwrap_or(0);
                let cover: Vec<i64> = verts.iter().map(|&(v, k)| level[v] + p * k).collect();
                (verts, *cover.iter().min().unwrap(), *cover.iter().max().unwrap())
            })
            .collect();
        LevelComplex { complex, level, period, lifted }
    }

    fn label(&self, v: usize, sheet: i64) -> usize {
        ((sheet + SHEET_OFFSET) as usize) * self.level.len() + v
    }

    /// Decodes a cover label into `(vertex, sheet)`.
    pub fn unlabel(&self, label: usize) -> (usize, i64) {
        let n = self.level.len();
        (label % n, (label / n) as i64 - SHEET_OFFSET)
    }

    /// Level of a cover vertex label.
    pub fn cover_level(&self, label: usize) -> i64 {
        let (v, k) = self.unlabel(label);
        self.level[v] + self.period.unwrap_or(0) * k
    }

    /// The full subcomplex of the infinite cyclic covering (or of the complex
    /// itself, for real-valued maps) on levels `lo..=hi`. Vertices are cover
    /// labels ordered by sheet, then by vertex.
    pub fn window(&self, lo: i64, hi: i64) -> SimplicialComplex {
        let mut out = Vec::new();
        for (verts, mn, mx) in &self.lifted {
            match self.period {
                None => {
                    if lo <= *mn && *mx <= hi {
                        out.push(verts.iter().map(|&(v, _)| self.label(v, 0)).collect());
                    }
                }
                Some(p) => {
                    let k0 = (lo - mn).div_euclid(p) + ((lo - mn).rem_euclid(p) != 0) as i64;
                    let mut k = k0;
                    while mx + p * k <= hi {
                        out.push(verts.iter().map(|&(v, s)| self.label(v, s + k)).collect());
                        k += 1;
                    }
                }
            }
        }
        if out.is_empty() {
            return SimplicialComplex::empty();
        }
        SimplicialComplex::new(out).expect("lifted simplices")
    }

    /// The level set at `level`.
    pub fn fiber(&self, level: i64) -> SimplicialComplex {
        self.window(level, level)
    }

    /// The preimage of the arc of levels `lo..=hi`; arcs covering the whole
    /// circle are rejected, use [`LevelComplex::window`] on the cover instead.
    pub fn interlevel(&self, lo: i64, hi: i64) -> Result<SimplicialComplex> {
        if lo > hi {
            return Err(Error::Argument(format!("empty arc [{lo},{hi}]")));
        }
        if let Some(p) = self.period {
            if hi - lo >= p {
                return Err(Error::Argument("arc covers the whole circle".into()));
            }
        }
        Ok(self.window(lo, hi))
    }

    pub fn min_level(&self) -> i64 {
        *self.level.iter().min().unwrap_or(&0)
    }

    pub fn max_level(&self) -> i64 {
        *self.level.iter().max().unwrap_or(&0)
    }
}

/// Subdivides every edge whose endpoints have different images at the
/// midpoint of the target edge, one stellar edge subdivision at a time, in
/// sorted edge order. New vertices are numbered from `n` upwards.
fn subdivide(
    x: &SimplicialComplex,
    n: usize,
    image: &[usize],
    vertex_level: impl Fn(usize) -> i64,
    midpoint_level: impl Fn(usize, usize) -> Option<i64>,
) -> Result<(SimplicialComplex, Vec<i64>)> {
    if let Some(v) = x.vertices().into_iter().find(|&v| v >= n) {
        return Err(Error::Input(format!("simplices: vertex {v} exceeds the vertex count {n}")));
    }
    if image.len() != n {
        return Err(Error::Input(format!("vertex_image: expected {n} entries, got {}", image.len())));
    }
    for s in x.all_simplices() {
        let imgs: BTreeSet<usize> = s.iter().map(|&v| image[v]).collect();
        let ok = match imgs.len() {
            1 => true,
            2 => {
                let mut it = imgs.iter();
                let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
                midpoint_level(a, b).is_some()
            }
            _ => false,
        };
        if !ok {
            return Err(Error::NonSimplicial(format!("simplex {s:?} maps onto images {imgs:?}")));
        }
    }
    let mut level: Vec<i64> = (0..n).map(|v| vertex_level(image[v])).collect();
    let crossing: Vec<Vec<usize>> = x.simplices(1).iter().filter(|e| image[e[0]] != image[e[1]]).cloned().collect();
    let mut facets: Vec<Vec<usize>> = x.facets();
    for (k, e) in crossing.iter().enumerate() {
        let (a, b) = (e[0], e[1]);
        let mid = n + k;
        level.push(midpoint_level(image[a], image[b]).unwrap());
        let mut next = Vec::with_capacity(facets.len() + 4);
        for s in facets {
            if s.contains(&a) && s.contains(&b) {
                for drop in [a, b] {
                    let mut t: Vec<usize> = s.iter().copied().filter(|&v| v != drop).collect();
                    t.push(mid);
                    t.sort_unstable();
                    next.push(t);
                }
            } else {
                next.push(s);
            }
        }
        facets = next;
    }
    let out = if facets.is_empty() { SimplicialComplex::empty() } else { SimplicialComplex::new(facets)? };
    Ok((out, level))
}

/// Subdivision of a circle-valued map, levels `1..=2m`.
pub fn subdivide_circle(x: &SimplicialComplex, f: &CircleMap) -> Result<LevelComplex> {
    let n = f.vertex_image.len();
    let (c, level) = subdivide(x, n, &f.vertex_image, |j| f.vertex_level(j), |a, b| f.midpoint_level(a, b))?;
    Ok(LevelComplex::build(c, level, Some(2 * f.m as i64)))
}

/// Subdivision of a real-valued map, levels `0..=2k`.
pub fn subdivide_real(x: &SimplicialComplex, f: &IntervalMap) -> Result<LevelComplex> {
    let n = f.vertex_image.len();
    let (c, level) = subdivide(
        x,
        n,
        &f.vertex_image,
        |j| 2 * j as i64,
        |a, b| (a.abs_diff(b) == 1).then(|| 2 * a.min(b) as i64 + 1),
    )?;
    Ok(LevelComplex::build(c, level, None))
}

/// Homology of windows, computed once per level range.
struct WindowCache<'a> {
    lc: &'a LevelComplex,
    field: Field,
    r: usize,
    cache: HashMap<(i64, i64), (SimplicialComplex, Homology)>,
}

impl<'a> WindowCache<'a> {
    fn new(lc: &'a LevelComplex, field: Field, r: usize) -> Self {
        WindowCache { lc, field, r, cache: HashMap::new() }
    }

    fn get(&mut self, lo: i64, hi: i64) -> &(SimplicialComplex, Homology) {
        let (lc, field, r) = (self.lc, self.field, self.r);
        self.cache.entry((lo, hi)).or_insert_with(|| {
            let k = lc.window(lo, hi);
            let h = homology(&k, field, r);
            (k, h)
        })
    }

    fn dim(&mut self, lo: i64, hi: i64) -> usize {
        self.get(lo, hi).1.dim()
    }

    /// The map induced by `[a, b] ⊆ [lo, hi]`.
    fn inclusion(&mut self, a: i64, b: i64, lo: i64, hi: i64) -> Result<Matrix> {
        let small = self.get(a, b).clone();
        let big = self.get(lo, hi);
        induced_map(&small.0, &small.1, &big.0, &big.1)
    }
}

/// `ρ_r(f)`: `V_{2i−1} = H_r` of the regular level `2i−1`, `V_{2i} = H_r` of
/// the interlevel `[2i−1, 2i+1]`, with inclusion-induced `α_i` and `β_i`.
pub fn build_rep(x: &SimplicialComplex, f: &CircleMap, field: Field, r: usize) -> Result<GRep> {
    let lc = subdivide_circle(x, f)?;
    build_rep_leveled(&lc, f.m, &f.angles, field, r)
}

pub fn build_rep_leveled(lc: &LevelComplex, m: usize, angles: &[f64], field: Field, r: usize) -> Result<GRep> {
    let mut wc = WindowCache::new(lc, field, r);
    let mut dims = Vec::with_capacity(2 * m);
    let mut alpha = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    for i in 1..=m as i64 {
        let (t, s) = (2 * i - 1, 2 * i + 1);
        dims.push(wc.dim(t, t));
        dims.push(wc.dim(t, s));
        alpha.push(wc.inclusion(t, t, t, s)?);
        // for i = m the level 2m + 1 is level 1 on the next sheet, whose basis
        // is the translate of the one chosen for V_1
        beta.push(wc.inclusion(s, s, t, s)?);
    }
    GRep::new(field, m, r, dims, alpha, beta, Some(angles.to_vec()))
}

/// The linear zigzag of a real-valued map on vertices `0..=2k`: odd vertex
/// `2j+1` is the regular level between `c_j` and `c_{j+1}`, even vertex `2j`
/// the interlevel `[2j−1, 2j+1]` around `c_j`.
pub fn build_rep_real(x: &SimplicialComplex, f: &IntervalMap, field: Field, r: usize) -> Result<ZWindowRep> {
    let lc = subdivide_real(x, f)?;
    build_rep_real_leveled(&lc, f.k, &f.values, field, r)
}

pub fn build_rep_real_leveled(lc: &LevelComplex, k: usize, values: &[f64], field: Field, r: usize) -> Result<ZWindowRep> {
    let mut wc = WindowCache::new(lc, field, r);
    let hi = 2 * k as i64;
    let span = |v: i64| if v % 2 == 0 { (v - 1, v + 1) } else { (v, v) };
    let dims = (0..=hi)
        .map(|v| {
            let (a, b) = span(v);
            wc.dim(a, b)
        })
        .collect();
    let mut maps = Vec::new();
    for a in 0..hi {
        let (odd, even) = if a % 2 == 1 { (a, a + 1) } else { (a + 1, a) };
        let (lo, up) = span(even);
        maps.push(wc.inclusion(odd, odd, lo, up)?);
    }
    ZWindowRep::new(field, r, 0, dims, maps, values.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimplicialComplex {
        SimplicialComplex::new((0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
    }

    #[test]
    fn identity_circle_becomes_a_hexagon() {
        let f = CircleMap::new(3, None, vec![0, 1, 2]).unwrap();
        let lc = subdivide_circle(&cycle(3), &f).unwrap();
        assert_eq!((lc.complex.count(0), lc.complex.count(1)), (6, 6));
        assert_eq!(lc.level, vec![2, 4, 6, 3, 1, 5]);
    }

    #[test]
    fn identity_circle_rep_is_regular() {
        let q = Field::Rational;
        let f = CircleMap::new(3, None, vec![0, 1, 2]).unwrap();
        let rho = build_rep(&cycle(3), &f, q, 0).unwrap();
        assert_eq!(rho.dims, vec![1; 6]);
        for a in rho.alpha.iter().chain(&rho.beta) {
            assert_eq!(*a, Matrix::identity(q, 1));
        }
        assert_eq!(build_rep(&cycle(3), &f, q, 1).unwrap().total_dim(), 0);
    }

    #[test]
    fn height_on_a_circle() {
        let f5 = Field::Prime(5);
        let g = IntervalMap::new(1, None, vec![0, 1, 1, 0]).unwrap();
        let w = build_rep_real(&cycle(4), &g, f5, 0).unwrap();
        assert_eq!(w.dims, vec![1, 2, 1]);
        assert_eq!(w.maps[0], Matrix::from_int_rows(f5, &[&[1, 1]]));
        assert_eq!(w.maps[1], Matrix::from_int_rows(f5, &[&[1, 1]]));
    }

    #[test]
    fn non_simplicial_map_is_rejected() {
        let x = SimplicialComplex::new(vec![vec![0, 1, 2]]).unwrap();
        let f = CircleMap::new(3, None, vec![0, 1, 2]).unwrap();
        assert!(matches!(subdivide_circle(&x, &f), Err(Error::NonSimplicial(_))));
    }

    #[test]
    fn cover_window_unrolls_the_circle() {
        let f = CircleMap::new(3, None, vec![0, 1, 2]).unwrap();
        let lc = subdivide_circle(&cycle(3), &f).unwrap();
        // two periods of the hexagon: a path with 13 vertices
        let w = lc.window(1, 13);
        assert_eq!((w.count(0), w.count(1)), (13, 12));
        assert!(lc.interlevel(1, 7).is_err());
        assert_eq!(lc.interlevel(1, 6).unwrap().count(1), 5);
    }
}
