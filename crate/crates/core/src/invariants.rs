//! Configurations, Betti and Novikov–Betti numbers, local-coefficient Betti
//! numbers and monodromy, read off the decompositions of `ρ_r(f)`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{canonical_form, CanonicalBlocks, Field, Matrix, Scalar};
use crate::quiver::{lifted_angle, BarKind, Decomposition, GRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// `R² / Z·(2π, 2π)`.
    Torus,
    Plane,
}

/// Critical values by index: lifted angles for circle maps, a plain list
/// for real-valued maps.
#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    Angles(Vec<f64>),
    Reals(Vec<f64>),
}

impl Values {
    pub fn space(&self) -> Space {
        match self {
            Values::Angles(_) => Space::Torus,
            Values::Reals(_) => Space::Plane,
        }
    }

    pub fn at(&self, c: i64) -> f64 {
        match self {
            Values::Angles(a) => lifted_angle(a, c),
            Values::Reals(v) => v[c as usize],
        }
    }

    /// Shifts an index pair along the diagonal so that the first index is in
    /// `1..=m`; identity on the plane.
    pub fn normalize(&self, ia: i64, ib: i64) -> (i64, i64) {
        match self {
            Values::Angles(a) => {
                let m = a.len() as i64;
                let k = (ia - 1).div_euclid(m);
                (ia - m * k, ib - m * k)
            }
            Values::Reals(_) => (ia, ib),
        }
    }
}

/// A point of a configuration, keyed by critical indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigPoint {
    pub ia: i64,
    pub ib: i64,
    pub a: f64,
    pub b: f64,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Configuration {
    pub degree: usize,
    pub space: Space,
    pub points: Vec<ConfigPoint>,
}

impl Configuration {
    /// Merges index pairs into points, normalized along the diagonal.
    pub fn from_indices(degree: usize, values: &Values, pairs: impl IntoIterator<Item = (i64, i64, usize)>) -> Configuration {
        let mut acc: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (ia, ib, mult) in pairs {
            if mult > 0 {
                *acc.entry(values.normalize(ia, ib)).or_default() += mult;
            }
        }
        let points = acc
            .into_iter()
            .map(|((ia, ib), mult)| ConfigPoint { ia, ib, a: values.at(ia), b: values.at(ib), mult })
            .collect();
        Configuration { degree, space: values.space(), points }
    }

    pub fn empty(degree: usize, space: Space) -> Configuration {
        Configuration { degree, space, points: Vec::new() }
    }

    /// Total multiplicity.
    pub fn cardinality(&self) -> usize {
        self.points.iter().map(|p| p.mult).sum()
    }

    /// `(ia, ib) ↦ mult`.
    pub fn index_multiset(&self) -> BTreeMap<(i64, i64), usize> {
        self.points.iter().map(|p| ((p.ia, p.ib), p.mult)).collect()
    }

    /// Points with each multiplicity expanded, as coordinate pairs.
    pub fn expanded(&self) -> Vec<(f64, f64)> {
        self.points.iter().flat_map(|p| std::iter::repeat((p.a, p.b)).take(p.mult)).collect()
    }
}

/// `C_r(f)`: closed `r`-bars `[a, b] ↦ (a, b)` and open `(r−1)`-bars
/// `(α, β) ↦ (β, α)`.
pub fn config_c(closed_r: &Decomposition, open_rm1: Option<&Decomposition>, values: &Values) -> Configuration {
    let mut pairs = Vec::new();
    for b in closed_r.bars.iter().filter(|b| b.kind == BarKind::Closed) {
        pairs.push((b.left_index, b.right_index, b.multiplicity));
    }
    if let Some(d) = open_rm1 {
        for b in d.bars.iter().filter(|b| b.kind == BarKind::Open) {
            pairs.push((b.right_index, b.left_index, b.multiplicity));
        }
    }
    Configuration::from_indices(closed_r.degree, values, pairs)
}

/// `C^m_r(f)`: `[a, b) ↦ (a, b)` and `(α, β] ↦ (β, α)`.
pub fn config_cm(d: &Decomposition, values: &Values) -> Result<Configuration> {
    let mut pairs = Vec::new();
    for b in &d.bars {
        match b.kind {
            BarKind::ClosedOpen => pairs.push((b.left_index, b.right_index, b.multiplicity)),
            BarKind::OpenClosed => pairs.push((b.right_index, b.left_index, b.multiplicity)),
            _ => continue,
        }
        if b.left_index == b.right_index {
            return Err(Error::Internal(format!("half-open bar {b} has equal endpoints")));
        }
    }
    Ok(Configuration::from_indices(d.degree, values, pairs))
}

/// The point of `C ∖ 0` attached to `(a, b)` by `z ↦ e^{i z̄ − (z + z̄)/2}`,
/// `z = a + ib`.
pub fn torus_point(a: f64, b: f64) -> Complex64 {
    Complex64::from_polar((b - a).exp(), a)
}

/// The monic polynomial whose roots are the images of the points, with
/// multiplicity; coefficients from the constant term up.
pub fn polynomial(c: &Configuration) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for (a, b) in c.expanded() {
        let w = torus_point(a, b);
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * w;
        }
        coeffs = next;
    }
    coeffs
}

/// `#ℬ^c_r + #ℬ^o_{r−1}`.
pub fn novikov_betti(decomps: &[Decomposition], r: usize) -> usize {
    let closed = decomps.get(r).map_or(0, |d| d.count(BarKind::Closed));
    let open = if r == 0 { 0 } else { decomps.get(r - 1).map_or(0, |d| d.count(BarKind::Open)) };
    closed + open
}

/// `β_r = #ℬ^c_r + #ℬ^o_{r−1} + #𝒥_{r,1} + #𝒥_{r−1,1}`, with `decomps[r]`
/// the decomposition in degree `r`.
pub fn betti_numbers(decomps: &[Decomposition]) -> Vec<usize> {
    (0..decomps.len())
        .map(|r| {
            let ones = |k: usize| decomps.get(k).map_or(0, |d| d.jordan_ones());
            novikov_betti(decomps, r) + ones(r) + if r == 0 { 0 } else { ones(r - 1) }
        })
        .collect()
}

/// `dim coker M((ρ_r)_u) + dim ker M((ρ_{r−1})_u)`.
pub fn local_betti(rho_r: &GRep, rho_rm1: Option<&GRep>, u: &Scalar) -> Result<usize> {
    if u.is_zero() {
        return Err(Error::Argument("local coefficients need u ≠ 0".into()));
    }
    let coker = rho_r.twist(u)?.ker_coker().1;
    let ker = match rho_rm1 {
        Some(r) => {
            if r.m != rho_r.m {
                return Err(Error::Argument("consecutive degrees must share m".into()));
            }
            r.twist(u)?.ker_coker().0
        }
        None => 0,
    };
    Ok(coker + ker)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Monodromy {
    pub dim: usize,
    pub matrix: Matrix,
    pub canonical: CanonicalBlocks,
}

/// Block-diagonal assembly of the Jordan blocks of one degree.
pub fn monodromy(field: Field, d: &Decomposition) -> Result<Monodromy> {
    let blocks = d.jordan_blocks();
    let matrix = blocks.matrix(field);
    let canonical = canonical_form(&matrix)?;
    if canonical != blocks {
        return Err(Error::Internal("monodromy does not round-trip through its canonical form".into()));
    }
    Ok(Monodromy { dim: matrix.rows(), matrix, canonical })
}

/// Sup-norm distance on the plane, or on the torus `R² / Z·(2π, 2π)`.
pub fn point_distance(space: Space, p: (f64, f64), q: (f64, f64)) -> f64 {
    let (dx, dy) = (p.0 - q.0, p.1 - q.1);
    match space {
        Space::Plane => dx.abs().max(dy.abs()),
        Space::Torus => {
            // translate q by k(2π, 2π); the optimum is near the midpoint shift
            let k0 = ((dx + dy) / (2.0 * TAU)).round();
            (-1..=1)
                .map(|e| {
                    let s = (k0 + e as f64) * TAU;
                    (dx - s).abs().max((dy - s).abs())
                })
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Sup-norm distance to the diagonal.
pub fn diagonal_distance(p: (f64, f64)) -> f64 {
    (p.1 - p.0).abs() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::CanonicalBlock;
    use crate::quiver::decompose_g2m;

    #[test]
    fn open_bar_is_reflected() {
        let f = Field::Prime(5);
        let v = Values::Angles(vec![1.0, 2.0, 3.0]);
        // (θ_1, θ_2) open bar in degree 0 becomes (θ_2, θ_1) in C_1
        let d0 = decompose_g2m(&GRep::interval(f, 3, 0, 3, 3, Some(vec![1.0, 2.0, 3.0])).unwrap()).unwrap();
        let d1 = decompose_g2m(&GRep::zero(f, 3, 1, Some(vec![1.0, 2.0, 3.0]))).unwrap();
        let c = config_c(&d1, Some(&d0), &v);
        assert_eq!(c.index_multiset().into_iter().collect::<Vec<_>>(), vec![((2, 1), 1)]);
        assert_eq!(c.points[0].a, 2.0);
    }

    #[test]
    fn diagonal_shift_normalizes() {
        let v = Values::Angles(vec![1.0, 2.0]);
        assert_eq!(v.normalize(3, 4), (1, 2));
        assert_eq!(v.normalize(0, 1), (2, 3));
    }

    #[test]
    fn empty_polynomial_is_one() {
        let c = Configuration::empty(0, Space::Torus);
        assert_eq!(polynomial(&c), vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn torus_distance_uses_the_diagonal_action() {
        assert!(point_distance(Space::Torus, (0.0, 1.0), (TAU, 1.0 + TAU)) < 1e-12);
        assert!((point_distance(Space::Torus, (0.0, 1.0), (0.1, 1.1)) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn monodromy_of_a_jordan_cell() {
        let f = Field::Prime(5);
        let block = CanonicalBlock::jordan(&f.from_i64(2), 2);
        let d = decompose_g2m(&GRep::jordan(2, 1, &block, None).unwrap()).unwrap();
        let mono = monodromy(f, &d).unwrap();
        assert_eq!(mono.matrix, Matrix::from_int_rows(f, &[&[2, 1], &[0, 2]]));
    }
}
