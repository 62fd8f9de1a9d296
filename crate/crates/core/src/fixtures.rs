//! Small spaces with maps to the circle or the line, and random inputs for
//! property checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{CircleMap, IntervalMap, SimplicialComplex};
use crate::error::Result;
use crate::exactlin::{CanonicalBlock, CanonicalBlocks, Field, Matrix, Poly, Scalar, Subspace};
use crate::pipeline::MapKind;
use crate::quiver::{BarKind, GRep};
use crate::relation::Relation;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub complex: SimplicialComplex,
    pub map: MapKind,
    /// Dimension when `X` is a closed orientable manifold.
    pub manifold_dim: Option<usize>,
}

fn circle_fixture(name: &str, facets: Vec<Vec<usize>>, m: usize, image: Vec<usize>, manifold_dim: Option<usize>) -> Fixture {
    Fixture {
        name: name.into(),
        complex: SimplicialComplex::new(facets).expect("fixture complex"),
        map: MapKind::Circle(CircleMap::new(m, None, image).expect("fixture map")),
        manifold_dim,
    }
}

/// Simplices of the mapping cylinder of the vertex map `phi` from `k` to
/// another layer: `{v_0..v_j} ∪ {φ(v_j)..φ(v_d)}` for each ordered simplex.
fn cylinder(k: &[Vec<usize>], phi: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in k {
        let mut s = s.clone();
        s.sort_unstable();
        for j in 0..s.len() {
            let mut t: BTreeSet<usize> = s[..=j].iter().copied().collect();
            t.extend(s[j..].iter().map(|&v| phi(v)));
            out.push(t.into_iter().collect());
        }
    }
    out
}

fn offset(k: &[Vec<usize>], by: usize) -> Vec<Vec<usize>> {
    k.iter().map(|s| s.iter().map(|v| v + by).collect()).collect()
}

/// Three layers over the vertices of a triangulated circle, joined by
/// mapping cylinders `L_1 → L_0`, `L_1 → L_2` and `L_2 → L_0`. Layer `ℓ`
/// has its vertices at `ℓ·stride + v` and maps to circle vertex `ℓ`.
fn three_layer_torus(
    layers: [&[Vec<usize>]; 3],
    stride: usize,
    down: impl Fn(usize) -> usize,
    up: impl Fn(usize) -> usize,
    glue: impl Fn(usize) -> usize,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut facets = Vec::new();
    for (l, k) in layers.iter().enumerate() {
        facets.extend(offset(k, l * stride));
    }
    facets.extend(cylinder(&offset(layers[1], stride), |v| down(v - stride)));
    facets.extend(cylinder(&offset(layers[1], stride), |v| 2 * stride + up(v - stride)));
    facets.extend(cylinder(&offset(layers[2], 2 * stride), |v| glue(v - 2 * stride)));
    let image = (0..3 * stride).map(|v| v / stride).collect();
    (facets, image)
}

fn triangle_cycle() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 2], vec![0, 2]]
}

/// The boundary of a triangle mapped identically onto the circle.
pub fn identity_circle() -> Fixture {
    circle_fixture("identity circle", triangle_cycle(), 3, vec![0, 1, 2], Some(1))
}

/// `S¹ × S¹ → S¹`, projection onto the first factor.
pub fn torus_projection() -> Fixture {
    let c = triangle_cycle();
    let (facets, image) = three_layer_torus([&c, &c, &c], 3, |v| v, |v| v, |v| v);
    circle_fixture("torus projection", facets, 3, image, Some(2))
}

/// Mapping torus of a reflection of the circle: a Klein bottle fibred over
/// the circle, with monodromy `−1` on `H_1` of the fibre.
pub fn klein_mapping_torus() -> Fixture {
    let c = triangle_cycle();
    let (facets, image) = three_layer_torus([&c, &c, &c], 3, |v| v, |v| v, |v| (3 - v) % 3);
    circle_fixture("klein mapping torus", facets, 3, image, None)
}

/// Mapping torus of a wedge of two circles whose monodromy on `H_1` is
/// `[[1, 1], [0, 1]]`: one layer subdivides the second loop, which one
/// cylinder collapses back and the other wraps around both loops.
pub fn unipotent_mapping_torus() -> Fixture {
    // o = 0, loop a = 0-1-2-0, loop b = 0-3-4-0
    let wedge: Vec<Vec<usize>> = vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]];
    // loop b subdivided as 0-3-4-5-6-7-0
    let long: Vec<Vec<usize>> =
        vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![4, 5], vec![5, 6], vec![6, 7], vec![0, 7]];
    let collapse = |v: usize| if v >= 5 { 0 } else { v };
    let wrap = |v: usize| match v {
        5 => 0,
        6 => 1,
        7 => 2,
        v => v,
    };
    let (facets, image) = three_layer_torus([&wedge, &long, &wedge], 8, collapse, wrap, |v| v);
    circle_fixture("unipotent mapping torus", facets, 3, image, None)
}

/// A mapping telescope with monodromy `1/2` on `H_1`: a hexagon wraps twice
/// around a triangle on one side and once on the other.
pub fn halving_mapping_torus() -> Fixture {
    let tri = triangle_cycle();
    let hex: Vec<Vec<usize>> = (0..6).map(|v| vec![v.min((v + 1) % 6), v.max((v + 1) % 6)]).collect();
    let (facets, image) = three_layer_torus([&tri, &hex, &hex], 6, |v| v % 3, |v| v, |v| v / 2);
    circle_fixture("halving mapping torus", facets, 3, image, None)
}

/// The octahedron mapped into the arc `[0, π]` by height: the south pole
/// at `2π ≡ 0`, the equator at `π/2`, the north pole at `π`.
pub fn sphere_into_arc() -> Fixture {
    let (s, n) = (0, 5);
    let eq = [1, 2, 3, 4];
    let mut facets = Vec::new();
    for k in 0..4 {
        let (a, b) = (eq[k], eq[(k + 1) % 4]);
        facets.push(vec![s, a, b]);
        facets.push(vec![n, a, b]);
    }
    circle_fixture("sphere into arc", facets, 4, vec![3, 0, 0, 0, 0, 1], Some(2))
}

/// A square mapped into the arc `[0, π]`, folded at its two ends.
pub fn height_circle() -> Fixture {
    let facets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
    circle_fixture("height circle", facets, 4, vec![3, 0, 1, 0], Some(1))
}

/// The square with the height function, values `0` and `1`.
pub fn height_circle_real() -> Fixture {
    let facets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
    Fixture {
        name: "height circle (real)".into(),
        complex: SimplicialComplex::new(facets).expect("fixture complex"),
        map: MapKind::Real(IntervalMap::new(1, None, vec![0, 1, 1, 0]).expect("fixture map")),
        manifold_dim: Some(1),
    }
}

/// Two legs rising from `0` that merge at `π`, and a stem continuing to
/// `3π/2`.
pub fn y_shape() -> Fixture {
    let facets = vec![vec![0, 1], vec![1, 2], vec![3, 4], vec![2, 4], vec![2, 5]];
    circle_fixture("y shape", facets, 4, vec![3, 0, 1, 3, 0, 2], None)
}

/// Every fixture with a circle-valued map.
pub fn circle_fixtures() -> Vec<Fixture> {
    vec![
        identity_circle(),
        torus_projection(),
        klein_mapping_torus(),
        unipotent_mapping_torus(),
        halving_mapping_torus(),
        sphere_into_arc(),
        height_circle(),
        y_shape(),
    ]
}

/// Random complex of dimension at most 2 whose simplices all fit over an
/// edge of the target, with at most `max_simplices` simplices.
fn random_complex(
    rng: &mut impl Rng,
    n: usize,
    image: &[usize],
    adjacent: impl Fn(usize, usize) -> bool,
    max_simplices: usize,
) -> SimplicialComplex {
    let fits = |s: &[usize]| {
        let im: BTreeSet<usize> = s.iter().map(|&v| image[v]).collect();
        im.len() <= 2 && im.iter().all(|&a| im.iter().all(|&b| adjacent(a, b)))
    };
    let mut cand: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if fits(&[a, b]) {
                cand.push(vec![a, b]);
            }
            for c in b + 1..n {
                if fits(&[a, b, c]) {
                    cand.push(vec![a, b, c]);
                }
            }
        }
    }
    cand.shuffle(rng);
    let mut gens: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for s in cand {
        if rng.gen_bool(0.45) {
            gens.push(s);
            let k = SimplicialComplex::new(gens.clone()).unwrap();
            if k.all_simplices().count() > max_simplices {
                gens.pop();
                break;
            }
        }
    }
    SimplicialComplex::new(gens).unwrap()
}

/// A random complex with a simplicial map to a circle with `3..=5`
/// vertices and randomly spaced angles.
pub fn random_circle_fixture(rng: &mut impl Rng, max_simplices: usize) -> Fixture {
    let m = rng.gen_range(3..=5);
    let n = rng.gen_range(3..=12);
    let image: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
    let adjacent = |a: usize, b: usize| a == b || (a + 1) % m == b || (b + 1) % m == a;
    let complex = random_complex(rng, n, &image, adjacent, max_simplices);
    let mut angles: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..6.2)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| *a - *b < 0.05);
    let angles = if angles.len() == m { Some(angles) } else { None };
    Fixture {
        name: "random circle map".into(),
        complex,
        map: MapKind::Circle(CircleMap::new(m, angles, image).unwrap()),
        manifold_dim: None,
    }
}

/// A random complex with a simplicial map to a path with `2..=5`
/// vertices.
pub fn random_real_fixture(rng: &mut impl Rng, max_simplices: usize) -> Fixture {
    let k = rng.gen_range(1..=4);
    let n = rng.gen_range(2..=12);
    let image: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=k)).collect();
    let complex = random_complex(rng, n, &image, |a, b| a.abs_diff(b) <= 1, max_simplices);
    Fixture {
        name: "random real map".into(),
        complex,
        map: MapKind::Real(IntervalMap::new(k, None, image).unwrap()),
        manifold_dim: None,
    }
}

pub fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    match field {
        Field::Rational if rng.gen_bool(0.3) => {
            Scalar::from_ratio(field, rng.gen_range(-4..=4), rng.gen_range(1..=3)).unwrap()
        }
        _ => field.from_i64(rng.gen_range(-4..=4)),
    }
}

pub fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_scalar(rng, field))
}

pub fn random_invertible(rng: &mut impl Rng, field: Field, n: usize) -> Matrix {
    loop {
        let a = random_matrix(rng, field, n, n);
        if a.is_invertible() {
            return a;
        }
    }
}

/// A random relation `κ^n ⇝ κ^n` spanned by sparse random vectors, so that
/// kernels, indeterminacies and proper domains occur often.
pub fn random_relation(rng: &mut impl Rng, field: Field, n: usize) -> Relation {
    let k = rng.gen_range(0..=2 * n);
    let gens = Matrix::from_fn(field, 2 * n, k, |_, _| {
        if rng.gen_bool(0.6) {
            field.zero()
        } else {
            random_scalar(rng, field)
        }
    });
    Relation::new(n, n, Subspace::span(&gens)).expect("graph lives in V × V")
}

/// A direct sum of indecomposables with the bars and blocks it was built
/// from.
#[derive(Clone, Debug)]
pub struct PlantedSum {
    pub rep: GRep,
    /// `(kind, left index, right index)` per interval summand.
    pub bars: Vec<(BarKind, i64, i64)>,
    pub jordans: CanonicalBlocks,
}

fn random_block(rng: &mut impl Rng, field: Field, room: usize) -> CanonicalBlock {
    let quadratic = match field {
        Field::Prime(5) => Some(Poly::from_ints(field, &[-2, 0, 1])),
        Field::Rational => Some(Poly::from_ints(field, &[1, 0, 1])),
        _ => None,
    };
    if let Some(q) = quadratic.filter(|_| room >= 2 && rng.gen_bool(0.25)) {
        return CanonicalBlock::new(q, 1);
    }
    let u = loop {
        let u = random_scalar(rng, field);
        if !u.is_zero() {
            break u;
        }
    };
    CanonicalBlock::jordan(&u, rng.gen_range(1..=room.min(2)))
}

/// Up to `parts` random summands with every vertex dimension at most
/// `max_dim`, conjugated by random base changes.
pub fn planted_sum(rng: &mut impl Rng, field: Field, m: usize, max_dim: usize, parts: usize) -> Result<PlantedSum> {
    let period = 2 * m as i64;
    let mut dims = vec![0usize; 2 * m];
    let mut summands = Vec::new();
    let mut bars = Vec::new();
    let mut blocks = Vec::new();
    for _ in 0..parts {
        if rng.gen_bool(0.7) {
            let p = rng.gen_range(2..=period + 1);
            let q = p + rng.gen_range(0..3 * period);
            let rep = GRep::interval(field, m, 0, p, q, None)?;
            if rep.dims.iter().zip(&dims).any(|(a, b)| a + b > max_dim) {
                continue;
            }
            let (kind, i, c) = BarKind::from_support(p, q);
            bars.push((kind, i, c));
            summands.push(rep);
        } else {
            let room = max_dim - dims.iter().max().unwrap();
            if room == 0 {
                continue;
            }
            let b = random_block(rng, field, room);
            summands.push(GRep::jordan(m, 0, &b, None)?);
            blocks.push(b);
        }
        let last = summands.last().unwrap();
        for (d, e) in dims.iter_mut().zip(&last.dims) {
            *d += e;
        }
    }
    let rep = if summands.is_empty() { GRep::zero(field, m, 0, None) } else { GRep::direct_sum(&summands)? };
    let base: Vec<Matrix> = rep.dims.iter().map(|&d| random_invertible(rng, field, d)).collect();
    let rep = rep.conjugate(&base)?;
    bars.sort();
    Ok(PlantedSum { rep, bars, jordans: CanonicalBlocks::new(blocks) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;

    fn betti(k: &SimplicialComplex, f: Field) -> Vec<usize> {
        (0..=k.dim().unwrap()).map(|r| homology(k, f, r).dim()).collect()
    }

    #[test]
    fn fixture_homology() {
        let q = Field::Rational;
        assert_eq!(betti(&torus_projection().complex, q), vec![1, 2, 1]);
        assert_eq!(betti(&klein_mapping_torus().complex, q), vec![1, 1, 0]);
        assert_eq!(betti(&klein_mapping_torus().complex, Field::Prime(2)), vec![1, 2, 1]);
        assert_eq!(betti(&unipotent_mapping_torus().complex, q), vec![1, 2, 1]);
        assert_eq!(betti(&halving_mapping_torus().complex, q), vec![1, 1, 0]);
        assert_eq!(betti(&halving_mapping_torus().complex, Field::Prime(2)), vec![1, 1, 0]);
        assert_eq!(betti(&sphere_into_arc().complex, q), vec![1, 0, 1]);
        assert_eq!(betti(&y_shape().complex, q), vec![1, 0]);
    }

    #[test]
    fn torus_is_a_closed_surface() {
        let k = torus_projection().complex;
        assert_eq!(k.euler_characteristic(), 0);
        for e in k.simplices(1) {
            let cofaces = k.simplices(2).iter().filter(|t| e.iter().all(|v| t.contains(v))).count();
            assert_eq!(cofaces, 2);
        }
    }
}
