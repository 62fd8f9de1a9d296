use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spiralis::complex::{homology, CircleMap, SimplicialComplex};
use spiralis::exactlin::Field;
use spiralis::fixtures::{random_circle_fixture, random_real_fixture};
use spiralis::pipeline::{Analysis, MapKind};
use spiralis::quiver::{BarKind, Decomposition};
use spiralis::verify::betti_report;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Rational)]
}

/// Bars by endpoint angles, rounded so that equal angles from different
/// triangulations of the circle compare equal.
fn bar_angles(d: &Decomposition) -> Vec<(BarKind, i64, i64, usize)> {
    let round = |x: f64| (x * 1e9).round() as i64;
    let mut out: Vec<_> = d.bars.iter().map(|b| (b.kind, round(b.left), round(b.right), b.multiplicity)).collect();
    out.sort();
    out
}

/// Splits every edge of a graph at its midpoint and the circle at the
/// midpoints of the edges hit, so the map stays simplicial and unchanged as a
/// piecewise-linear map.
fn subdivide_graph(x: &SimplicialComplex, f: &CircleMap) -> (SimplicialComplex, CircleMap) {
    let m = f.m;
    let mid = |j: usize| {
        let (a, b) = (f.angles[j], if j + 1 < m { f.angles[j + 1] } else { f.angles[0] + TAU });
        let t = (a + b) / 2.0;
        if t > TAU { t - TAU } else { t }
    };
    let mut angles: Vec<f64> = f.angles.iter().copied().chain((0..m).map(mid)).collect();
    angles.sort_by(f64::total_cmp);
    let index = |t: f64| angles.iter().position(|&s| (s - t).abs() < 1e-12).unwrap();
    let n = f.vertex_image.len();
    let mut image: Vec<usize> = f.vertex_image.iter().map(|&j| index(f.angles[j])).collect();
    let mut simplices: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for (e, edge) in x.simplices(1).iter().enumerate() {
        let (u, v) = (edge[0], edge[1]);
        let (ju, jv) = (f.vertex_image[u], f.vertex_image[v]);
        let img = if ju == jv {
            image[u]
        } else if (ju + 1) % m == jv {
            index(mid(ju))
        } else {
            index(mid(jv))
        };
        image.push(img);
        simplices.push(vec![u, n + e]);
        simplices.push(vec![v, n + e]);
    }
    let g = CircleMap::new(2 * m, Some(angles), image).unwrap();
    (SimplicialComplex::new(simplices).unwrap(), g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundaries_compose_to_zero(seed in any::<u64>(), f in field_strategy()) {
        let fx = random_circle_fixture(&mut ChaCha8Rng::seed_from_u64(seed), 120);
        let top = fx.complex.dim().unwrap();
        for d in 1..top {
            let dd = &fx.complex.boundary_matrix(f, d) * &fx.complex.boundary_matrix(f, d + 1);
            prop_assert!(dd.is_zero());
        }
    }

    #[test]
    fn euler_characteristic_from_homology(seed in any::<u64>(), f in field_strategy()) {
        let fx = random_real_fixture(&mut ChaCha8Rng::seed_from_u64(seed), 120);
        let top = fx.complex.dim().unwrap();
        let chi: i64 = (0..=top).map(|r| (-1i64).pow(r as u32) * homology(&fx.complex, f, r).dim() as i64).sum();
        prop_assert_eq!(chi, fx.complex.euler_characteristic());
    }

    #[test]
    fn betti_identities_on_random_maps(seed in any::<u64>(), f in field_strategy(), circle in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fx = if circle { random_circle_fixture(&mut rng, 120) } else { random_real_fixture(&mut rng, 120) };
        let an = Analysis::new(fx.complex.clone(), fx.map.clone(), f).unwrap();
        let report = betti_report(&an).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report);
    }

    #[test]
    fn subdividing_a_graph_keeps_bars_and_blocks(seed in any::<u64>(), f in field_strategy()) {
        let fx = random_circle_fixture(&mut ChaCha8Rng::seed_from_u64(seed), 80);
        let MapKind::Circle(map) = &fx.map else { unreachable!() };
        let graph = SimplicialComplex::new(fx.complex.simplices(0).iter().chain(fx.complex.simplices(1)).cloned()).unwrap();
        let (fine, fine_map) = subdivide_graph(&graph, map);
        let a = Analysis::new(graph, fx.map.clone(), f).unwrap();
        let b = Analysis::new(fine, MapKind::Circle(fine_map), f).unwrap();
        prop_assert_eq!(a.decomps.len(), b.decomps.len());
        for r in 0..a.decomps.len() {
            prop_assert_eq!(bar_angles(&a.decomps[r]), bar_angles(&b.decomps[r]), "degree {}", r);
            prop_assert_eq!(a.decomps[r].jordan_blocks(), b.decomps[r].jordan_blocks());
        }
    }
}
