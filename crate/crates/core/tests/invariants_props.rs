use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spiralis::complex::{CircleMap, SimplicialComplex};
use spiralis::exactlin::{Field, Matrix, Scalar};
use spiralis::fixtures::{self, random_circle_fixture};
use spiralis::invariants::{local_betti, polynomial, ConfigPoint, Configuration, Space};
use spiralis::measures::Box2;
use spiralis::pipeline::{Analysis, MapKind};

/// Signed number of times the edge `v → w` crosses the angle `0 ≡ 2π`.
fn winding(f: &CircleMap, v: usize, w: usize) -> i32 {
    let (a, b) = (f.vertex_image[v], f.vertex_image[w]);
    if a + 1 == f.m && b == 0 {
        1
    } else if a == 0 && b + 1 == f.m {
        -1
    } else {
        0
    }
}

/// Boundary `C_d → C_{d−1}` with coefficients in the rank-one local system
/// whose monodromy along a loop is `u` to the winding number.
fn twisted_boundary(x: &SimplicialComplex, f: &CircleMap, u: &Scalar, d: usize) -> Matrix {
    let field = u.field();
    let mut b = Matrix::zeros(field, x.count(d - 1), x.count(d));
    for (j, s) in x.simplices(d).iter().enumerate() {
        for i in 0..=d {
            let mut face = s.clone();
            face.remove(i);
            let sign = if i % 2 == 0 { field.one() } else { -field.one() };
            // faces keep their first vertex except the zeroth one
            let coeff = if i == 0 {
                let w = winding(f, s[0], s[1]);
                if w >= 0 { u.pow(w as u64) } else { u.inv().unwrap().pow((-w) as u64) }
            } else {
                field.one()
            };
            b.set(x.index_of(&face).unwrap(), j, &sign * &coeff);
        }
    }
    b
}

fn twisted_betti(x: &SimplicialComplex, f: &CircleMap, u: &Scalar, r: usize) -> usize {
    let rank = |d: usize| if d == 0 || d > x.dim().unwrap() { 0 } else { twisted_boundary(x, f, u, d).rank() };
    x.count(r) - rank(r) - rank(r + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn local_coefficient_homology_matches_the_representation(seed in any::<u64>(), u in 1i64..5) {
        let fx = random_circle_fixture(&mut ChaCha8Rng::seed_from_u64(seed), 120);
        let MapKind::Circle(f) = &fx.map else { unreachable!() };
        let field = Field::Prime(5);
        let u = field.from_i64(u);
        let an = Analysis::new(fx.complex.clone(), fx.map.clone(), field).unwrap();
        let top = fx.complex.dim().unwrap();
        for d in 2..=top {
            let dd = &twisted_boundary(&fx.complex, f, &u, d - 1) * &twisted_boundary(&fx.complex, f, &u, d);
            prop_assert!(dd.is_zero());
        }
        for r in 0..=top {
            let from_rep = local_betti(an.circle_rep(r).unwrap(), r.checked_sub(1).and_then(|k| an.circle_rep(k)), &u).unwrap();
            prop_assert_eq!(twisted_betti(&fx.complex, f, &u, r), from_rep, "degree {}", r);
        }
    }

    #[test]
    fn novikov_betti_is_generic_local_homology(seed in any::<u64>()) {
        let fx = random_circle_fixture(&mut ChaCha8Rng::seed_from_u64(seed), 120);
        let MapKind::Circle(f) = &fx.map else { unreachable!() };
        let field = Field::Rational;
        let an = Analysis::new(fx.complex.clone(), fx.map.clone(), field).unwrap();
        // skip the rare u that is an eigenvalue of a monodromy block
        let u = [1009, 2003, 3001]
            .iter()
            .map(|&n| field.from_i64(n))
            .find(|u| an.decomps.iter().all(|d| d.jordan_count_at(u) == 0 && d.jordan_count_at(&u.inv().unwrap()) == 0))
            .unwrap();
        for r in 0..=fx.complex.dim().unwrap() {
            prop_assert_eq!(twisted_betti(&fx.complex, f, &u, r), an.novikov_betti(r));
            prop_assert_eq!(an.config_c(r).cardinality(), an.novikov_betti(r));
        }
    }

    #[test]
    fn polynomial_has_a_nonzero_constant_term(pts in prop::collection::vec((-TAU..2.0 * TAU, -TAU..2.0 * TAU, 1usize..3), 0..6)) {
        let c = Configuration {
            degree: 0,
            space: Space::Torus,
            points: pts.iter().map(|&(a, b, mult)| ConfigPoint { ia: 0, ib: 0, a, b, mult }).collect(),
        };
        let p = polynomial(&c);
        prop_assert_eq!(p.len(), c.cardinality() + 1);
        prop_assert!(p[0].norm() > 0.0);
        prop_assert!((p[p.len() - 1].re - 1.0).abs() < 1e-12);
    }
}

#[test]
fn box_around_a_bar_has_measure_one() {
    let fx = fixtures::height_circle_real();
    let an = Analysis::new(fx.complex.clone(), fx.map.clone(), Field::Prime(5)).unwrap();
    let ms = an.measures();
    // the closed degree-0 bar [0, 1] is the point (0, 1)
    assert_eq!(ms.mu_box(0, &Box2::new(-0.5, 0.5, 0.5, 1.5).unwrap()).unwrap(), 1);
    assert_eq!(ms.mu_box(0, &Box2::new(0.5, 1.5, 0.5, 1.5).unwrap()).unwrap(), 0);
    // the open degree-0 bar (0, 1) is the degree-1 point (1, 0)
    assert_eq!(ms.mu_box(1, &Box2::new(0.5, 1.5, -0.5, 0.5).unwrap()).unwrap(), 1);
}

#[test]
fn local_homology_sees_the_halving_monodromy() {
    let fx = fixtures::halving_mapping_torus();
    let MapKind::Circle(f) = &fx.map else { unreachable!() };
    let field = Field::Prime(5);
    let an = Analysis::new(fx.complex.clone(), fx.map.clone(), field).unwrap();
    let mut dims = Vec::new();
    for u in 1..5 {
        let u = field.from_i64(u);
        let rep = local_betti(an.circle_rep(1).unwrap(), an.circle_rep(0), &u).unwrap();
        let direct = twisted_betti(&fx.complex, f, &u, 1);
        assert_eq!(direct, rep, "u = {u}");
        dims.push(direct);
    }
    // exactly one of u = 2 and u = 3 = 1/2 picks up the fibre class
    assert_eq!(dims[0], 1);
    assert_ne!(dims[1], dims[2]);
}
