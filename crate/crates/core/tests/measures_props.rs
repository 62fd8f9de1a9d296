use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spiralis::exactlin::Field;
use spiralis::fixtures::{random_circle_fixture, random_real_fixture, Fixture};
use spiralis::invariants::{ConfigPoint, Configuration, Space};
use spiralis::measures::{bottleneck_cm, matching_distance_c, Box2};
use spiralis::pipeline::{Analysis, MapKind};

fn fixture(seed: u64, circle: bool) -> (Fixture, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fx = if circle { random_circle_fixture(&mut rng, 60) } else { random_real_fixture(&mut rng, 60) };
    (fx, rng)
}

fn analysis(fx: &Fixture) -> Analysis {
    Analysis::new(fx.complex.clone(), fx.map.clone(), Field::Prime(3)).unwrap()
}

/// A value range covering the critical values, one extra period for circles.
fn range(fx: &Fixture) -> (f64, f64) {
    match &fx.map {
        MapKind::Circle(_) => (-TAU, 2.0 * TAU),
        MapKind::Real(g) => (g.values[0] - 1.0, g.values[g.k] + 1.0),
    }
}

fn sorted_pair(rng: &mut impl Rng, lo: f64, hi: f64) -> (f64, f64) {
    let (x, y) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
    (x.min(y), x.max(y))
}

fn configuration(space: Space, pts: &[(f64, f64)]) -> Configuration {
    Configuration {
        degree: 0,
        space,
        points: pts.iter().map(|&(a, b)| ConfigPoint { ia: 0, ib: 0, a, b, mult: 1 }).collect(),
    }
}

fn points(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0..TAU, 0.0..TAU), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn f_and_g_are_monotone(seed in any::<u64>(), circle in any::<bool>()) {
        let (fx, mut rng) = fixture(seed, circle);
        let an = analysis(&fx);
        let ms = an.measures();
        let (lo, hi) = range(&fx);
        for r in 0..=an.top_degree() {
            let (a, a2) = sorted_pair(&mut rng, lo, hi);
            let (b, b2) = sorted_pair(&mut rng, lo, hi);
            let (f, g) = ms.f_g_values(r, a, b).unwrap();
            let (fa, ga) = ms.f_g_values(r, a2, b).unwrap();
            let (fb, gb) = ms.f_g_values(r, a, b2).unwrap();
            prop_assert!(f <= fa && g >= ga, "raising a: F {} → {}, G {} → {}", f, fa, g, ga);
            prop_assert!(f >= fb && g <= gb, "raising b: F {} → {}, G {} → {}", f, fb, g, gb);
        }
    }

    #[test]
    fn f_reflects_under_negation(seed in any::<u64>()) {
        let (fx, mut rng) = fixture(seed, false);
        let an = analysis(&fx);
        let rev = Analysis::new(fx.complex.clone(), fx.map.reversed(), Field::Prime(3)).unwrap();
        let (lo, hi) = range(&fx);
        for r in 0..=an.top_degree() {
            let (a, b) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
            let (f, g) = an.measures().f_g_values(r, a, b).unwrap();
            let (rf, rg) = rev.measures().f_g_values(r, -b, -a).unwrap();
            prop_assert_eq!((f, g), (rf, rg));
        }
    }

    #[test]
    fn box_measure_is_additive(seed in any::<u64>(), circle in any::<bool>()) {
        let (fx, mut rng) = fixture(seed, circle);
        let an = analysis(&fx);
        let ms = an.measures();
        let (lo, hi) = range(&fx);
        for r in 0..=an.top_degree() {
            let mut xs: Vec<f64> = (0..3).map(|_| rng.gen_range(lo..hi)).collect();
            let mut ys: Vec<f64> = (0..3).map(|_| rng.gen_range(lo..hi)).collect();
            xs.sort_by(f64::total_cmp);
            ys.sort_by(f64::total_cmp);
            let mu = |a, b, c, d| ms.mu_box(r, &Box2::new(a, b, c, d).unwrap()).unwrap();
            let whole = mu(xs[0], xs[2], ys[0], ys[2]);
            prop_assert_eq!(whole, mu(xs[0], xs[1], ys[0], ys[2]) + mu(xs[1], xs[2], ys[0], ys[2]));
            prop_assert_eq!(whole, mu(xs[0], xs[2], ys[0], ys[1]) + mu(xs[0], xs[2], ys[1], ys[2]));
        }
    }

    #[test]
    fn f_sums_the_jump_function(seed in any::<u64>(), circle in any::<bool>()) {
        let (fx, mut rng) = fixture(seed, circle);
        let an = analysis(&fx);
        let ms = an.measures();
        let (lo, hi) = range(&fx);
        let turns = if circle { 12 } else { 0 };
        for r in 0..=an.top_degree() {
            let delta = ms.delta(r).unwrap();
            let (b, c) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
            // on the cover the regular part gives lines through every sublevel
            let mut sum = if circle { an.decomps[r].jordan_blocks().dim() } else { 0 };
            for p in &delta.points {
                for k in -turns..=turns {
                    let shift = TAU * k as f64;
                    if p.a + shift <= b && c <= p.b + shift {
                        sum += p.mult;
                    }
                }
            }
            prop_assert_eq!(ms.f_g_values(r, b, c).unwrap().0, sum, "F({}, {}) in degree {}", b, c, r);
        }
    }

    #[test]
    fn jumps_sit_at_critical_values(seed in any::<u64>(), circle in any::<bool>()) {
        let (fx, _) = fixture(seed, circle);
        let an = analysis(&fx);
        let values = fx.map.values();
        for r in 0..=an.top_degree() {
            for c in [an.delta(r).unwrap(), an.cm_jump(r).unwrap()] {
                for p in &c.points {
                    prop_assert_eq!(p.a, values.at(p.ia));
                    prop_assert_eq!(p.b, values.at(p.ib));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn torus_matching_is_a_metric(x in points(3), y in points(3), z in points(3)) {
        let (x, y, z) = (configuration(Space::Torus, &x), configuration(Space::Torus, &y), configuration(Space::Torus, &z));
        let d = |p: &Configuration, q: &Configuration| matching_distance_c(p, q).unwrap();
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert!((d(&x, &y) - d(&y, &x)).abs() < 1e-12);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-9);
    }

    #[test]
    fn bottleneck_is_a_metric(x in points(3), y in points(2), z in points(4)) {
        let (x, y, z) = (configuration(Space::Plane, &x), configuration(Space::Plane, &y), configuration(Space::Plane, &z));
        let d = |p: &Configuration, q: &Configuration| bottleneck_cm(p, q).unwrap();
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert!((d(&x, &y) - d(&y, &x)).abs() < 1e-12);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-9);
    }
}
