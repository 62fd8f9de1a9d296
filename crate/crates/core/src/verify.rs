//! Identity checks on a computed [`Analysis`]. A failed identity is reported,
//! not raised; errors are reserved for bad input and internal breaches.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{homology, induced_map, CircleMap, LevelComplex};
use crate::error::{Error, Result};
use crate::exactlin::{canonical_form, CanonicalBlocks, Field};
use crate::invariants::{local_betti, point_distance, Configuration, Space};
use crate::measures::{epsilon_f, matching_distance_c};
use crate::pipeline::{Analysis, MapKind};
use crate::quiver::{decompose_g2m, BarKind, GRep};
use crate::relation::Relation;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub status: Status,
    pub details: Vec<String>,
}

impl Report {
    fn new(name: &str, details: Vec<String>) -> Report {
        let status = if details.is_empty() { Status::Ok } else { Status::Mismatch };
        Report { name: name.into(), status, details }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

/// Betti numbers from bars and Jordan blocks against simplicial homology,
/// the coker/ker split of `H_r(X)`, and local-coefficient Betti numbers
/// against the bar and Jordan counts.
pub fn betti_report(an: &Analysis) -> Result<Report> {
    let mut details = Vec::new();
    let formula = an.betti();
    let direct = an.simplicial_betti();
    for r in 0..direct.len() {
        if formula[r] != direct[r] {
            details.push(format!("degree {r}: bar/Jordan count {} but dim H_{r}(X) = {}", formula[r], direct[r]));
        }
    }
    if let MapKind::Circle(_) = an.map {
        for r in 0..direct.len() {
            let rho = an.circle_rep(r).unwrap();
            let below = r.checked_sub(1).and_then(|k| an.circle_rep(k));
            let split = rho.ker_coker().1 + below.map_or(0, |b| b.ker_coker().0);
            if split != direct[r] {
                details.push(format!("degree {r}: coker/ker split gives {split}, dim H_{r}(X) = {}", direct[r]));
            }
            let novikov = an.novikov_betti(r);
            if an.config_c(r).cardinality() != novikov {
                details.push(format!("degree {r}: configuration size differs from the Novikov–Betti number"));
            }
            for u in an.field.sample_units() {
                let local = local_betti(rho, below, &u)?;
                // ρ^{II}(λ, k)_u = ρ^{II}(uλ, k) meets eigenvalue one exactly when λ = u⁻¹
                let inv = u.inv().unwrap();
                let expected = novikov
                    + an.decomps[r].jordan_count_at(&inv)
                    + r.checked_sub(1).map_or(0, |k| an.decomps[k].jordan_count_at(&inv));
                if local != expected {
                    details.push(format!("degree {r}, u = {u}: local Betti {local}, counts give {expected}"));
                }
            }
        }
    }
    Ok(Report::new("betti", details))
}

/// The relation `H_r(f⁻¹(t)) ⇝ H_r(f⁻¹(t))` through the cover interlevel
/// `[t, t + 2π]`, at the regular level `2i − 1`.
pub fn topological_relation(lc: &LevelComplex, field: Field, r: usize, i: i64) -> Result<Relation> {
    let p = lc.period.ok_or_else(|| Error::Argument("needs a circle-valued map".into()))?;
    let t = 2 * i - 1;
    let (a, b, w) = (lc.fiber(t), lc.fiber(t + p), lc.window(t, t + p));
    let (ha, hb, hw) = (homology(&a, field, r), homology(&b, field, r), homology(&w, field, r));
    let i1 = induced_map(&a, &ha, &w, &hw)?;
    let i2 = induced_map(&b, &hb, &w, &hw)?;
    Relation::from_pair(&i1, &i2)
}

/// Regular parts of the topological relations at every regular angle, and
/// of the representation's circle relations, against the Jordan blocks.
pub fn monodromy_report(an: &Analysis) -> Result<Report> {
    let mut details = Vec::new();
    let MapKind::Circle(f) = &an.map else {
        return Ok(Report::new("monodromy", details));
    };
    for (r, d) in an.decomps.iter().enumerate() {
        let expected = d.jordan_blocks();
        let rho = an.circle_rep(r).unwrap();
        for i in 1..=f.m {
            let topo = reg_blocks(&topological_relation(&an.levels, an.field, r, i as i64)?)?;
            if topo != expected {
                details.push(format!("degree {r}, level {}: topological relation gives {topo:?}", 2 * i - 1));
            }
            let alg = reg_blocks(&rho.circle_relation(i)?)?;
            if alg != expected {
                details.push(format!("degree {r}, start {i}: circle relation gives {alg:?}"));
            }
        }
    }
    Ok(Report::new("monodromy", details))
}

fn reg_blocks(rel: &Relation) -> Result<CanonicalBlocks> {
    canonical_form(&rel.regular_part()?.automorphism)
}

fn compare(name: &str, what: &str, r: usize, a: &Configuration, b: &Configuration, details: &mut Vec<String>) {
    let (x, y) = (a.index_multiset(), b.index_multiset());
    if x != y {
        details.push(format!("{name} degree {r}: {what} {x:?} vs configuration {y:?}"));
    }
}

/// δ against `C_r` and the `T` jump function against `C^m_r`.
pub fn jump_report(an: &Analysis) -> Result<Report> {
    let mut details = Vec::new();
    for r in 0..=an.top_degree() {
        compare("δ", "jump", r, &an.delta(r)?, &an.config_c(r), &mut details);
        compare("C^m", "jump", r, &an.cm_jump(r)?, &an.config_cm(r)?, &mut details);
    }
    Ok(Report::new("jump", details))
}

/// Points equal as multisets after `(a, b) ↦ (−a, −b)`, up to `tol`.
fn reflected_equal(a: &Configuration, b: &Configuration, tol: f64) -> bool {
    let mut left: Vec<(f64, f64)> = a.expanded().into_iter().map(|(x, y)| (-x, -y)).collect();
    let right = b.expanded();
    if left.len() != right.len() {
        return false;
    }
    for q in right {
        match left.iter().position(|&p| point_distance(a.space, p, q) <= tol) {
            Some(k) => {
                left.swap_remove(k);
            }
            None => return false,
        }
    }
    true
}

/// `C_r(f)(a, b) = C_{n−r}(f̄)(−a, −b)` and
/// `C^m_r(f)(a, b) = C^m_{n−1−r}(f̄)(−a, −b)`, for a closed orientable
/// `n`-manifold `X`.
pub fn duality_report(an: &Analysis, rev: &Analysis, n: usize) -> Result<Report> {
    let mut details = Vec::new();
    for r in 0..=n {
        let (c, cr) = (an.config_c(r), rev.config_c(n - r));
        if !reflected_equal(&c, &cr, 1e-9) {
            details.push(format!("C_{r}(f) = {:?} does not reflect to C_{}(f̄) = {:?}", c.expanded(), n - r, cr.expanded()));
        }
        if r < n {
            let (c, cr) = (an.config_cm(r)?, rev.config_cm(n - 1 - r)?);
            if !reflected_equal(&c, &cr, 1e-9) {
                details.push(format!(
                    "C^m_{r}(f) = {:?} does not reflect to C^m_{}(f̄) = {:?}",
                    c.expanded(),
                    n - 1 - r,
                    cr.expanded()
                ));
            }
        }
    }
    Ok(Report::new("duality", details))
}

/// Angles moved by less than `eps`, keeping their order and the range
/// `(0, 2π]`.
pub fn jitter_angles(f: &CircleMap, eps: f64, rng: &mut impl Rng) -> CircleMap {
    let angles = f
        .angles
        .iter()
        .map(|&t| {
            let hi = if t + eps > TAU { TAU - t } else { eps };
            t + rng.gen_range(-eps..hi.max(-eps + f64::EPSILON))
        })
        .collect();
    CircleMap { m: f.m, angles, vertex_image: f.vertex_image.clone() }
}

fn in_box(space: Space, p: (f64, f64), centre: (f64, f64), e: f64) -> bool {
    let shifts: Vec<f64> = match space {
        Space::Plane => vec![0.0],
        Space::Torus => {
            let k = ((p.0 - centre.0) / TAU).round();
            (-1..=1).map(|d| (k + d as f64) * TAU).collect()
        }
    };
    shifts.iter().any(|s| {
        let (da, db) = (p.0 - centre.0 - s, p.1 - centre.1 - s);
        -2.0 * e < da && da <= 2.0 * e && -2.0 * e <= db && db < 2.0 * e
    })
}

/// Support containment in `2ε` boxes, the counting identity and the
/// matching bound `≤ 2·D(f, g)` for `trials` random angle perturbations of
/// size below `ε(f)/6`.
pub fn stability_report(an: &Analysis, trials: usize, seed: u64) -> Result<Report> {
    let MapKind::Circle(f) = &an.map else {
        return Err(Error::Argument("stability is checked on circle-valued maps".into()));
    };
    let mut details = Vec::new();
    let eps = epsilon_f(&f.angles, true)? / 6.0 * 0.999;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<Configuration> = (0..=an.top_degree()).map(|r| an.delta(r)).collect::<Result<_>>()?;
    for trial in 0..trials {
        let g = jitter_angles(f, eps, &mut rng);
        let dist = f.angles.iter().zip(&g.angles).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let ag = Analysis::new(an.complex.clone(), MapKind::Circle(g), an.field)?;
        for (r, df) in base.iter().enumerate() {
            let dg = ag.delta(r)?;
            let centres = df.expanded();
            let moved = dg.expanded();
            if let Some(p) = moved.iter().find(|&&p| !centres.iter().any(|&c| in_box(df.space, p, c, dist))) {
                details.push(format!("trial {trial}, degree {r}: {p:?} outside every 2ε box"));
            }
            let inside = moved.iter().filter(|&&p| centres.iter().any(|&c| in_box(df.space, p, c, dist))).count();
            if inside != centres.len() {
                details.push(format!("trial {trial}, degree {r}: {inside} points in boxes, {} expected", centres.len()));
            }
            let d = matching_distance_c(&an.config_c(r), &ag.config_c(r))?;
            if d > 2.0 * dist + 1e-9 {
                details.push(format!("trial {trial}, degree {r}: matching distance {d} exceeds 2·{dist}"));
            }
        }
    }
    Ok(Report::new("stability", details))
}

/// Kernel and cokernel of `M(ρ)` and of its twists against the bar and
/// block counts, and the circle relations against the Jordan blocks, for a
/// representation given on its own.
pub fn rep_report(rho: &GRep) -> Result<Report> {
    let mut details = Vec::new();
    let d = decompose_g2m(rho)?;
    for u in rho.field.sample_units() {
        let (ker, coker) = rho.twist(&u)?.ker_coker();
        let inv = u.inv().unwrap();
        let at = d.jordan_count_at(&inv);
        let (ek, ec) = (d.count(BarKind::Open) + at, d.count(BarKind::Closed) + at);
        if (ker, coker) != (ek, ec) {
            details.push(format!("u = {u}: d ker, d coker = ({ker}, {coker}), counts give ({ek}, {ec})"));
        }
    }
    let expected = d.jordan_blocks();
    for i in 1..=rho.m {
        let alg = reg_blocks(&rho.circle_relation(i)?)?;
        if alg != expected {
            details.push(format!("start {i}: circle relation gives {alg:?}"));
        }
    }
    Ok(Report::new("representation", details))
}
