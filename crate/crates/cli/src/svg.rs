use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use spiralis::invariants::{Configuration, Space};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 70.0;

/// Torus points go to `a ∈ [0, 2π)` with `b` shifted along; `b` is then
/// wrapped into `[0, 2π)` and the number of turns it lost is returned.
fn canonical(a: f64, b: f64) -> (f64, f64, i64) {
    let k = (a / TAU).floor();
    let (a, b) = (a - k * TAU, b - k * TAU);
    let turns = (b / TAU).floor();
    (a, b - turns * TAU, turns as i64)
}

/// Scatter plot of configurations over the fundamental domain of the torus
/// `[0, 2π)²` (or the bounding square of the points on the plane), with the
/// diagonal drawn and multiplicities as labels.
pub fn render(configs: &[Configuration]) -> String {
    let space = configs.first().map_or(Space::Torus, |c| c.space);
    let mut pts: Vec<(f64, f64, i64, usize, usize)> = Vec::new();
    for c in configs {
        for p in &c.points {
            let (a, b, turns) = match space {
                Space::Torus => canonical(p.a, p.b),
                Space::Plane => (p.a, p.b, 0),
            };
            pts.push((a, b, turns, p.mult, c.degree));
        }
    }
    let (lo, hi) = match space {
        Space::Torus => (0.0, TAU),
        Space::Plane if pts.is_empty() => (0.0, 1.0),
        Space::Plane => {
            let lo = pts.iter().map(|p| p.0.min(p.1)).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|p| p.0.max(p.1)).fold(f64::NEG_INFINITY, f64::max);
            let pad = ((hi - lo) * 0.1).max(0.5);
            (lo - pad, hi + pad)
        }
    };
    let span = SIZE - 2.0 * MARGIN;
    let x = |v: f64| MARGIN + (v - lo) / (hi - lo) * span;
    let y = |v: f64| SIZE - MARGIN - (v - lo) / (hi - lo) * span;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="800" height="800" fill="white"/>"#).unwrap();
    writeln!(s, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" fill="none" stroke="black"/>"#).unwrap();
    writeln!(
        s,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6,4"/>"#,
        x(lo),
        y(lo),
        x(hi),
        y(hi)
    )
    .unwrap();
    let ticks: Vec<(f64, String)> = match space {
        Space::Torus => vec![
            (0.0, "0".into()),
            (PI / 2.0, "π/2".into()),
            (PI, "π".into()),
            (1.5 * PI, "3π/2".into()),
            (TAU, "2π".into()),
        ],
        Space::Plane => (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).map(|v| (v, format!("{v:.2}"))).collect(),
    };
    for (v, label) in &ticks {
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">{label}</text>"#, x(*v), SIZE - MARGIN + 24.0).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="end">{label}</text>"#, MARGIN - 8.0, y(*v) + 5.0).unwrap();
    }
    writeln!(s, r#"<text x="400" y="{:.2}" font-size="16" text-anchor="middle">a</text>"#, SIZE - 20.0).unwrap();
    writeln!(s, r#"<text x="20" y="400" font-size="16" text-anchor="middle">b</text>"#).unwrap();
    for (a, b, turns, mult, degree) in pts {
        let (cx, cy) = (x(a), y(b));
        writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="6" fill="steelblue" data-degree="{degree}"/>"#).unwrap();
        let mut label = String::new();
        if mult > 1 {
            label += &format!("×{mult}");
        }
        if turns != 0 {
            label += &format!(" {turns:+}·2π");
        }
        if !label.is_empty() {
            writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="13">{}</text>"#, cx + 9.0, cy - 9.0, label.trim()).unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
