use super::bars::{group_jordans, lifted_angle, BarCode, BarKind, Decomposition};
use super::grep::GRep;
use super::window::{check_bookkeeping, WindowBar, ZWindowRep};
use crate::error::{Error, Result};
use crate::exactlin::{canonical_form, CanonicalBlocks};

/// Interval summands of the covering of `ρ`, one representative per
/// translation orbit (left vertex in `2..=2m+1`), plus the number of
/// summands spanning every vertex.
pub fn cover_bars(rho: &GRep) -> Result<(Vec<WindowBar>, usize)> {
    let n = rho.total_dim() as i64;
    let period = 2 * rho.m as i64;
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    let periods = 2 + ((n + 2) + period - 1) / period;
    let w = rho.unroll(periods as usize)?;
    // a finite bar has at most n vertices, so q ≤ p + n − 1 and g(·, p + n)
    // only sees the infinite summands
    let reach = n;
    debug_assert!(period + 1 + reach + 1 <= w.hi());
    // g[p][d] = grk(p, p + d), p from 1 to 2m + 1
    let sweeps: Vec<Vec<usize>> = (1..=period + 1).map(|p| w.rank_sweep(p, p + reach + 1)).collect();
    let g = |p: i64, q: i64| -> i64 { sweeps[(p - 1) as usize][(q - p) as usize] as i64 };
    let n_inf = g(2, 2 + reach) as usize;
    let mut bars = Vec::new();
    for p in 2..=period + 1 {
        for q in p..p + reach {
            let mult = g(p, q) - g(p - 1, q) - g(p, q + 1) + g(p - 1, q + 1);
            if mult < 0 {
                return Err(Error::Internal(format!("negative interval multiplicity at [{p},{q}]")));
            }
            if mult > 0 {
                bars.push(WindowBar { p, q, mult: mult as usize });
            }
        }
    }
    let covered: i64 = bars.iter().map(|b| (b.q - b.p + 1) * b.mult as i64).sum::<i64>() + period * n_inf as i64;
    if covered != n {
        return Err(Error::Internal(format!("bars cover {covered} dimensions, representation has {n}")));
    }
    Ok((bars, n_inf))
}

/// Bars and Jordan blocks of a circle representation.
pub fn decompose_g2m(rho: &GRep) -> Result<Decomposition> {
    let (wbars, n_inf) = cover_bars(rho)?;
    let blocks = jordan_part(rho)?;
    if blocks.dim() != n_inf {
        return Err(Error::Internal(format!(
            "regular part has dimension {} but {n_inf} summands span the cover",
            blocks.dim()
        )));
    }
    let mut bars: Vec<BarCode> = wbars
        .iter()
        .map(|b| {
            let (kind, i, c) = BarKind::from_support(b.p, b.q);
            BarCode {
                degree: rho.degree,
                kind,
                left_index: i,
                right_index: c,
                left: lifted_angle(&rho.angles, i),
                right: lifted_angle(&rho.angles, c),
                wraps: (c - 1).div_euclid(rho.m as i64) as usize,
                multiplicity: b.mult,
            }
        })
        .collect();
    bars.sort_by_key(|b| b.key());
    Ok(Decomposition { degree: rho.degree, bars, jordans: group_jordans(rho.degree, &blocks) })
}

/// Canonical form of the regular part of the circle relation at vertex 1.
pub fn jordan_part(rho: &GRep) -> Result<CanonicalBlocks> {
    let reg = rho.circle_relation(1)?.regular_part()?;
    canonical_form(&reg.automorphism)
}

/// Bars of a window representation of a real-valued map; endpoints read from
/// the window's critical values.
pub fn decompose_real(w: &ZWindowRep) -> Result<Decomposition> {
    let wbars = w.decompose()?;
    check_bookkeeping(w, &wbars)?;
    let value = |c: i64| {
        w.crit_value(c)
            .ok_or_else(|| Error::Internal(format!("no critical value stored for index {c}")))
    };
    let mut bars = Vec::new();
    for b in wbars {
        let (kind, i, c) = BarKind::from_support(b.p, b.q);
        bars.push(BarCode {
            degree: w.degree,
            kind,
            left_index: i,
            right_index: c,
            left: value(i)?,
            right: value(c)?,
            wraps: 0,
            multiplicity: b.mult,
        });
    }
    bars.sort_by_key(|b| b.key());
    Ok(Decomposition { degree: w.degree, bars, jordans: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{CanonicalBlock, Field, Matrix};

    #[test]
    fn regular_rank_one() {
        let q = Field::Rational;
        let rho = GRep::regular(1, 0, &Matrix::identity(q, 1), None).unwrap();
        let d = decompose_g2m(&rho).unwrap();
        assert!(d.bars.is_empty());
        assert_eq!(d.jordan_blocks(), CanonicalBlocks::new(vec![CanonicalBlock::jordan(&q.one(), 1)]));
    }

    #[test]
    fn interval_models_come_back() {
        let f = Field::Prime(5);
        for (p, q) in [(2, 4), (3, 3), (2, 7), (5, 12), (4, 4)] {
            let rho = GRep::interval(f, 2, 1, p, q, None).unwrap();
            let d = decompose_g2m(&rho).unwrap();
            assert_eq!(d.bars.len(), 1, "support [{p},{q}]");
            let b = &d.bars[0];
            let (p0, q0) = b.kind.support(b.left_index, b.right_index);
            // anchored representative of the translation orbit
            assert_eq!((q0 - p0, (p0 - p).rem_euclid(4)), (q - p, 0));
            assert!(d.jordans.is_empty());
        }
    }

    #[test]
    fn wrap_count() {
        let f = Field::Prime(3);
        // m = 2, [θ_2, θ_1 + 2π]: support (4, 6)
        let rho = GRep::interval(f, 2, 0, 4, 6, None).unwrap();
        let b = &decompose_g2m(&rho).unwrap().bars[0];
        assert_eq!((b.kind, b.left_index, b.right_index, b.wraps), (BarKind::Closed, 2, 3, 1));
    }
}
