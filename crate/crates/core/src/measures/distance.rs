use crate::error::{Error, Result};
use crate::invariants::{diagonal_distance, point_distance, Configuration, Space};

/// Does the bipartite graph `adj` (left to right) have a matching saturating
/// every left vertex?
fn saturating_matching(n_left: usize, n_right: usize, adj: &[Vec<usize>]) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; n_right];
    (0..n_left).all(|u| augment(u, adj, &mut vec![false; n_right], &mut owner))
}

/// Smallest candidate radius for which `feasible` holds; candidates must
/// contain the optimum.
fn bottleneck_search(mut candidates: Vec<f64>, feasible: impl Fn(f64) -> bool) -> f64 {
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn check_space(c1: &Configuration, c2: &Configuration) -> Result<Space> {
    if c1.space != c2.space {
        return Err(Error::Argument("configurations live in different spaces".into()));
    }
    Ok(c1.space)
}

/// Minimum over bijections of the largest point displacement.
pub fn matching_distance_c(c1: &Configuration, c2: &Configuration) -> Result<f64> {
    let space = check_space(c1, c2)?;
    let (p, q) = (c1.expanded(), c2.expanded());
    if p.len() != q.len() {
        return Err(Error::Argument(format!("cardinalities differ: {} vs {}", p.len(), q.len())));
    }
    if p.is_empty() {
        return Ok(0.0);
    }
    let d: Vec<Vec<f64>> = p.iter().map(|&x| q.iter().map(|&y| point_distance(space, x, y)).collect()).collect();
    let candidates = d.iter().flatten().copied().collect();
    Ok(bottleneck_search(candidates, |eps| {
        let adj: Vec<Vec<usize>> = d.iter().map(|row| (0..row.len()).filter(|&j| row[j] <= eps).collect()).collect();
        saturating_matching(p.len(), q.len(), &adj)
    }))
}

/// Bottleneck distance with the diagonal as a sink.
pub fn bottleneck_cm(c1: &Configuration, c2: &Configuration) -> Result<f64> {
    let space = check_space(c1, c2)?;
    let (p, q) = (c1.expanded(), c2.expanded());
    let (n, k) = (p.len(), q.len());
    if n + k == 0 {
        return Ok(0.0);
    }
    let d: Vec<Vec<f64>> = p.iter().map(|&x| q.iter().map(|&y| point_distance(space, x, y)).collect()).collect();
    let dp: Vec<f64> = p.iter().map(|&x| diagonal_distance(x)).collect();
    let dq: Vec<f64> = q.iter().map(|&y| diagonal_distance(y)).collect();
    let mut candidates: Vec<f64> = d.iter().flatten().copied().collect();
    candidates.extend(&dp);
    candidates.extend(&dq);
    // left: p then diagonal slots for q; right: q then diagonal slots for p
    Ok(bottleneck_search(candidates, |eps| {
        let mut adj = vec![Vec::new(); n + k];
        for i in 0..n {
            adj[i].extend((0..k).filter(|&j| d[i][j] <= eps));
            if dp[i] <= eps {
                adj[i].push(k + i);
            }
        }
        for j in 0..k {
            if dq[j] <= eps {
                adj[n + j].push(j);
            }
            adj[n + j].extend(k..k + n);
        }
        saturating_matching(n + k, n + k, &adj)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::ConfigPoint;
    use std::f64::consts::PI;

    fn conf(space: Space, pts: &[(f64, f64)]) -> Configuration {
        Configuration {
            degree: 0,
            space,
            points: pts.iter().map(|&(a, b)| ConfigPoint { ia: 0, ib: 0, a, b, mult: 1 }).collect(),
        }
    }

    #[test]
    fn single_point_matching() {
        let d = matching_distance_c(&conf(Space::Torus, &[(0.0, 1.0)]), &conf(Space::Torus, &[(0.1, 1.1)])).unwrap();
        assert!((d - 0.1).abs() < 1e-12);
    }

    #[test]
    fn point_against_empty() {
        let d = bottleneck_cm(&conf(Space::Torus, &[(0.0, PI)]), &conf(Space::Torus, &[])).unwrap();
        assert!((d - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cross_matching_beats_greedy() {
        let a = conf(Space::Plane, &[(0.0, 5.0), (0.0, 6.0)]);
        let b = conf(Space::Plane, &[(0.0, 6.5), (0.0, 4.0)]);
        assert!((matching_distance_c(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }
}
