use std::fmt;

use super::factor::factor;
use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// One primary block: the companion data `(g, k)` of an indecomposable pair
/// with minimal polynomial `g^k`, `g` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalBlock {
    pub poly: Poly,
    pub power: usize,
}

impl CanonicalBlock {
    pub fn new(poly: Poly, power: usize) -> CanonicalBlock {
        CanonicalBlock { poly, power }
    }

    /// The block `(λ − u, k)`, i.e. the Jordan cell `T(u, k)`.
    pub fn jordan(u: &Scalar, k: usize) -> CanonicalBlock {
        CanonicalBlock { poly: Poly::linear(u), power: k }
    }

    pub fn dim(&self) -> usize {
        self.poly.degree() * self.power
    }

    /// The eigenvalue when the polynomial is linear.
    pub fn eigenvalue(&self) -> Option<Scalar> {
        (self.poly.degree() == 1).then(|| -&self.poly.coeff(0))
    }

    /// A matrix in this class: the Jordan cell `T(u, k)` for linear `g`,
    /// otherwise the companion matrix of `g^k`.
    pub fn matrix(&self) -> Matrix {
        let f = self.poly.field();
        if let Some(u) = self.eigenvalue() {
            let k = self.power;
            return Matrix::from_fn(f, k, k, |i, j| {
                if i == j {
                    u.clone()
                } else if j == i + 1 {
                    f.one()
                } else {
                    f.zero()
                }
            });
        }
        companion(&self.poly.pow(self.power))
    }
}

impl fmt::Display for CanonicalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.poly.pretty(), self.power)
    }
}

/// Companion matrix of a monic polynomial.
pub fn companion(g: &Poly) -> Matrix {
    let f = g.field();
    let n = g.degree();
    Matrix::from_fn(f, n, n, |i, j| {
        if j == n - 1 {
            -&g.coeff(i)
        } else if i == j + 1 {
            f.one()
        } else {
            f.zero()
        }
    })
}

/// Primary decomposition of an invertible matrix, one entry per block,
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CanonicalBlocks {
    pub blocks: Vec<CanonicalBlock>,
}

impl CanonicalBlocks {
    pub fn new(mut blocks: Vec<CanonicalBlock>) -> CanonicalBlocks {
        blocks.sort();
        CanonicalBlocks { blocks }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(CanonicalBlock::dim).sum()
    }

    /// Distinct blocks with their multiplicities.
    pub fn multiset(&self) -> Vec<(CanonicalBlock, usize)> {
        let mut out: Vec<(CanonicalBlock, usize)> = Vec::new();
        for b in &self.blocks {
            match out.last_mut() {
                Some((last, n)) if last == b => *n += 1,
                _ => out.push((b.clone(), 1)),
            }
        }
        out
    }

    pub fn merge(&self, other: &CanonicalBlocks) -> CanonicalBlocks {
        let mut all = self.blocks.clone();
        all.extend(other.blocks.iter().cloned());
        CanonicalBlocks::new(all)
    }

    /// Block-diagonal representative.
    pub fn matrix(&self, field: Field) -> Matrix {
        let parts: Vec<Matrix> = self.blocks.iter().map(CanonicalBlock::matrix).collect();
        Matrix::block_diag(field, &parts)
    }
}

/// Conjugacy invariant of an invertible matrix: the multiset of primary
/// blocks, read off from ranks of powers of `g(A)` for each irreducible
/// factor `g` of the characteristic polynomial.
pub fn canonical_form(a: &Matrix) -> Result<CanonicalBlocks> {
    if !a.is_square() {
        return Err(Error::Dimension("canonical form of a non-square matrix".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(CanonicalBlocks::default());
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let chi = Poly::charpoly(a);
    let mut blocks = Vec::new();
    for (g, e) in factor(&chi) {
        let d = g.degree();
        let ga = a.eval_poly(g.coeffs());
        // at_least[k] = number of blocks with power ≥ k
        let mut ranks = vec![n];
        let mut pow = Matrix::identity(a.field(), n);
        for _ in 0..e {
            pow = &pow * &ga;
            ranks.push(pow.rank());
        }
        let at_least: Vec<usize> = (1..=e).map(|k| (ranks[k - 1] - ranks[k]) / d).collect();
        for k in 1..=e {
            let next = if k < e { at_least[k] } else { 0 };
            for _ in 0..at_least[k - 1] - next {
                blocks.push(CanonicalBlock::new(g.clone(), k));
            }
        }
    }
    let out = CanonicalBlocks::new(blocks);
    if out.dim() != n {
        return Err(Error::Internal("canonical blocks do not fill the space".into()));
    }
    Ok(out)
}
