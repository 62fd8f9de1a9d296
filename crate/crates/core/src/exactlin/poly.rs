use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Univariate polynomial, coefficients from the constant term upwards, with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly { field, coeffs: vec![field.one()] }
    }

    pub fn x(field: Field) -> Poly {
        Poly { field, coeffs: vec![field.zero(), field.one()] }
    }

    /// `λ − u`.
    pub fn linear(u: &Scalar) -> Poly {
        let f = u.field();
        Poly::new(f, vec![-u, f.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::new(self.field, out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division with remainder by a nonzero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if r.len() < d.coeffs.len() {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = d.lc().inv().unwrap();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_i64(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.field).rem(m);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        if e.is_zero() {
            return Poly::one(self.field).rem(m);
        }
        acc
    }

    /// Characteristic polynomial `det(λI − A)` through Hessenberg reduction;
    /// valid over every field.
    pub fn charpoly(a: &Matrix) -> Poly {
        assert!(a.is_square());
        let f = a.field();
        let n = a.rows();
        let mut h: Vec<Vec<Scalar>> = (0..n).map(|i| a.row(i)).collect();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let tinv = h[m][m - 1].inv().unwrap();
            for i in m + 1..n {
                let u = &h[i][m - 1] * &tinv;
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &u * &h[m][j];
                    h[i][j] -= &t;
                }
                for row in h.iter_mut() {
                    let t = &u * &row[i];
                    row[m] += &t;
                }
            }
        }
        let mut p: Vec<Poly> = vec![Poly::one(f)];
        for m in 0..n {
            let lin = Poly::new(f, vec![-&h[m][m], f.one()]);
            let mut next = lin.mul(&p[m]);
            let mut t = f.one();
            for i in (0..m).rev() {
                t = &t * &h[i + 1][i];
                let c = &h[i][m] * &t;
                if !c.is_zero() {
                    next = next.sub(&p[i].scale(&c));
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Human-readable form such as `(λ−1)` or `(λ^2+λ+1)`.
    pub fn pretty(&self) -> String {
        format!("({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.degree() == 1 && self.lc().is_one() {
            // show λ − root with the root as its canonical representative
            let root = -&self.coeffs[0];
            return if root.is_negative() {
                write!(f, "λ+{}", -&root)
            } else {
                write!(f, "λ−{root}")
            };
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "−")?;
                }
            } else {
                write!(f, "{}", if neg { "−" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the constant term upwards.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

pub(crate) fn biguint_pow(p: u32, d: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..d {
        acc *= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion() {
        let q = Field::Rational;
        // companion of λ^3 − 2λ + 5
        let c = Matrix::from_int_rows(q, &[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(Poly::charpoly(&c), Poly::from_ints(q, &[5, -2, 0, 1]));
    }

    #[test]
    fn charpoly_needs_pivot_search() {
        let f = Field::Prime(3);
        let a = Matrix::from_int_rows(f, &[&[1, 2, 0, 1], &[0, 0, 1, 0], &[2, 0, 1, 1], &[1, 1, 0, 2]]);
        // oracle: det(λI − A) by cofactor expansion of the evaluated matrix at every λ ∈ F_3
        let p = Poly::charpoly(&a);
        for l in 0..3 {
            let lam = f.from_i64(l);
            let m = &Matrix::identity(f, 4).scale(&lam) - &a;
            assert_eq!(p.eval(&lam), det_cofactor(&m));
        }
        assert_eq!(p.degree(), 4);
    }

    fn det_cofactor(m: &Matrix) -> Scalar {
        let n = m.rows();
        let f = m.field();
        if n == 0 {
            return f.one();
        }
        let mut acc = f.zero();
        for j in 0..n {
            let minor = Matrix::from_fn(f, n - 1, n - 1, |i, k| m.get(i + 1, if k < j { k } else { k + 1 }).clone());
            let term = m.get(0, j) * &det_cofactor(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn display_forms() {
        let q = Field::Rational;
        assert_eq!(Poly::linear(&q.one()).pretty(), "(λ−1)");
        assert_eq!(Poly::linear(&q.from_i64(-1)).pretty(), "(λ+1)");
        assert_eq!(Poly::from_ints(q, &[1, 1, 1]).pretty(), "(λ^2+λ+1)");
        let f5 = Field::Prime(5);
        assert_eq!(Poly::linear(&f5.from_i64(2)).pretty(), "(λ−2)");
    }

    #[test]
    fn ext_gcd_identity() {
        let f = Field::Prime(7);
        let a = Poly::from_ints(f, &[1, 0, 1]);
        let b = Poly::from_ints(f, &[2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
