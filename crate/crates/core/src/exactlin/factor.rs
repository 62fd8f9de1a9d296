//! Factoring into monic irreducibles over F_p (Cantor–Zassenhaus) and over Q
//! (Hensel lifting with factor recombination).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::poly::{biguint_pow, Poly};

/// Monic irreducible factors with multiplicities, in ascending order.
pub fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut acc: BTreeMap<Poly, usize> = BTreeMap::new();
    let f = f.monic();
    if f.degree() == 0 {
        return Vec::new();
    }
    match f.field() {
        Field::Prime(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for (g, e) in squarefree_fp(&f, p) {
                for (h, d) in distinct_degree(&g, p) {
                    for irr in equal_degree(&h, d, p, &mut rng) {
                        *acc.entry(irr).or_default() += e;
                    }
                }
            }
        }
        Field::Rational => {
            for (g, e) in squarefree_q(&f) {
                for irr in factor_squarefree_q(&g) {
                    *acc.entry(irr).or_default() += e;
                }
            }
        }
    }
    acc.into_iter().collect()
}

fn squarefree_fp(f: &Poly, p: u32) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        // c is a polynomial in λ^p; its p-th root has the same coefficients
        let root = Poly::new(c.field(), c.coeffs().iter().step_by(p as usize).cloned().collect());
        for (g, e) in squarefree_fp(&root, p) {
            out.push((g, e * p as usize));
        }
    }
    out
}

fn distinct_degree(f: &Poly, p: u32) -> Vec<(Poly, usize)> {
    let field = f.field();
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = Poly::x(field);
    let mut h = x.clone();
    let mut d = 1;
    let pe = BigUint::from(p);
    while f.degree() >= 2 * d {
        h = h.pow_mod(&pe, &f);
        let g = h.sub(&x).gcd(&f);
        if !g.is_one() {
            f = f.div_exact(&g);
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if f.degree() > 0 {
        let deg = f.degree();
        out.push((f, deg));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, p: u32, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if f.degree() == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let n = f.degree();
    let exp = (biguint_pow(p, d) - 1u32) / 2u32;
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.from_i64(rng.gen_range(0..p as i64))).collect());
        if a.degree() == 0 {
            continue;
        }
        let g0 = a.gcd(f);
        let g = if !g0.is_one() {
            g0
        } else if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d−1))
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                s = s.add(&t);
            }
            s.gcd(f)
        } else {
            a.pow_mod(&exp, f).sub(&Poly::one(field)).gcd(f)
        };
        if g.degree() > 0 && g.degree() < n {
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&f.div_exact(&g), d, p, rng));
            return out;
        }
    }
}

fn squarefree_q(f: &Poly) -> Vec<(Poly, usize)> {
    // Yun's algorithm, valid in characteristic zero
    let mut out = Vec::new();
    let fd = f.derivative();
    let a0 = f.gcd(&fd);
    let mut b = f.div_exact(&a0);
    let mut c = fd.div_exact(&a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        d = c.sub(&b.derivative());
        if a.degree() > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(a.iter().map(|c| {
        let r = c.mod_floor(m);
        if r > half { r - m } else { r }
    }).collect())
}

/// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
fn zdiv_monic(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            r[k + j] -= &c * dc;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) { Some(ztrim(q)) } else { None }
}

fn to_fp(a: &ZPoly, p: u32) -> Poly {
    let f = Field::Prime(p);
    Poly::new(f, a.iter().map(|c| Scalar::from_bigint(f, c)).collect())
}

fn from_fp(a: &Poly) -> ZPoly {
    a.coeffs().iter().map(|c| BigInt::from(c.as_fp().unwrap())).collect()
}

/// Irreducible factors of a monic square-free polynomial over Q.
fn factor_squarefree_q(f: &Poly) -> Vec<Poly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    // substitute λ → λ/D so that the polynomial becomes monic over Z
    let n = f.degree();
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.as_rational().unwrap().denom());
    }
    let mut g: ZPoly = Vec::with_capacity(n + 1);
    for (i, c) in f.coeffs().iter().enumerate() {
        let scaled = c.as_rational().unwrap() * BigRational::from_integer(num_traits::pow(den.clone(), n - i));
        assert!(scaled.is_integer());
        g.push(scaled.to_integer());
    }
    zassenhaus(&g)
        .into_iter()
        .map(|h| {
            // undo the substitution: D^(−deg h) · h(Dλ)
            let dh = h.len() - 1;
            let coeffs = h
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let r = BigRational::new(c.clone(), num_traits::pow(den.clone(), dh - i));
                    Scalar::Q(r)
                })
                .collect();
            Poly::new(Field::Rational, coeffs)
        })
        .collect()
}

const SMALL_PRIMES: [u32; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn zassenhaus(g: &ZPoly) -> Vec<ZPoly> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.clone()];
    }
    // pick the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u32, Vec<Poly>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        let gp = to_fp(g, p);
        if gp.degree() != n || !gp.gcd(&gp.derivative()).is_one() {
            continue;
        }
        let facs: Vec<Poly> = factor(&gp).into_iter().map(|(h, _)| h).collect();
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("no suitable prime for a square-free polynomial");
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    // coefficient bound for factors: 2^n · ‖g‖₂
    let norm2: BigInt = g.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let mut k = 1u32;
    let mut modulus = BigInt::from(p);
    while modulus <= &bound * 2 {
        modulus *= p;
        k += 1;
    }
    let lifted = multi_lift(g, &modular, p, k);
    recombine(g.clone(), lifted, &modulus)
}

fn multi_lift(g: &ZPoly, us: &[Poly], p: u32, k: u32) -> Vec<ZPoly> {
    let m = BigInt::from(p).pow(k);
    if us.len() == 1 {
        return vec![zmod(g, &m)];
    }
    let a = &us[0];
    let b = us[1..].iter().fold(Poly::one(Field::Prime(p)), |acc, u| acc.mul(u));
    let (ga, gb) = hensel_pair(g, a, &b, p, k);
    let mut out = vec![ga];
    out.extend(multi_lift(&gb, &us[1..], p, k));
    out
}

/// Lifts `f ≡ g·h (mod p)` with monic coprime `g, h` to a factorization
/// modulo `p^k`.
fn hensel_pair(f: &ZPoly, g: &Poly, h: &Poly, p: u32, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = g.ext_gcd(h);
    assert!(one.is_one(), "Hensel lifting needs coprime factors");
    let mut big_g = from_fp(g);
    let mut big_h = from_fp(h);
    let mut m = BigInt::from(p);
    for _ in 1..k {
        let diff = zsub(f, &zmul(&big_g, &big_h));
        let e: ZPoly = diff.iter().map(|c| {
            debug_assert!((c % &m).is_zero());
            c / &m
        }).collect();
        let e = to_fp(&e, p);
        let (q, r) = t.mul(&e).divrem(g);
        let dh = s.mul(&e).add(&q.mul(h));
        let dg = r;
        let add = |base: &ZPoly, delta: &Poly| {
            let d = from_fp(delta);
            let n = base.len().max(d.len());
            let z = BigInt::zero();
            ztrim((0..n).map(|i| base.get(i).unwrap_or(&z) + &m * d.get(i).unwrap_or(&z)).collect())
        };
        big_g = add(&big_g, &dg);
        big_h = add(&big_h, &dh);
        m *= p;
        big_g = zmod(&big_g, &m);
        big_h = zmod(&big_h, &m);
    }
    (big_g, big_h)
}

fn recombine(mut g: ZPoly, mut factors: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= factors.len() {
        let mut found = false;
        for subset in combinations(factors.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmod(&zmul(&acc, &factors[i]), modulus));
            let cand = zsymmetric(&prod, modulus);
            if let Some(q) = zdiv_monic(&g, &cand) {
                out.push(cand);
                g = q;
                let keep: Vec<ZPoly> = factors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, f)| f.clone())
                    .collect();
                factors = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if g.len() > 1 {
        out.push(g);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
