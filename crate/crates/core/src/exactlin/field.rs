use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field: a prime field F_p or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    /// Checked constructor for F_p.
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Input(format!("field: {p} is not a prime")))
        }
    }

    /// Parses `"Q"`, `"rational"` or a prime such as `"5"`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let p: u32 = t
            .parse()
            .map_err(|_| Error::Input(format!("field: cannot parse {t:?}")))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        Scalar::from_i64(*self, n)
    }

    /// All nonzero elements for a small prime field, or a fixed sample of
    /// rationals.
    pub fn sample_units(&self) -> Vec<Scalar> {
        match self {
            Field::Prime(p) if *p <= 13 => (1..*p as i64).map(|v| self.from_i64(v)).collect(),
            Field::Prime(_) => [1, 2, 3, -1, -2].iter().map(|&v| self.from_i64(v)).collect(),
            Field::Rational => {
                let mut out: Vec<Scalar> = [1, 2, 3, -1, -2].iter().map(|&v| self.from_i64(v)).collect();
                out.push(Scalar::from_ratio(*self, 1, 2).unwrap());
                out
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p or Q. Prime-field elements carry their modulus so that
/// the arithmetic operators work without a context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

impl Scalar {
    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Prime(p) => Scalar::Fp { v: n.rem_euclid(p as i64) as u32, p },
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Prime(p) => {
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Fp { v: r.to_u32().unwrap(), p }
            }
            Field::Rational => Scalar::Q(BigRational::from_integer(n.clone())),
        }
    }

    pub fn from_ratio(field: Field, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        match field {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num.into(), den.into()))),
            Field::Prime(_) => {
                let d = Scalar::from_i64(field, den);
                let inv = d
                    .inv()
                    .ok_or_else(|| Error::Input(format!("denominator {den} vanishes in {field}")))?;
                Ok(&Scalar::from_i64(field, num) * &inv)
            }
        }
    }

    /// Parses an integer `"-3"` or a fraction `"a/b"`.
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Input(format!("cannot parse scalar {t:?}"));
        let (n, d) = match t.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<BigInt>().map_err(|_| bad())?,
                b.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(bad());
        }
        match field {
            Field::Rational => Ok(Scalar::Q(BigRational::new(n, d))),
            Field::Prime(_) => {
                let inv = Scalar::from_bigint(field, &d)
                    .inv()
                    .ok_or_else(|| Error::Input(format!("denominator of {t:?} vanishes in {field}")))?;
                Ok(&Scalar::from_bigint(field, &n) * &inv)
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Prime(*p),
            Scalar::Q(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Fp { v, p } => {
                let r = pow_mod(*v as u64, *p as u64 - 2, *p as u64);
                Some(Scalar::Fp { v: r as u32, p: *p })
            }
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rough bit size, used to pick small pivots over Q.
    pub(crate) fn size(&self) -> u64 {
        match self {
            Scalar::Fp { .. } => 0,
            Scalar::Q(q) => q.numer().bits() + q.denom().bits(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Fp { v, .. } => *v as f64,
            Scalar::Q(q) => q.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_fp(&self) -> Option<u32> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            _ => None,
        }
    }

    /// Negative over Q; never over F_p.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Fp { .. } => false,
            Scalar::Q(q) => q.is_negative(),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp { v: (*p - *v) % *p, p: *p },
            Scalar::Q(a) => Scalar::Q(-a),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order within one field: residues by value over F_p, numeric over Q.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => (p, a).cmp(&(q, b)),
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { .. }, Scalar::Q(_)) => Ordering::Less,
            (Scalar::Q(_), Scalar::Fp { .. }) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}
