//! Exact arithmetic in real quadratic fields `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Splits `n > 0` as `f^2 * d` with `d` squarefree.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_split needs a positive integer");
    let mut rest = n.clone();
    let mut f = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= &p;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    d *= rest;
    (f, d)
}

/// `floor(sqrt n)` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

pub fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let s = isqrt(n);
        &s * &s == *n
    }
}

/// `r + s * sqrt(d)` with `d` squarefree; `d = 1` marks a rational number
/// (and then `s = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    r: BigRational,
    s: BigRational,
    d: BigInt,
}

impl QuadNum {
    pub fn rational(r: BigRational) -> Self {
        QuadNum {
            r,
            s: BigRational::zero(),
            d: BigInt::one(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `r + s * sqrt(radicand)` for any `radicand >= 0`.
    pub fn new(r: BigRational, s: BigRational, radicand: &BigInt) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if radicand.is_zero() || s.is_zero() {
            return Self::rational(r);
        }
        let (f, d) = squarefree_split(radicand);
        if d.is_one() {
            return Self::rational(r + s * BigRational::from_integer(f));
        }
        QuadNum {
            r,
            s: s * BigRational::from_integer(f),
            d,
        }
    }

    pub fn sqrt(n: &BigInt) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.r
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.s
    }

    /// Squarefree radicand (`1` for rationals).
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    fn field(&self, other: &QuadNum) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "quadratic numbers from different fields");
                self.d.clone()
            }
        }
    }

    fn make(r: BigRational, s: BigRational, d: BigInt) -> Self {
        if s.is_zero() {
            Self::rational(r)
        } else {
            QuadNum { r, s, d }
        }
    }

    pub fn add(&self, o: &QuadNum) -> QuadNum {
        let d = self.field(o);
        Self::make(&self.r + &o.r, &self.s + &o.s, d)
    }

    pub fn sub(&self, o: &QuadNum) -> QuadNum {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QuadNum {
        QuadNum {
            r: -&self.r,
            s: -&self.s,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &QuadNum) -> QuadNum {
        let d = self.field(o);
        let dq = BigRational::from_integer(d.clone());
        let r = &self.r * &o.r + &self.s * &o.s * dq;
        let s = &self.r * &o.s + &self.s * &o.r;
        Self::make(r, s, d)
    }

    pub fn conjugate(&self) -> QuadNum {
        QuadNum {
            r: self.r.clone(),
            s: -&self.s,
            d: self.d.clone(),
        }
    }

    /// `self * conjugate(self)`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.r * &self.r - &self.s * &self.s * BigRational::from_integer(self.d.clone())
    }

    /// Panics on division by zero.
    pub fn div(&self, o: &QuadNum) -> QuadNum {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in quadratic field");
        let q = self.mul(&o.conjugate());
        QuadNum::make(&q.r / &n, &q.s / &n, q.d)
    }

    pub fn scale(&self, k: &BigRational) -> QuadNum {
        Self::make(&self.r * k, &self.s * k, self.d.clone())
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let sr = self.r.cmp(&zero);
        let ss = self.s.cmp(&zero);
        if ss == Ordering::Equal {
            return sr;
        }
        if sr == Ordering::Equal || sr == ss {
            return ss;
        }
        let r2 = &self.r * &self.r;
        let s2d = &self.s * &self.s * BigRational::from_integer(self.d.clone());
        // opposite signs: the larger magnitude wins
        match r2.cmp(&s2d) {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn cmp_value(&self, o: &QuadNum) -> Ordering {
        self.sub(o).signum()
    }

    /// Floor as an integer.
    pub fn floor(&self) -> BigInt {
        // s sqrt(d) = sgn(s) sqrt(s^2 d); bracket it between consecutive
        // rationals with a common denominator
        let den = self.r.denom().lcm(self.s.denom());
        let rn = (&self.r * BigRational::from_integer(den.clone())).to_integer();
        let sn = (&self.s * BigRational::from_integer(den.clone())).to_integer();
        let t = isqrt(&(&sn * &sn * &self.d));
        let exact = &t * &t == &sn * &sn * &self.d;
        let lower = if sn.is_negative() {
            if exact {
                &rn - &t
            } else {
                &rn - &t - 1
            }
        } else {
            &rn + &t
        };
        lower.div_floor(&den)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| -> f64 {
            let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        let d: f64 = self.d.to_string().parse().unwrap_or(f64::NAN);
        f(&self.r) + f(&self.s) * d.sqrt()
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{} + {}*sqrt({})", self.r, self.s, self.d)
        }
    }
}

/// A real quadratic irrational `(a + b sqrt d) / c` in lowest terms:
/// `c > 0`, `gcd(a, b, c) = 1`, `d > 1` squarefree, `b != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticIrrational {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (mut a, mut b, mut c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if !d.is_positive() {
            return Err(Error::Invalid(format!("radicand {d} is not positive")));
        }
        let (f, d) = squarefree_split(&d);
        b *= f;
        if b.is_zero() || d.is_one() {
            return Err(Error::Invalid("number is rational".into()));
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(QuadraticIrrational {
            a: a / &g,
            b: b / &g,
            c: c / &g,
            d,
        })
    }

    /// Back from a field element; rejects rationals.
    pub fn from_quad(x: &QuadNum) -> Result<Self> {
        if x.is_rational() {
            return Err(Error::Invalid("number is rational".into()));
        }
        let den = x.r.denom().lcm(x.s.denom());
        let a = (&x.r * BigRational::from_integer(den.clone())).to_integer();
        let b = (&x.s * BigRational::from_integer(den.clone())).to_integer();
        Self::new(a, b, den, x.d.clone())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn to_quad(&self) -> QuadNum {
        let c = BigRational::from_integer(self.c.clone());
        QuadNum {
            r: BigRational::from_integer(self.a.clone()) / &c,
            s: BigRational::from_integer(self.b.clone()) / &c,
            d: self.d.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_quad().to_f64()
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.a,
            sign,
            self.b.abs(),
            self.d,
            self.c
        )
    }
}

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Invalid(format!("bad {what} {s:?}")))
}

impl FromStr for QuadraticIrrational {
    type Err = Error;

    /// Accepts `(a+b*sqrt(d))/c`, with the `/c`, the `a` term and the `b*`
    /// factor optional.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (inner, c) = match s.rfind(")/") {
            Some(i) if s.starts_with('(') => (&s[1..i], parse_int(&s[i + 2..], "denominator")?),
            _ => (s.as_str(), BigInt::one()),
        };
        let p = inner
            .find("sqrt(")
            .ok_or_else(|| Error::Invalid(format!("no sqrt(..) in {s:?}")))?;
        let close = inner[p..]
            .find(')')
            .map(|k| p + k)
            .ok_or_else(|| Error::Invalid(format!("unclosed sqrt in {s:?}")))?;
        if close + 1 != inner.len() {
            return Err(Error::Invalid(format!("trailing text in {s:?}")));
        }
        let d = parse_int(&inner[p + 5..close], "radicand")?;
        let prefix = &inner[..p];
        let prefix = prefix.strip_suffix('*').unwrap_or(prefix);
        let split = prefix
            .char_indices()
            .rev()
            .find(|&(i, ch)| i > 0 && (ch == '+' || ch == '-'))
            .map(|(i, _)| i);
        let coef = |t: &str| -> Result<BigInt> {
            match t {
                "" | "+" => Ok(BigInt::one()),
                "-" => Ok(-BigInt::one()),
                _ => parse_int(t.strip_prefix('+').unwrap_or(t), "coefficient"),
            }
        };
        let (a, b) = match split {
            Some(i) => (
                parse_int(&prefix[..i], "rational part")?,
                coef(&prefix[i..])?,
            ),
            None => (BigInt::zero(), coef(prefix)?),
        };
        QuadraticIrrational::new(a, b, c, d)
    }
}

impl Serialize for QuadraticIrrational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadraticIrrational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn squarefree() {
        assert_eq!(
            squarefree_split(&BigInt::from(45)),
            (BigInt::from(3), BigInt::from(5))
        );
        assert_eq!(
            squarefree_split(&BigInt::from(40)),
            (BigInt::from(2), BigInt::from(10))
        );
        assert_eq!(
            squarefree_split(&BigInt::from(49)),
            (BigInt::from(7), BigInt::from(1))
        );
        assert_eq!(
            squarefree_split(&BigInt::from(1)),
            (BigInt::from(1), BigInt::from(1))
        );
    }

    #[test]
    fn signs_and_floor() {
        let x = QuadNum::new(q(3, 1), q(-1, 1), &BigInt::from(5)); // 3 - sqrt5 > 0
        assert!(x.is_positive());
        assert_eq!(x.floor(), BigInt::from(0));
        let y = QuadNum::new(q(-3, 1), q(1, 1), &BigInt::from(8)); // 2sqrt2 - 3 < 0
        assert_eq!(y.signum(), Ordering::Less);
        assert_eq!(y.floor(), BigInt::from(-1));
        let z = QuadNum::new(q(1, 2), q(1, 2), &BigInt::from(5));
        assert_eq!(z.floor(), BigInt::from(1));
        assert_eq!(QuadNum::sqrt(&BigInt::from(9)), QuadNum::integer(3));
    }

    #[test]
    fn field_ops() {
        let phi = QuadNum::new(q(1, 2), q(1, 2), &BigInt::from(5));
        // phi^2 = phi + 1
        assert_eq!(phi.mul(&phi), phi.add(&QuadNum::integer(1)));
        assert_eq!(phi.div(&phi), QuadNum::integer(1));
        assert_eq!(phi.norm(), q(-1, 1));
    }

    #[test]
    fn literals() {
        let x: QuadraticIrrational = "(-1+1*sqrt(5))/2".parse().unwrap();
        assert_eq!(
            (x.a().clone(), x.b().clone(), x.c().clone()),
            (BigInt::from(-1), BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(x.to_string(), "(-1+1*sqrt(5))/2");
        let y: QuadraticIrrational = "(3-1*sqrt(5))/2".parse().unwrap();
        assert_eq!(y.to_string(), "(3-1*sqrt(5))/2");
        assert!("sqrt(8)-2".parse::<QuadraticIrrational>().is_err());
        let z: QuadraticIrrational = "(-2+1*sqrt(8))/1".parse().unwrap();
        assert_eq!(
            (z.b().clone(), z.d().clone()),
            (BigInt::from(2), BigInt::from(2))
        );
        assert_eq!(
            "(2+2*sqrt(12))/4"
                .parse::<QuadraticIrrational>()
                .unwrap()
                .to_string(),
            "(1+2*sqrt(3))/2"
        );
        assert!("(1+0*sqrt(5))/2".parse::<QuadraticIrrational>().is_err());
        assert!("(1+1*sqrt(4))/2".parse::<QuadraticIrrational>().is_err());
        assert!("garbage".parse::<QuadraticIrrational>().is_err());
        assert_eq!(
            "-sqrt(2)"
                .parse::<QuadraticIrrational>()
                .unwrap()
                .to_string(),
            "(0-1*sqrt(2))/1"
        );
    }
}
