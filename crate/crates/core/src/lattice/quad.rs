//! Exact numbers `a + b·√2` with rational `a`, `b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadScalar {
    pub a: BigRational,
    pub b: BigRational,
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of `a + b√2`, decided by comparing `a²` with `2b²` when the signs of `a` and `b`
/// disagree.
pub fn quad_sign(a: &BigRational, b: &BigRational) -> Sign {
    let sa = rational_sign(a);
    let sb = rational_sign(b);
    match (sa, sb) {
        (Sign::Zero, s) | (s, Sign::Zero) => s,
        (x, y) if x == y => x,
        (sa, _) => {
            let a2 = a * a;
            let b2 = b * b * BigInt::from(2);
            // a2 == b2 is impossible for nonzero a, b since √2 is irrational.
            if a2 > b2 {
                sa
            } else {
                -sa
            }
        }
    }
}

pub fn rational_sign(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadScalar { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadScalar { a, b: BigRational::zero() }
    }

    pub fn int(a: i64) -> Self {
        QuadScalar::rational(rat(a, 1))
    }

    /// `p/q + (r/s)√2`.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64) -> Self {
        QuadScalar { a: rat(p, q), b: rat(r, s) }
    }

    pub fn zero() -> Self {
        QuadScalar::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn sign(&self) -> Sign {
        quad_sign(&self.a, &self.b)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        QuadScalar { a: &self.a * &k, b: &self.b * &k }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadScalar { a: &self.a * r, b: &self.b * r }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

impl Add for &QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &QuadScalar) -> QuadScalar {
        QuadScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &QuadScalar) -> QuadScalar {
        QuadScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: &QuadScalar) -> QuadScalar {
        let two = BigInt::from(2);
        QuadScalar {
            a: &self.a * &rhs.a + &self.b * &rhs.b * two,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -&self.a, b: -&self.b }
    }
}

impl QuadScalar {
    /// Parses `3`, `-1/2`, `r2`, `1/8r2`, `1 - 3/4√2`, `sqrt2` and similar forms.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let mut prev = ' ';
        for (i, c) in t.char_indices() {
            let split = (c == '+' || c == '-') && i > start && prev != '+' && prev != '-';
            prev = c;
            if split {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        let mut out = QuadScalar::zero();
        for term in terms {
            let surd = ["sqrt2", "√2", "r2"].iter().find_map(|s| term.strip_suffix(s));
            match surd {
                Some(coef) => {
                    let coef = coef.strip_suffix('*').unwrap_or(coef);
                    let c = match coef.strip_prefix('+').unwrap_or(coef) {
                        "" => rat(1, 1),
                        "-" => rat(-1, 1),
                        other => parse_rational(other)?,
                    };
                    out.b += c;
                }
                None => out.a += parse_rational(term.strip_prefix('+').unwrap_or(term))?,
            }
        }
        Ok(out)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.a)),
            (true, false) => write!(f, "{}√2", format_rational(&self.b)),
            (false, false) => write!(f, "{} + {}√2", format_rational(&self.a), format_rational(&self.b)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    a: String,
    b: String,
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadRepr { a: format_rational(&self.a), b: format_rational(&self.b) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QuadRepr::deserialize(d)?;
        Ok(QuadScalar {
            a: parse_rational(&r.a).map_err(serde::de::Error::custom)?,
            b: parse_rational(&r.b).map_err(serde::de::Error::custom)?,
        })
    }
}
