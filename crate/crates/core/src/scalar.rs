//! Exact scalars in real quadratic fields `Q(sqrt(d))` with a floating-point
//! fallback.
//!
//! Frobenius-Perron data of the small fusion categories we care about lives in
//! `Q(sqrt 2)`, `Q(sqrt 3)` or `Q(sqrt 5)`, so everything downstream (fusion
//! graph weights, free dimensions, interpolated free group parameters) can be
//! carried exactly. Arithmetic that mixes two different radicands degrades to
//! [`Scalar::Approx`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `rational + surd * sqrt(radicand)` with `radicand` square-free.
///
/// `radicand == 1` encodes a plain rational and then `surd` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    rational: BigRational,
    surd: BigRational,
    radicand: u32,
}

fn square_free_part(n: u32) -> (u32, u32) {
    // n = k^2 * m with m square-free
    let mut m = n;
    let mut k = 1u32;
    let mut p = 2u32;
    while p * p <= m {
        while m.is_multiple_of(p * p) {
            m /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, m)
}

impl Quadratic {
    pub fn rational(r: BigRational) -> Self {
        Quadratic {
            rational: r,
            surd: BigRational::zero(),
            radicand: 1,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `a + b sqrt(d)`; `d` need not be square-free.
    pub fn new(a: BigRational, b: BigRational, d: u32) -> Self {
        if d == 0 {
            return Self::rational(a);
        }
        let (k, m) = square_free_part(d);
        let b = b * BigRational::from_integer(BigInt::from(k));
        if m == 1 {
            return Self::rational(a + b);
        }
        Quadratic {
            rational: a,
            surd: b,
            radicand: m,
        }
        .normalized()
    }

    /// `sqrt(n)` for a nonnegative integer `n`.
    pub fn sqrt_of(n: u32) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n)
    }

    fn normalized(mut self) -> Self {
        if self.surd.is_zero() {
            self.radicand = 1;
        }
        self
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Option<u32> {
        match (self.radicand, other.radicand) {
            (1, d) | (d, 1) => Some(d),
            (d, e) if d == e => Some(d),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let d = self.common_radicand(other)?;
        Some(
            Quadratic {
                rational: &self.rational + &other.rational,
                surd: &self.surd + &other.surd,
                radicand: d,
            }
            .normalized(),
        )
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let d = self.common_radicand(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        Some(
            Quadratic {
                rational: &self.rational * &other.rational + &self.surd * &other.surd * dd,
                surd: &self.rational * &other.surd + &self.surd * &other.rational,
                radicand: d,
            }
            .normalized(),
        )
    }

    pub fn conjugate(&self) -> Self {
        Quadratic {
            rational: self.rational.clone(),
            surd: -self.surd.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.radicand));
        &self.rational * &self.rational - &self.surd * &self.surd * dd
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(
            Quadratic {
                rational: c.rational / &n,
                surd: c.surd / &n,
                radicand: self.radicand,
            }
            .normalized(),
        )
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.rational.cmp(&BigRational::zero());
        let sb = self.surd.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            (a, b) => {
                let dd = BigRational::from_integer(BigInt::from(self.radicand));
                let lhs = &self.rational * &self.rational;
                let rhs = &self.surd * &self.surd * dd;
                if lhs > rhs {
                    a
                } else {
                    b
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        a + b * f64::from(self.radicand).sqrt()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", fmt_rational(&self.rational));
        }
        let surd_abs = self.surd.abs();
        let surd_str = if surd_abs.is_one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", fmt_rational(&surd_abs), self.radicand)
        };
        let negative = self.surd.is_negative();
        if self.rational.is_zero() {
            if negative {
                write!(f, "-{surd_str}")
            } else {
                write!(f, "{surd_str}")
            }
        } else {
            let sign = if negative { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rational(&self.rational), sign, surd_str)
        }
    }
}

/// A real number, exact when possible.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Quadratic),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Quadratic::from_integer(0))
    }

    pub fn one() -> Self {
        Scalar::Exact(Quadratic::from_integer(1))
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::Exact(Quadratic::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(Quadratic::rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(Quadratic::rational(r))
    }

    pub fn sqrt_of(n: u32) -> Self {
        Scalar::Exact(Quadratic::sqrt_of(n))
    }

    /// Golden ratio `(1 + sqrt 5) / 2`.
    pub fn golden_ratio() -> Self {
        (Scalar::one() + Scalar::sqrt_of(5)) / Scalar::from_integer(2)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Quadratic> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    /// Sign, exact for exact values.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Exact(q) => q.signum(),
            Scalar::Approx(x) => x.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Comparison: exact when both sides are exact over a common field,
    /// otherwise on `f64` values with `tol` treated as equality.
    pub fn compare(&self, other: &Scalar, tol: f64) -> Ordering {
        match self - other {
            Scalar::Exact(q) => q.signum(),
            Scalar::Approx(x) => {
                if x.abs() <= tol {
                    Ordering::Equal
                } else if x > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Equality: exact when possible, else within `tol`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        self.compare(other, tol) == Ordering::Equal
    }

    /// True only for a genuine exact equality.
    pub fn exact_eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => false,
        }
    }

    pub fn powi(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn recip(&self) -> Scalar {
        Scalar::one() / self.clone()
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other.compare(&self, 0.0) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other.compare(&self, 0.0) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// `{"exact": "...", "value": f64}` for reports; `exact` is null for
    /// floating-point values.
    pub fn report(&self) -> serde_json::Value {
        serde_json::json!({
            "exact": self.as_exact().map(ToString::to_string),
            "value": self.to_f64(),
        })
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        items.into_iter().fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_integer(i64::from(n))
    }
}

impl From<u32> for Scalar {
    fn from(n: u32) -> Self {
        Scalar::from_integer(i64::from(n))
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Approx(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Approx(x) => write!(f, "{x:?}"),
        }
    }
}

fn binop(
    a: &Scalar,
    b: &Scalar,
    exact: impl Fn(&Quadratic, &Quadratic) -> Option<Quadratic>,
    float: impl Fn(f64, f64) -> f64,
) -> Scalar {
    if let (Scalar::Exact(x), Scalar::Exact(y)) = (a, b) {
        if let Some(q) = exact(x, y) {
            return Scalar::Exact(q);
        }
    }
    Scalar::Approx(float(a.to_f64(), b.to_f64()))
}

macro_rules! scalar_op {
    ($trait:ident, $method:ident, $exact:expr, $float:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                binop(self, rhs, $exact, $float)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                binop(&self, &rhs, $exact, $float)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                binop(&self, rhs, $exact, $float)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                binop(self, &rhs, $exact, $float)
            }
        }
    };
}

scalar_op!(Add, add, |x, y| x.checked_add(y), |a, b| a + b);
scalar_op!(
    Sub,
    sub,
    |x: &Quadratic, y: &Quadratic| x.checked_add(&quad_neg(y)),
    |a, b| a - b
);
scalar_op!(Mul, mul, |x, y| x.checked_mul(y), |a, b| a * b);
scalar_op!(
    Div,
    div,
    |x: &Quadratic, y: &Quadratic| y.checked_inv().and_then(|inv| x.checked_mul(&inv)),
    |a, b| a / b
);

fn quad_neg(q: &Quadratic) -> Quadratic {
    Quadratic {
        rational: -q.rational.clone(),
        surd: -q.surd.clone(),
        radicand: q.radicand,
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(quad_neg(&q)),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

// --- parsing -------------------------------------------------------------

/// Recursive-descent parser for the textual scalar form:
/// numbers (integers or finite decimals), `sqrt(n)`, `+ - * /` and parentheses.
struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().peekable(),
            src,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("scalar {:?}: {msg}", self.src))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<(), Error> {
        match self.peek() {
            Some(c) if c == want => {
                self.chars.next();
                Ok(())
            }
            _ => Err(self.err(&format!("expected '{want}'"))),
        }
    }

    fn expr(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.chars.next();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.chars.next();
                    acc = acc * self.factor()?;
                }
                Some('/') => {
                    self.chars.next();
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc / rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, Error> {
        match self.peek() {
            Some('-') => {
                self.chars.next();
                Ok(-self.factor()?)
            }
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('s') => {
                for want in "sqrt".chars() {
                    self.expect(want)?;
                }
                self.expect('(')?;
                let n = self.number()?;
                self.expect(')')?;
                let q = n
                    .as_exact()
                    .filter(|q| q.is_rational() && q.rational_part().is_integer())
                    .and_then(|q| q.rational_part().to_integer().to_u32())
                    .ok_or_else(|| self.err("sqrt takes a nonnegative integer"))?;
                Ok(Scalar::sqrt_of(q))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            _ => Err(self.err("unexpected token")),
        }
    }

    fn number(&mut self) -> Result<Scalar, Error> {
        self.skip_ws();
        let mut text = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' {
                text.push(c);
                self.chars.next();
                // exponent sign
                if (c == 'e' || c == 'E') && matches!(self.chars.peek(), Some((_, '-' | '+'))) {
                    text.push(self.chars.next().map(|(_, c)| c).unwrap_or('+'));
                }
            } else {
                break;
            }
        }
        parse_decimal(&text).ok_or_else(|| self.err("bad number"))
    }
}

/// Parse a finite decimal literal exactly.
fn parse_decimal(text: &str) -> Option<Scalar> {
    if text.is_empty() {
        return None;
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Some(Scalar::from_rational(r))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if let Some(rest) = trimmed.strip_prefix("~") {
            // explicit float marker
            return rest
                .trim()
                .parse::<f64>()
                .map(Scalar::Approx)
                .map_err(|e| Error::Parse(format!("scalar {s:?}: {e}")));
        }
        let mut p = Parser::new(trimmed);
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(q) => serializer.serialize_str(&q.to_string()),
            Scalar::Approx(x) => serializer.serialize_str(&format!("~{x:?}")),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            // shortest round-trip representation, read back exactly
            Raw::Num(x) => parse_decimal(&format!("{x:?}"))
                .or(Some(Scalar::Approx(x)))
                .ok_or_else(|| serde::de::Error::custom("bad number")),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn golden_ratio_identity() {
        let phi = Scalar::golden_ratio();
        assert!((&phi * &phi).exact_eq(&(&phi + Scalar::one())));
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in [
            "0",
            "-3/4",
            "sqrt(5)",
            "5/2+1/2*sqrt(5)",
            "-3+8*sqrt(2)",
            "7-sqrt(3)",
        ] {
            let v = s(text);
            assert_eq!(v.to_string(), text);
            assert!(s(&v.to_string()).exact_eq(&v));
        }
        assert!(s("(1+sqrt(5))/2").exact_eq(&Scalar::golden_ratio()));
        assert!(s("sqrt(8)").exact_eq(&(Scalar::from_integer(2) * Scalar::sqrt_of(2))));
        assert!(s("0.6").exact_eq(&Scalar::from_ratio(3, 5)));
        assert!(s("1e-2").exact_eq(&Scalar::from_ratio(1, 100)));
        assert!(s("~0.25").approx_eq(&Scalar::from_ratio(1, 4), 0.0));
        assert!("1+".parse::<Scalar>().is_err());
        assert!("sqrt(x)".parse::<Scalar>().is_err());
    }

    #[test]
    fn exact_sign_of_mixed_terms() {
        // 3 - 2 sqrt(2) > 0, 1 - sqrt(2) < 0
        assert!(s("3-2*sqrt(2)").is_positive());
        assert!(s("1-sqrt(2)").is_negative());
        assert!(s("-7+5*sqrt(2)").is_positive());
        assert!(s("-8+5*sqrt(2)").is_negative());
        assert_eq!(s("sqrt(5)").compare(&s("2"), 0.0), Ordering::Greater);
    }

    #[test]
    fn mixed_radicands_fall_back_to_float() {
        let v = Scalar::sqrt_of(2) + Scalar::sqrt_of(3);
        assert!(!v.is_exact());
        assert!((v.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-14);
        // rational parts combine with any field
        assert!((Scalar::sqrt_of(2) * Scalar::from_integer(3)).is_exact());
    }

    #[test]
    fn inverse_in_field() {
        let x = s("2+sqrt(3)");
        assert!((&x * x.recip()).exact_eq(&Scalar::one()));
        assert!(x.recip().exact_eq(&s("2-sqrt(3)")));
    }

    #[test]
    fn serde_round_trip() {
        let v = s("5/2+1/2*sqrt(5)");
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"5/2+1/2*sqrt(5)\"");
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert!(back.exact_eq(&v));
        let from_num: Scalar = serde_json::from_str("0.4").unwrap();
        assert!(from_num.exact_eq(&Scalar::from_ratio(2, 5)));
    }
}
