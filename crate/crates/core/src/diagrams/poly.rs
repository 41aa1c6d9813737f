//! Multivariate polynomials in the loop parameters `d_c`, one per color.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::Scalar;

/// Sorted `(color, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(char, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(c: char) -> Self {
        Monomial(vec![(c, 1)])
    }

    pub fn from_counts(counts: &BTreeMap<char, u32>) -> Self {
        Monomial(
            counts
                .iter()
                .filter(|(_, &e)| e > 0)
                .map(|(&c, &e)| (c, e))
                .collect(),
        )
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(char, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut counts: BTreeMap<char, u32> = self.0.iter().copied().collect();
        for &(c, e) in &other.0 {
            *counts.entry(c).or_default() += e;
        }
        Monomial::from_counts(&counts)
    }
}

/// `sum coeff * prod d_c^e` with rational coefficients; zero terms pruned.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LoopPoly {
    pub fn zero() -> Self {
        LoopPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The loop parameter `d_c`.
    pub fn delta(c: char) -> Self {
        Self::monomial(Monomial::var(c), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = LoopPoly::zero();
        p.add_term(m, c);
        p
    }

    /// Product of `d_c` over the given loop colors.
    pub fn loops(colors: &[char]) -> Self {
        let mut counts = BTreeMap::new();
        for &c in colors {
            *counts.entry(c).or_insert(0u32) += 1;
        }
        Self::monomial(Monomial::from_counts(&counts), BigRational::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &BigRational) -> LoopPoly {
        let mut out = LoopPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Evaluation with every missing color treated as an error.
    pub fn eval_f64(&self, delta: &dyn Fn(char) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let v: f64 = m.0.iter().map(|&(col, e)| delta(col).powi(e as i32)).product();
                c.to_f64().unwrap_or(f64::NAN) * v
            })
            .sum()
    }

    pub fn eval_scalar(&self, delta: &dyn Fn(char) -> Scalar) -> Scalar {
        self.terms
            .iter()
            .map(|(m, c)| {
                let v =
                    m.0.iter()
                        .fold(Scalar::one(), |acc, &(col, e)| acc * delta(col).powi(e));
                Scalar::from_rational(c.clone()) * v
            })
            .sum()
    }

    /// Evaluation with a single value for every color.
    pub fn eval_uniform(&self, delta: f64) -> f64 {
        self.eval_f64(&|_| delta)
    }
}

impl Add<&LoopPoly> for &LoopPoly {
    type Output = LoopPoly;
    fn add(self, rhs: &LoopPoly) -> LoopPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&LoopPoly> for &LoopPoly {
    type Output = LoopPoly;
    fn sub(self, rhs: &LoopPoly) -> LoopPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&LoopPoly> for &LoopPoly {
    type Output = LoopPoly;
    fn mul(self, rhs: &LoopPoly) -> LoopPoly {
        let mut out = LoopPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LoopPoly {
    type Output = LoopPoly;
    fn neg(self) -> LoopPoly {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for LoopPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if m.0.is_empty() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for &(col, e) in &m.0 {
                if e == 1 {
                    factors.push(format!("d_{col}"));
                } else {
                    factors.push(format!("d_{col}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for LoopPoly {
    type Err = Error;

    /// Parses the display form, e.g. `d_c^2+2*d_c*d_d-1/2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Parse(format!("polynomial {s:?}: {msg}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = LoopPoly::zero();
        let mut rest = text.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = BigRational::one();
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if !first {
                return Err(bad("expected + or -"));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let mut coeff = sign;
            let mut counts = BTreeMap::new();
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix("d_") {
                    let mut chars = var.chars();
                    let col = chars.next().ok_or_else(|| bad("missing color"))?;
                    let tail: String = chars.collect();
                    let e: u32 = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|x| x.parse().ok())
                            .ok_or_else(|| bad("bad exponent"))?
                    };
                    *counts.entry(col).or_insert(0) += e;
                } else {
                    let r: BigRational = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff *= r;
                }
            }
            out.add_term(Monomial::from_counts(&counts), coeff);
        }
        Ok(out)
    }
}

impl Serialize for LoopPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LoopPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let d = LoopPoly::delta('c');
        let p = &(&d * &d) + &d;
        assert_eq!(p.to_string(), "d_c^2+d_c");
        assert_eq!(p.eval_uniform(2.0), 6.0);
        assert!((&p - &p).is_zero());
        assert_eq!(LoopPoly::loops(&['c', 'd', 'c']).to_string(), "d_c^2*d_d");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["0", "1", "-1/2", "d_c^2+d_c", "2*d_c*d_d-3", "-d_x^3+1/3*d_y"] {
            let p: LoopPoly = text.parse().unwrap();
            assert_eq!(p.to_string().parse::<LoopPoly>().unwrap(), p, "{text}");
        }
        assert_eq!("d_c+d_c".parse::<LoopPoly>().unwrap().to_string(), "2*d_c");
        assert!("d_".parse::<LoopPoly>().is_err());
        assert!("".parse::<LoopPoly>().is_err());
    }

    #[test]
    fn exact_evaluation() {
        let p: LoopPoly = "d_c^2-d_c-1".parse().unwrap();
        assert!(p.eval_scalar(&|_| Scalar::golden_ratio()).is_zero());
    }
}
