//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator. The helpers here cover construction from
//! machine integers, the `"p/q"` text form used by every output format, and
//! small combinatorial tables.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds `num/den` in lowest terms, sign carried by the numerator.
pub fn rat(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// `"p/q"` with `q > 0` and the fraction reduced, or `"p"` when `q = 1`.
pub fn to_string(v: &Rational) -> String {
    v.to_string()
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed) and reduces.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// True iff the stored numerator/denominator pair is canonical.
pub fn is_canonical(v: &Rational) -> bool {
    v.denom().is_positive() && v.numer().gcd(v.denom()).is_one()
}

pub mod serde_rational {
    //! Serde adapter writing a `Rational` as its `"p/q"` string.
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    //! Serde adapter for a list of rationals as `["p/q", ...]`.
    use super::Rational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&super::to_string(c))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| super::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Exact `0!, 1!, ..., max!`.
#[derive(Clone, Debug)]
pub struct Factorials {
    table: Vec<BigInt>,
}

impl Factorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        table.push(BigInt::one());
        for k in 1..=max {
            let next = &table[k - 1] * BigInt::from(k);
            table.push(next);
        }
        Self { table }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, k: usize) -> &BigInt {
        &self.table[k]
    }

    pub fn rational(&self, k: usize) -> Rational {
        big(self.table[k].clone())
    }

    /// `1/k!`
    pub fn reciprocal(&self, k: usize) -> Rational {
        Rational::new(BigInt::one(), self.table[k].clone())
    }

    pub fn binomial(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        &self.table[n] / (&self.table[k] * &self.table[n - k])
    }
}

/// Rising factorial `a (a+1) ... (a+n-1)`, equal to 1 for `n = 0`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Row `C(n, 0), ..., C(n, n)` as exact integers.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(BigInt::one());
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n + 1 - k) / BigInt::from(k);
        row.push(next);
    }
    row
}
