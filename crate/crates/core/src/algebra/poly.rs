use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, binomial_row, big, Rational};

/// Dense univariate polynomial over the rationals, ascending degree.
///
/// The zero polynomial is the empty coefficient list; every other value has
/// a nonzero last coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x - a`
    pub fn linear(a: Rational) -> Self {
        Self::from_coeffs(vec![-a, Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    /// Exact value at `v`.
    ///
    /// Runs Horner's rule on integers after clearing denominators, so only
    /// the final quotient is reduced.
    pub fn eval(&self, v: &Rational) -> Rational {
        let Some(top) = self.coeffs.last() else {
            return Rational::zero();
        };
        if self.coeffs.len() == 1 {
            return top.clone();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = |c: &Rational| c.numer() * (&den / c.denom());
        let (a, b) = (v.numer(), v.denom());
        // acc = sum_k C_k a^k b^(j-k) over the top j coefficients.
        let mut acc = scaled(top);
        let mut b_pow = BigInt::one();
        for c in self.coeffs.iter().rev().skip(1) {
            b_pow *= b;
            acc *= a;
            if !c.is_zero() {
                acc += scaled(c) * &b_pow;
            }
        }
        Rational::new(acc, den * b_pow)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * big(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        if order >= self.coeffs.len() {
            return Self::zero();
        }
        // d^p/dx^p x^k = k!/(k-p)! x^(k-p)
        let coeffs = (order..self.coeffs.len())
            .map(|k| {
                let falling: BigInt = ((k - order + 1)..=k).map(BigInt::from).product();
                &self.coeffs[k] * big(falling)
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / big(BigInt::from(k + 1)));
        }
        Self::from_coeffs(coeffs)
    }

    /// Exact value of `∫_0^1 (1-x)^(n-1) p(x) dx` for `n >= 1`.
    ///
    /// Expands `(1-x)^(n-1)` binomially and integrates monomials.
    pub fn integral_weighted(&self, n: u32) -> Rational {
        assert!(n >= 1, "weight exponent n - 1 requires n >= 1");
        let row = binomial_row(n as usize - 1);
        let mut total = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut inner = Rational::zero();
            for (j, b) in row.iter().enumerate() {
                let term = Rational::new(b.clone(), BigInt::from(j + k + 1));
                if j % 2 == 0 {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
            total += c * inner;
        }
        total
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `p(x + c)`, by binomial re-expansion of each power.
    pub fn taylor_shift(&self, c: &Rational) -> Self {
        if c.is_zero() || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut powers = Vec::with_capacity(n);
        powers.push(Rational::one());
        for k in 1..n {
            let next = &powers[k - 1] * c;
            powers.push(next);
        }
        let mut out = vec![Rational::zero(); n];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = binomial_row(j);
            for (m, b) in row.into_iter().enumerate() {
                out[m] += a * big(b) * &powers[j - m];
            }
        }
        Self::from_coeffs(out)
    }

    /// Builds `sum_k C(n,k) values[k] x^(n-k)`, the degree-`n` member of the
    /// Appell sequence whose values at zero are `values`.
    pub fn appell(values: &[Rational], n: usize) -> Self {
        let row = binomial_row(n);
        let coeffs = (0..=n)
            .map(|deg| big(row[n - deg].clone()) * &values[n - deg])
            .collect();
        Self::from_coeffs(coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational::serde_rational_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        rational::serde_rational_vec::deserialize(d).map(Self::from_coeffs)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    fn b2() -> UniPoly {
        UniPoly::from_coeffs(vec![q(1, 6), int(-1), int(1)])
    }

    #[test]
    fn zero_is_empty() {
        assert!(UniPoly::from_ints(&[0, 0, 0]).coeffs().is_empty());
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(UniPoly::from_ints(&[3, 0, 1, 0]).degree(), Some(2));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(b2().eval(&int(0)), q(1, 6));
        assert_eq!(UniPoly::zero().eval(&int(7)), int(0));
        assert_eq!(UniPoly::from_ints(&[-1, 1]).eval(&int(1)), int(0));
        assert_eq!(b2().eval(&q(1, 2)), q(-1, 12));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(UniPoly::from_ints(&[0, 0, 0, 1]).derivative(), UniPoly::from_ints(&[0, 0, 3]));
        assert!(UniPoly::from_ints(&[5]).derivative().is_zero());
        assert_eq!(b2().derivative(), UniPoly::from_ints(&[-1, 2]));
        let p = UniPoly::from_ints(&[1, 2, 3, 4, 5]);
        assert_eq!(p.nth_derivative(2), p.derivative().derivative());
        assert!(p.nth_derivative(5).is_zero());
        assert_eq!(p.nth_derivative(0), p);
    }

    #[test]
    fn weighted_integral_examples() {
        assert_eq!(UniPoly::one().integral_weighted(3), q(1, 3));
        assert_eq!(UniPoly::one().integral_weighted(1), int(1));
        assert_eq!(UniPoly::from_coeffs(vec![q(-1, 2), int(1)]).integral_weighted(1), int(0));
        assert_eq!(UniPoly::zero().integral_weighted(4), int(0));
    }

    #[test]
    fn weighted_integral_matches_beta_function() {
        // ∫_0^1 (1-x)^(n-1) x^k dx = k! (n-1)! / (n+k)!
        let f = crate::algebra::rational::Factorials::new(30);
        for n in 1..=8u32 {
            for k in 0..=10usize {
                let p = UniPoly::monomial(int(1), k);
                let nn = n as usize;
                let expect = Rational::new(f.get(k) * f.get(nn - 1), f.get(nn + k).clone());
                assert_eq!(p.integral_weighted(n), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = UniPoly::from_ints(&[3, -1, 0, 2]);
        let c = q(-5, 3);
        let shifted = p.taylor_shift(&c);
        for v in [int(0), int(2), q(7, 4)] {
            assert_eq!(shifted.eval(&v), p.eval(&(&v + &c)));
        }
    }

    #[test]
    fn appell_expansion() {
        let values = vec![int(1), q(-1, 2), q(1, 6)];
        assert_eq!(UniPoly::appell(&values, 2), b2());
        assert_eq!(UniPoly::appell(&values, 0), UniPoly::one());
    }

    #[test]
    fn display() {
        assert_eq!(b2().to_string(), "(1)x^2 + (-1)x + 1/6");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
