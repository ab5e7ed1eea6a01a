use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{big, Factorials, Rational};
use crate::error::{Error, Result};

/// Truncated formal power series in `t`, exact through `t^order`.
///
/// `coeffs` always has length `order + 1`. Binary operations return a series
/// at the smaller of the two operand orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Pads with zeros or truncates so that the result is known through `order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise precision by truncation");
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self { coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self { coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| {
                let mut acc = Rational::zero();
                for j in 0..=k {
                    let (a, b) = (&self.coeffs[j], &rhs.coeffs[k - j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse by the triangular recurrence
    /// `b_0 = 1/a_0`, `b_k = -(1/a_0) sum_{j=1..k} a_j b_{k-j}`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_a0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv_a0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-(acc * &inv_a0));
        }
        Ok(Self { coeffs: out })
    }

    /// `self^r` by binary exponentiation; identical to repeated `mul`.
    pub fn pow(&self, mut r: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while r > 0 {
            if r & 1 == 1 {
                result = result.mul(&base);
            }
            r >>= 1;
            if r > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Formal `d/dt`; the result is exact through `t^(order-1)`.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            // Nothing is known about the derivative; keep a single zero slot
            // so that downstream min-order bookkeeping stays well defined.
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * big(BigInt::from(k)))
            .collect();
        Self { coeffs }
    }

    /// Multiplication by `t^k`; known through `order + k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Division by `t^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InvalidParameter(format!(
                "cannot divide a series of order {} by t^{k}",
                self.order()
            )));
        }
        if let Some(index) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::NonzeroLowTerm { shift: k, index });
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }
}

/// `e^t` through `t^order`.
pub fn exp_series(order: usize) -> PowerSeries {
    let f = Factorials::new(order);
    PowerSeries::new((0..=order).map(|k| f.reciprocal(k)).collect(), order)
}
