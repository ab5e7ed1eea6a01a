use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Factorials, Rational};
use crate::algebra::{exp_series, PowerSeries};
use crate::error::{Error, Result};

/// `B_{N,0}, ..., B_{N,n_max}` for one value of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HBNumberTable {
    pub big_n: u32,
    #[serde(with = "rational::serde_rational_vec")]
    pub values: Vec<Rational>,
}

impl HBNumberTable {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&Rational> {
        self.values.get(n).ok_or(Error::IndexOutOfRange { index: n, len: self.values.len() })
    }

    /// Fails unless the table reaches index `n`.
    pub fn require(&self, n: usize) -> Result<()> {
        self.get(n).map(|_| ())
    }

    /// Copy with `values[k]` replaced by `values[k] + delta`.
    pub fn perturbed(&self, k: usize, delta: &Rational) -> Result<Self> {
        let mut out = self.clone();
        let len = out.values.len();
        let slot = out.values.get_mut(k).ok_or(Error::IndexOutOfRange { index: k, len })?;
        *slot += delta;
        Ok(out)
    }
}

pub(crate) fn check_big_n(big_n: u32) -> Result<()> {
    if big_n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    Ok(())
}

/// `(e^t - T_{N-1}(t)) / (t^N / N!)` through `t^order`.
///
/// Coefficient `k` is `N!/(N+k)!`, i.e. the series of `1F1(1; N+1; t)`.
pub fn normalized_denominator(big_n: u32, order: usize) -> Result<PowerSeries> {
    check_big_n(big_n)?;
    let n = big_n as usize;
    let exp = exp_series(order + n);
    // Dropping the first N terms removes T_{N-1}.
    let tail = PowerSeries::new(
        exp.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| if k < n { Rational::from_integer(0.into()) } else { c.clone() })
            .collect(),
        order + n,
    );
    let f = Factorials::new(n);
    Ok(tail.shift_down(n)?.scale(&f.rational(n)))
}

/// `F_N(t) = (t^N/N!) / (e^t - T_{N-1}(t))` through `t^order`.
pub fn generating_series(big_n: u32, order: usize) -> Result<PowerSeries> {
    normalized_denominator(big_n, order)?.invert()
}

/// Converts ordinary coefficients `c_n` into `n! c_n`.
pub(crate) fn egf_values(series: &PowerSeries) -> Vec<Rational> {
    let f = Factorials::new(series.order());
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * f.rational(n))
        .collect()
}

/// Hypergeometric Bernoulli numbers `B_{N,n}`, `n = 0..=n_max`.
pub fn hb_numbers(big_n: u32, n_max: usize) -> Result<HBNumberTable> {
    let values = egf_values(&generating_series(big_n, n_max)?);
    debug_assert!(values[0].is_one());
    Ok(HBNumberTable { big_n, values })
}
