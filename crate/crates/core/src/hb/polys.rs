use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::numbers::{check_big_n, egf_values, generating_series, hb_numbers, HBNumberTable};
use crate::algebra::rational::{big, binomial_row, Rational};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};

/// `B^{(r)}_{N,n}(x)` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HBPolyTable {
    pub big_n: u32,
    pub r: u32,
    pub polys: Vec<UniPoly>,
}

impl HBPolyTable {
    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&UniPoly> {
        self.polys.get(n).ok_or(Error::IndexOutOfRange { index: n, len: self.polys.len() })
    }

    /// Values at `x = 0`, the higher-order numbers `B^{(r)}_{N,n}`.
    pub fn numbers_at_zero(&self) -> Vec<Rational> {
        self.polys.iter().map(|p| p.coeff(0)).collect()
    }
}

pub(crate) fn check_order(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    Ok(())
}

fn int(v: impl Into<BigInt>) -> Rational {
    big(v.into())
}

/// Appell expansion of a number table: `B_{N,n}(x) = sum_k C(n,k) B_{N,k} x^(n-k)`.
pub fn appell_table(numbers: &HBNumberTable) -> HBPolyTable {
    let polys = (0..numbers.values.len())
        .map(|n| UniPoly::appell(&numbers.values, n))
        .collect();
    HBPolyTable { big_n: numbers.big_n, r: 1, polys }
}

/// Hypergeometric Bernoulli polynomials `B_{N,n}(x)`.
pub fn hb_polys(big_n: u32, n_max: usize) -> Result<HBPolyTable> {
    Ok(appell_table(&hb_numbers(big_n, n_max)?))
}

/// Higher-order polynomials from the `r`-th power of the generating series.
pub fn hb_higher_polys_series(big_n: u32, r: u32, n_max: usize) -> Result<HBPolyTable> {
    check_big_n(big_n)?;
    check_order(r)?;
    let values = egf_values(&generating_series(big_n, n_max)?.pow(r));
    let polys = (0..=n_max).map(|n| UniPoly::appell(&values, n)).collect();
    Ok(HBPolyTable { big_n, r, polys })
}

/// Higher-order polynomials from the three-term-plus-sum recurrence
///
/// `P_{n+1} = (x - r/(N+1)) P_n - rN sum_{k<n} C(n,k) B_{N,n-k+1}/(n-k+1) P_k`,
///
/// started at `P_0 = 1`. `numbers` must reach index `n_max`.
pub fn hb_higher_polys_recurrence(
    numbers: &HBNumberTable,
    r: u32,
    n_max: usize,
) -> Result<HBPolyTable> {
    check_order(r)?;
    numbers.require(n_max)?;
    let big_n = numbers.big_n;
    let rr = int(r);
    let shift = UniPoly::linear(&rr / int(big_n + 1));
    let rn = &rr * int(big_n);

    let mut polys: Vec<UniPoly> = Vec::with_capacity(n_max + 1);
    polys.push(UniPoly::one());
    for n in 0..n_max {
        let mut next = &shift * &polys[n];
        let row = binomial_row(n);
        for (k, pk) in polys.iter().enumerate().take(n) {
            let j = n - k + 1;
            let c = big(row[k].clone()) * &numbers.values[j] / int(j as u64) * &rn;
            next = &next - &pk.scale(&c);
        }
        polys.push(next);
    }
    Ok(HBPolyTable { big_n, r, polys })
}

/// One order step at index `n`:
///
/// `P^{(r+1)}_n = (1/N)(N - n/r) P^{(r)}_n + (1/N)(n/r)(x - r) P^{(r)}_{n-1}`.
pub fn hb_order_step(table: &HBPolyTable, n: usize) -> Result<UniPoly> {
    let current = table.get(n)?;
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let prev = table.get(n - 1)?;
    let nn = int(table.big_n);
    let ratio = int(n as u64) / int(table.r);
    let first = current.scale(&((&nn - &ratio) / &nn));
    let second = (&UniPoly::linear(int(table.r)) * prev).scale(&(&ratio / &nn));
    Ok(&first + &second)
}

/// Applies [`hb_order_step`] at every index, producing the order `r+1` table.
pub fn next_order_table(table: &HBPolyTable) -> Result<HBPolyTable> {
    let polys = (0..table.polys.len())
        .map(|n| hb_order_step(table, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(HBPolyTable { big_n: table.big_n, r: table.r + 1, polys })
}

/// Order-`r` table reached from the Appell table of `numbers` by `r - 1` order steps.
pub fn hb_higher_polys_order_steps(numbers: &HBNumberTable, r: u32) -> Result<HBPolyTable> {
    check_order(r)?;
    let mut table = appell_table(numbers);
    while table.r < r {
        table = next_order_table(&table)?;
    }
    Ok(table)
}

/// True iff every entry is monic of degree equal to its index.
pub fn is_monic_sequence(table: &HBPolyTable) -> bool {
    table
        .polys
        .iter()
        .enumerate()
        .all(|(n, p)| p.degree() == Some(n) && p.leading_coeff().is_some_and(One::is_one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    fn poly(cs: &[Rational]) -> UniPoly {
        UniPoly::from_coeffs(cs.to_vec())
    }

    #[test]
    fn plain_polys() {
        let t = hb_polys(1, 2).unwrap();
        assert_eq!(t.polys[0], UniPoly::one());
        assert_eq!(t.polys[2], poly(&[q(1, 6), q(-1, 1), q(1, 1)]));
        let t2 = hb_polys(2, 1).unwrap();
        assert_eq!(t2.polys[1], poly(&[q(-1, 3), q(1, 1)]));
    }

    #[test]
    fn series_path_examples() {
        assert_eq!(hb_higher_polys_series(3, 1, 6).unwrap(), hb_polys(3, 6).unwrap());
        let t = hb_higher_polys_series(1, 2, 1).unwrap();
        assert_eq!(t.polys[1], poly(&[q(-1, 1), q(1, 1)]));
        for (big_n, r) in [(1, 1), (2, 5), (4, 3)] {
            assert_eq!(hb_higher_polys_series(big_n, r, 3).unwrap().polys[0], UniPoly::one());
        }
    }

    #[test]
    fn recurrence_examples() {
        let nums = hb_numbers(1, 2).unwrap();
        let t = hb_higher_polys_recurrence(&nums, 1, 2).unwrap();
        assert_eq!(t.polys[2], poly(&[q(1, 6), q(-1, 1), q(1, 1)]));
        for (big_n, r) in [(1u32, 1u32), (3, 2), (2, 4)] {
            let nums = hb_numbers(big_n, 1).unwrap();
            let t = hb_higher_polys_recurrence(&nums, r, 1).unwrap();
            let expect = UniPoly::linear(q(i64::from(r), i64::from(big_n) + 1));
            assert_eq!(t.polys[1], expect);
        }
    }

    #[test]
    fn recurrence_needs_enough_numbers() {
        let nums = hb_numbers(2, 3).unwrap();
        assert!(hb_higher_polys_recurrence(&nums, 1, 4).is_err());
        assert!(hb_higher_polys_recurrence(&nums, 0, 2).is_err());
    }

    #[test]
    fn order_step_examples() {
        let t1 = hb_polys(1, 1).unwrap();
        assert_eq!(hb_order_step(&t1, 1).unwrap(), poly(&[q(-1, 1), q(1, 1)]));
        assert_eq!(hb_order_step(&t1, 0).unwrap(), UniPoly::one());
        let t2 = hb_polys(2, 1).unwrap();
        let step = hb_order_step(&t2, 1).unwrap();
        assert_eq!(step, poly(&[q(-2, 3), q(1, 1)]));
        assert_eq!(step, hb_higher_polys_series(2, 2, 1).unwrap().polys[1]);
        assert_eq!(hb_order_step(&t2, 2), Err(Error::IndexOutOfRange { index: 2, len: 2 }));
    }

    #[test]
    fn three_paths_agree_small() {
        for big_n in 1..=3u32 {
            let nums = hb_numbers(big_n, 12).unwrap();
            for r in 1..=3u32 {
                let series = hb_higher_polys_series(big_n, r, 12).unwrap();
                assert_eq!(hb_higher_polys_recurrence(&nums, r, 12).unwrap(), series);
                assert_eq!(hb_higher_polys_order_steps(&nums, r).unwrap(), series);
                assert!(is_monic_sequence(&series));
            }
        }
    }
}
