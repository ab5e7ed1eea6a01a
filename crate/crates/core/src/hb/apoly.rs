//! Coefficient polynomials `A_r^{(N)}(i, x; s)` of the sums-of-products
//! expansion, and their `x`-free counterpart.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::numbers::check_big_n;
use super::polys::check_order;
use crate::algebra::rational::{big, Rational};
use crate::algebra::{BiPoly, UniPoly};
use crate::error::Result;

/// `entries[i] = A_r^{(N)}(i, x; s)` for `0 <= i <= r - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APolyTable {
    pub big_n: u32,
    pub r: u32,
    pub entries: Vec<BiPoly>,
}

impl APolyTable {
    /// Entry `i`, zero outside `0..r`.
    pub fn entry(&self, i: i64) -> BiPoly {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.entries.get(i))
            .cloned()
            .unwrap_or_else(BiPoly::zero)
    }

    /// The `s` value used with index `n`: `1 + N(r-1) - n`.
    pub fn s_for(&self, n: usize) -> Rational {
        big(BigInt::from(1 + i64::from(self.big_n) * (i64::from(self.r) - 1) - n as i64))
    }

    /// Each entry with `s := 1 + N(r-1) - n`.
    pub fn specialize(&self, n: usize) -> Vec<UniPoly> {
        let s = self.s_for(n);
        self.entries.iter().map(|a| a.subst_s(&s)).collect()
    }

    /// Each entry with `x := 0`.
    pub fn at_x_zero(&self) -> Self {
        let zero = Rational::from_integer(0.into());
        Self {
            big_n: self.big_n,
            r: self.r,
            entries: self.entries.iter().map(|a| BiPoly::from_s_poly(a.subst_x(&zero))).collect(),
        }
    }

    /// True iff `deg_s A(i) <= r-1-i` and `deg_x A(i) <= i` for every entry.
    pub fn satisfies_degree_bounds(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, a)| {
            let r = self.r as usize;
            a.degree_s().is_none_or(|d| d + 1 + i <= r) && a.degree_x().is_none_or(|d| d <= i)
        })
    }
}

fn q(v: i64) -> Rational {
    big(BigInt::from(v))
}

/// Shared driver: `A_r(i) = (s-1)/(r-1) A_{r-1}(i; s-N) + L_r A_{r-1}(i-1; s-N+1)`
/// where `L_r` is supplied by `lower` as a bivariate polynomial.
fn build(big_n: u32, r: u32, lower: impl Fn(u32) -> BiPoly) -> Result<APolyTable> {
    check_big_n(big_n)?;
    check_order(r)?;
    let nn = i64::from(big_n);
    let s_minus_one = BiPoly::from_s_poly(UniPoly::linear(q(1)));
    let mut prev = vec![BiPoly::one()];
    for step in 2..=r {
        let inv = q(i64::from(step) - 1).recip();
        let first_factor = s_minus_one.scale(&inv);
        let second_factor = lower(step);
        let mut next = Vec::with_capacity(step as usize);
        for i in 0..step as usize {
            let mut acc = BiPoly::zero();
            if let Some(a) = prev.get(i) {
                acc = &acc + &(&first_factor * &a.shift_s(&q(-nn)));
            }
            if i >= 1 {
                if let Some(a) = prev.get(i - 1) {
                    acc = &acc + &(&second_factor * &a.shift_s(&q(1 - nn)));
                }
            }
            next.push(acc);
        }
        prev = next;
    }
    Ok(APolyTable { big_n, r, entries: prev })
}

/// `A_r^{(N)}(i, x; s)` by the recurrence with lower coefficient `-(x-(r-1))/(r-1)`.
pub fn a_poly(big_n: u32, r: u32) -> Result<APolyTable> {
    build(big_n, r, |step| {
        let m = q(i64::from(step) - 1);
        BiPoly::from_x_poly(&UniPoly::linear(m.clone()).scale(&-m.recip()))
    })
}

/// Kamano's `A_r^{(N)}(i; s)`, built by its own recurrence with lower coefficient 1.
pub fn a_poly_at_zero(big_n: u32, r: u32) -> Result<APolyTable> {
    build(big_n, r, |_| BiPoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn order_one_is_constant_one() {
        for big_n in 1..=4 {
            let t = a_poly(big_n, 1).unwrap();
            assert_eq!(t.entries, vec![BiPoly::one()]);
            assert_eq!(a_poly_at_zero(big_n, 1).unwrap().entries, vec![BiPoly::one()]);
        }
    }

    #[test]
    fn order_two_specialization() {
        for big_n in 1..=5u32 {
            let t = a_poly(big_n, 2).unwrap();
            for n in 0..8usize {
                let spec = t.specialize(n);
                assert_eq!(spec[0], UniPoly::constant(q(i64::from(big_n) - n as i64)));
                assert_eq!(spec[1], UniPoly::from_ints(&[1, -1]));
            }
        }
    }

    #[test]
    fn order_three_outer_entries() {
        let half = rat(1, 2).unwrap();
        for big_n in 1..=5i64 {
            let t = a_poly(big_n as u32, 3).unwrap();
            for n in 0..8i64 {
                let spec = t.specialize(n as usize);
                assert_eq!(spec[0], UniPoly::constant(&half * q((2 * big_n - n) * (big_n - n))));
                assert_eq!(spec[2], UniPoly::from_ints(&[2, -3, 1]).scale(&half));
            }
        }
    }

    #[test]
    fn kamano_table_is_x_zero_specialization() {
        for big_n in 1..=4 {
            for r in 1..=6 {
                assert_eq!(a_poly_at_zero(big_n, r).unwrap(), a_poly(big_n, r).unwrap().at_x_zero());
            }
        }
        let k2 = a_poly_at_zero(3, 2).unwrap();
        assert_eq!(k2.entries[1], BiPoly::one());
    }

    #[test]
    fn degree_bounds() {
        for big_n in 1..=4 {
            for r in 1..=7 {
                assert!(a_poly(big_n, r).unwrap().satisfies_degree_bounds());
            }
        }
    }

    #[test]
    fn out_of_range_entries_are_zero() {
        let t = a_poly(2, 3).unwrap();
        assert!(t.entry(-1).is_zero());
        assert!(t.entry(3).is_zero());
        assert!(!t.entry(2).is_zero());
    }
}
