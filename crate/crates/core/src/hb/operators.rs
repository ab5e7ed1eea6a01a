//! Multiplicative and derivative operators of the higher-order sequence.
//!
//! `M = (x - r/(N+1)) - rN sum_{j>=1} B_{N,j+1}/(j+1)! D^j` and `P = D`.
//! On a polynomial of degree `d` only the terms `j <= d` contribute, so `M`
//! acts on `B^{(r)}_{N,n}` exactly as the truncated sum over `k = 0..n-1`.

use num_bigint::BigInt;

use super::numbers::HBNumberTable;
use super::polys::{check_order, HBPolyTable};
use crate::algebra::rational::{big, Factorials, Rational};
use crate::algebra::UniPoly;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct MultiplicativeOperator {
    shift: UniPoly,
    /// `derivative_coeffs[j]` multiplies `D^j`; index 0 is unused.
    derivative_coeffs: Vec<Rational>,
}

impl MultiplicativeOperator {
    /// Operator for order `r`, valid on polynomials of degree `< numbers.values.len() - 1`.
    pub fn new(numbers: &HBNumberTable, r: u32) -> Result<Self> {
        check_order(r)?;
        let big_n = BigInt::from(numbers.big_n);
        let rr = big(BigInt::from(r));
        let shift = UniPoly::linear(&rr / big(&big_n + 1));
        let rn = &rr * big(big_n);
        let len = numbers.values.len();
        let f = Factorials::new(len);
        let mut derivative_coeffs = vec![Rational::from_integer(0.into())];
        for j in 1..len.saturating_sub(1) {
            derivative_coeffs.push(-(&rn * &numbers.values[j + 1] * f.reciprocal(j + 1)));
        }
        Ok(Self { shift, derivative_coeffs })
    }

    /// Largest degree this operator can be applied to.
    pub fn max_degree(&self) -> usize {
        self.derivative_coeffs.len() - 1
    }

    pub fn apply(&self, p: &UniPoly) -> Result<UniPoly> {
        let deg = p.degree().unwrap_or(0);
        if deg > self.max_degree() {
            return Err(crate::Error::IndexOutOfRange {
                index: deg + 1,
                len: self.derivative_coeffs.len() + 1,
            });
        }
        let mut out = &self.shift * p;
        let mut d = p.clone();
        for c in self.derivative_coeffs.iter().take(deg + 1).skip(1) {
            d = d.derivative();
            out = &out + &d.scale(c);
        }
        Ok(out)
    }

    /// `(P M - M P) p`, which the commutation relation requires to equal `p`.
    pub fn commutator_apply(&self, p: &UniPoly) -> Result<UniPoly> {
        let pm = self.apply(p)?.derivative();
        let mp = self.apply(&p.derivative())?;
        Ok(&pm - &mp)
    }
}

/// `M B^{(r)}_{N,n}(x)` with the operator built from `numbers`.
pub fn mult_operator_apply(
    numbers: &HBNumberTable,
    table: &HBPolyTable,
    n: usize,
) -> Result<UniPoly> {
    numbers.require(n + 1)?;
    let op = MultiplicativeOperator::new(numbers, table.r)?;
    op.apply(table.get(n)?)
}
