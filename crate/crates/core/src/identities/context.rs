use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::error::Result;
use crate::hb::{hb_numbers, HBNumberTable};

/// A deliberate change to one stored number, for mutation testing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub big_n: u32,
    pub index: usize,
    #[serde(with = "rational::serde_rational")]
    pub delta: Rational,
}

/// Number tables shared by the checks.
///
/// The checks read `B_{N,k}` from here whenever a formula uses the numbers
/// as coefficients. Reference quantities (the series path for higher-order
/// polynomials, generating-function series) are always recomputed
/// independently, so a [`Fault`] shows up as a disagreement.
#[derive(Clone, Debug, Default)]
pub struct Context {
    tables: BTreeMap<u32, HBNumberTable>,
    fault: Option<Fault>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn fault(&self) -> Option<&Fault> {
        self.fault.as_ref()
    }

    /// Precomputes tables for each `N` in `big_ns` through index `n_max`.
    pub fn prepared(mut self, big_ns: impl IntoIterator<Item = u32>, n_max: usize) -> Result<Self> {
        for big_n in big_ns {
            self.tables.insert(big_n, hb_numbers(big_n, n_max)?);
        }
        Ok(self)
    }

    /// `B_{N,0..=n_max}`, with the fault applied if it lands in range.
    pub fn numbers(&self, big_n: u32, n_max: usize) -> Result<HBNumberTable> {
        let mut table = match self.tables.get(&big_n) {
            Some(t) if t.n_max() >= n_max => HBNumberTable {
                big_n,
                values: t.values[..=n_max].to_vec(),
            },
            _ => hb_numbers(big_n, n_max)?,
        };
        if let Some(f) = &self.fault {
            if f.big_n == big_n && f.index <= n_max {
                table = table.perturbed(f.index, &f.delta)?;
            }
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn prepared_and_fresh_tables_agree() {
        let ctx = Context::new().prepared([1, 2], 10).unwrap();
        assert_eq!(ctx.numbers(2, 6).unwrap(), hb_numbers(2, 6).unwrap());
        assert_eq!(ctx.numbers(2, 14).unwrap(), hb_numbers(2, 14).unwrap());
        assert_eq!(ctx.numbers(3, 4).unwrap(), hb_numbers(3, 4).unwrap());
    }

    #[test]
    fn fault_applies_only_in_range() {
        let ctx = Context::new().with_fault(Fault { big_n: 1, index: 4, delta: int(1) });
        assert_eq!(ctx.numbers(1, 3).unwrap(), hb_numbers(1, 3).unwrap());
        assert_ne!(ctx.numbers(1, 4).unwrap(), hb_numbers(1, 4).unwrap());
        assert_eq!(ctx.numbers(2, 6).unwrap(), hb_numbers(2, 6).unwrap());
    }
}
