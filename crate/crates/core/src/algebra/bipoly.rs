use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::UniPoly;
use super::rational::{self, Rational};

/// Dense polynomial in `(x, s)` over the rationals.
///
/// Stored by powers of `x`: `rows[i]` is the coefficient of `x^i`, itself a
/// polynomial in `s`, so `rows[i].coeff(j)` multiplies `x^i s^j`. Trailing
/// zero rows are trimmed and each row is canonical, which makes the padded
/// matrix form unique as well.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    rows: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from_integer(1.into()))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_rows(vec![UniPoly::constant(c)])
    }

    /// Polynomial in `s` only.
    pub fn from_s_poly(p: UniPoly) -> Self {
        Self::from_rows(vec![p])
    }

    /// Polynomial in `x` only.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        Self::from_rows(p.coeffs().iter().cloned().map(UniPoly::constant).collect())
    }

    pub fn from_rows(mut rows: Vec<UniPoly>) -> Self {
        while rows.last().is_some_and(UniPoly::is_zero) {
            rows.pop();
        }
        Self { rows }
    }

    /// From `matrix[i][j]` multiplying `x^i s^j`.
    pub fn from_matrix(matrix: Vec<Vec<Rational>>) -> Self {
        Self::from_rows(matrix.into_iter().map(UniPoly::from_coeffs).collect())
    }

    /// Rectangular coefficient matrix, `[i][j]` multiplying `x^i s^j`.
    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        let cols = self.rows.iter().map(|r| r.coeffs().len()).max().unwrap_or(0);
        self.rows
            .iter()
            .map(|r| (0..cols).map(|j| r.coeff(j)).collect())
            .collect()
    }

    pub fn rows(&self) -> &[UniPoly] {
        &self.rows
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.rows.get(i).map_or_else(Rational::zero, |r| r.coeff(j))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn degree_s(&self) -> Option<usize> {
        self.rows.iter().filter_map(UniPoly::degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    /// `a(x, s + c)`
    pub fn shift_s(&self, c: &Rational) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.taylor_shift(c)).collect())
    }

    /// `a(x, sval)` as a polynomial in `x`.
    pub fn subst_s(&self, sval: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.rows.iter().map(|r| r.eval(sval)).collect())
    }

    /// `a(xval, s)` as a polynomial in `s`.
    pub fn subst_x(&self, xval: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for r in self.rows.iter().rev() {
            acc = &acc.scale(xval) + r;
        }
        acc
    }

    pub fn eval(&self, xval: &Rational, sval: &Rational) -> Rational {
        self.subst_s(sval).eval(xval)
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let matrix: Vec<Vec<String>> = self
            .to_matrix()
            .iter()
            .map(|row| row.iter().map(rational::to_string).collect())
            .collect();
        matrix.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        let matrix = raw
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| rational::parse(c).map_err(serde::de::Error::custom))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_matrix(matrix))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let zero = UniPoly::zero();
        BiPoly::from_rows(
            (0..n)
                .map(|i| self.rows.get(i).unwrap_or(&zero) + rhs.rows.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { rows: self.rows.iter().map(|r| -r).collect() }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![UniPoly::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in rhs.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BiPoly::from_rows(rows)
    }
}
