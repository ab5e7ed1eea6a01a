//! Agreement between construction paths, and the Appell-sequence properties.

use num_traits::{One, Zero};

use super::context::Context;
use super::report::{params, CertMode, Counterexample, Params, Value, VerifyReport};
use super::sums::multinomial_convolution;
use crate::algebra::rational::{self, big, Factorials, Rational};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::hb::{
    hb_higher_polys_order_steps, hb_higher_polys_recurrence, hb_higher_polys_series,
    HBPolyTable, MultiplicativeOperator,
};

pub const RECURRENCE_PATHS: &str = "recurrence_paths";
pub const APPELL_BASICS: &str = "appell_basics";

/// All tables compared by [`check_recurrence_paths`].
struct PathTables {
    series: HBPolyTable,
    recurrence: HBPolyTable,
    order_steps: HBPolyTable,
    operator: MultiplicativeOperator,
}

impl PathTables {
    fn build(ctx: &Context, big_n: u32, r: u32, n_max: usize) -> Result<Self> {
        let numbers = ctx.numbers(big_n, n_max)?;
        Ok(Self {
            series: hb_higher_polys_series(big_n, r, n_max)?,
            recurrence: hb_higher_polys_recurrence(&numbers, r, n_max)?,
            order_steps: hb_higher_polys_order_steps(&numbers, r)?,
            operator: MultiplicativeOperator::new(&numbers, r)?,
        })
    }

    fn sides(&self, property: &str, n: usize) -> Result<(Value, Value)> {
        let s = self.series.get(n)?;
        let pair = match property {
            "series_vs_recurrence" => (s.clone(), self.recurrence.get(n)?.clone()),
            "series_vs_order_steps" => (s.clone(), self.order_steps.get(n)?.clone()),
            "operator" => (self.operator.apply(s)?, self.series.get(n + 1)?.clone()),
            "commutator" => (self.operator.commutator_apply(s)?, s.clone()),
            other => return Err(Error::Replay(format!("unknown property {other}"))),
        };
        Ok((pair.0.into(), pair.1.into()))
    }
}

fn record(report: &mut VerifyReport, property: &str, n: usize, sides: (Value, Value)) {
    report.cells_checked += 1;
    if sides.0 != sides.1 {
        report.fail(Counterexample {
            property: property.to_string(),
            inputs: params([("n", n.into())]),
            lhs: sides.0,
            rhs: sides.1,
        });
    }
}

/// Series path against the recurrence path and against iterated order steps,
/// coefficientwise for `n = 0..=n_max`; also checks the multiplicative
/// operator raises the index and satisfies the commutation relation.
pub fn check_recurrence_paths(ctx: &Context, big_n: u32, r: u32, n_max: usize) -> Result<VerifyReport> {
    let tables = PathTables::build(ctx, big_n, r, n_max)?;
    let ps = params([("N", big_n.into()), ("r", r.into()), ("n_max", n_max.into())]);
    let mut report = VerifyReport::new(RECURRENCE_PATHS, ps, CertMode::Exact);
    for n in 0..=n_max {
        record(&mut report, "series_vs_recurrence", n, tables.sides("series_vs_recurrence", n)?);
        record(&mut report, "series_vs_order_steps", n, tables.sides("series_vs_order_steps", n)?);
        if n < n_max {
            record(&mut report, "operator", n, tables.sides("operator", n)?);
            record(&mut report, "commutator", n, tables.sides("commutator", n)?);
        }
    }
    Ok(report)
}

/// `B^{(r)}_{N,n}` at zero by `r`-fold convolution of the stored numbers.
fn numbers_at_zero_reference(ctx: &Context, big_n: u32, r: u32, n_max: usize) -> Result<Vec<Rational>> {
    let numbers = ctx.numbers(big_n, n_max)?;
    if r == 1 {
        return Ok(numbers.values);
    }
    let constants: Vec<UniPoly> = numbers.values.iter().cloned().map(UniPoly::constant).collect();
    let zeros = vec![Rational::zero(); r as usize];
    Ok((0..=n_max).map(|n| multinomial_convolution(&constants, &zeros, n)).collect())
}

fn derivative_sides(table: &HBPolyTable, f: &Factorials, n: usize, p: usize) -> Result<(Value, Value)> {
    let lhs = table.get(n)?.nth_derivative(p);
    let falling = big(f.get(n) / f.get(n - p));
    Ok((lhs.into(), table.get(n - p)?.scale(&falling).into()))
}

fn monic_sides(table: &HBPolyTable, n: usize) -> Result<(Value, Value)> {
    // Compare the polynomial's top part against x^n: degree and leading coefficient.
    let p = table.get(n)?;
    let top = match p.degree() {
        Some(d) => UniPoly::monomial(p.coeff(d), d),
        None => UniPoly::zero(),
    };
    Ok((top.into(), UniPoly::monomial(Rational::one(), n).into()))
}

fn weighted_sides(table: &HBPolyTable, n: usize) -> Result<(Value, Value)> {
    let expected = if n == 0 { rational::int(i64::from(table.big_n)).recip() } else { Rational::zero() };
    Ok((table.get(n)?.integral_weighted(table.big_n).into(), expected.into()))
}

/// Derivative property for every `0 <= p <= n`, monicity, value at zero
/// against the stored numbers, and (for `r = 1`) the weighted-integral
/// condition `∫_0^1 (1-x)^(N-1) B_{N,n}(x) dx = [n = 0]/N`.
pub fn check_appell_basics(ctx: &Context, big_n: u32, r: u32, n_max: usize) -> Result<VerifyReport> {
    let table = hb_higher_polys_series(big_n, r, n_max)?;
    let reference = numbers_at_zero_reference(ctx, big_n, r, n_max)?;
    let f = Factorials::new(n_max);
    let ps = params([("N", big_n.into()), ("r", r.into()), ("n_max", n_max.into())]);
    let mut report = VerifyReport::new(APPELL_BASICS, ps, CertMode::Exact);

    let push = |report: &mut VerifyReport, property: &str, inputs: Params, sides: (Value, Value)| {
        report.cells_checked += 1;
        if sides.0 != sides.1 {
            report.fail(Counterexample { property: property.into(), inputs, lhs: sides.0, rhs: sides.1 });
        }
    };
    for (n, at_zero_ref) in reference.iter().enumerate().take(n_max + 1) {
        for p in 0..=n {
            let inputs = params([("n", n.into()), ("p", p.into())]);
            push(&mut report, "derivative", inputs, derivative_sides(&table, &f, n, p)?);
        }
        push(&mut report, "monic", params([("n", n.into())]), monic_sides(&table, n)?);
        let at_zero = (table.polys[n].coeff(0).into(), at_zero_ref.clone().into());
        push(&mut report, "value_at_zero", params([("n", n.into())]), at_zero);
        if r == 1 {
            push(&mut report, "weighted_integral", params([("n", n.into())]), weighted_sides(&table, n)?);
        }
    }
    Ok(report)
}

pub(crate) fn replay_sides(ctx: &Context, report: &VerifyReport, cex: &Counterexample) -> Result<(Value, Value)> {
    let get = |k: &str| report.param(k).ok_or_else(|| Error::Replay(format!("missing parameter {k}")));
    let input = |k: &str| {
        cex.inputs
            .get(k)
            .and_then(|v| v.as_int())
            .map(|v| v as usize)
            .ok_or_else(|| Error::Replay(format!("missing input {k}")))
    };
    let (big_n, r, n_max) = (get("N")? as u32, get("r")? as u32, get("n_max")? as usize);
    let n = input("n")?;
    match report.identity.as_str() {
        RECURRENCE_PATHS => PathTables::build(ctx, big_n, r, n_max)?.sides(&cex.property, n),
        APPELL_BASICS => {
            let table = hb_higher_polys_series(big_n, r, n_max)?;
            match cex.property.as_str() {
                "derivative" => derivative_sides(&table, &Factorials::new(n_max), n, input("p")?),
                "monic" => monic_sides(&table, n),
                "weighted_integral" => weighted_sides(&table, n),
                "value_at_zero" => {
                    let reference = numbers_at_zero_reference(ctx, big_n, r, n_max)?;
                    Ok((table.get(n)?.coeff(0).into(), reference[n].clone().into()))
                }
                other => Err(Error::Replay(format!("unknown property {other}"))),
            }
        }
        other => Err(Error::Replay(format!("not a path identity: {other}"))),
    }
}
