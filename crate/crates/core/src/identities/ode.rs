//! Differential equations: the polynomial ODE in `x`, the ODE satisfied by
//! the generating series in `t`, and its logarithmic derivative.

use num_bigint::BigInt;

use super::context::Context;
use super::report::{params, CertMode, Counterexample, Params, Value, VerifyReport};
use crate::algebra::rational::{self, big, Factorials, Rational};
use crate::algebra::{PowerSeries, UniPoly};
use crate::error::{Error, Result};
use crate::hb::{generating_series, hb_higher_polys_series, HBNumberTable};

pub const ODE: &str = "ode";
pub const GENFUN_ODE: &str = "genfun_ode";
pub const LOGDERIV: &str = "logderiv";

fn q(v: i64) -> Rational {
    rational::int(v)
}

fn precondition(identity: &str, reason: &str) -> Error {
    Error::Precondition { identity: identity.to_string(), reason: reason.to_string() }
}

/// `sum_{k=2..n} B_{N,k}/k! y^(k) - (x/(rN) - 1/(N(N+1))) y' + n/(rN) y`.
pub fn ode_residual(numbers: &HBNumberTable, r: u32, n: usize, y: &UniPoly) -> Result<UniPoly> {
    numbers.require(n)?;
    let f = Factorials::new(n);
    let big_n = i64::from(numbers.big_n);
    let rn = q(i64::from(r) * big_n);
    let mut residual = y.scale(&(q(n as i64) / &rn));
    let drift = UniPoly::from_coeffs(vec![-q(big_n * (big_n + 1)).recip(), rn.recip()]);
    residual = &residual - &(&drift * &y.derivative());
    let mut d = y.derivative();
    for k in 2..=n {
        d = d.derivative();
        let c = &numbers.values[k] * f.reciprocal(k);
        residual = &residual + &d.scale(&c);
    }
    Ok(residual)
}

fn ode_sides(ctx: &Context, big_n: u32, r: u32, n: usize) -> Result<(Value, Value)> {
    let numbers = ctx.numbers(big_n, n)?;
    let y = &hb_higher_polys_series(big_n, r, n)?.polys[n];
    Ok((ode_residual(&numbers, r, n, y)?.into(), UniPoly::zero().into()))
}

/// Builds the ODE residual of `y = B^{(r)}_{N,n}(x)` exactly; passes iff it vanishes.
pub fn check_ode(ctx: &Context, big_n: u32, r: u32, n: usize) -> Result<VerifyReport> {
    if n == 0 {
        return Err(precondition(ODE, "requires n >= 1"));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let ps = params([("N", big_n.into()), ("r", r.into()), ("n", n.into())]);
    let mut report = VerifyReport::new(ODE, ps, CertMode::Exact);
    let (lhs, rhs) = ode_sides(ctx, big_n, r, n)?;
    report.cells_checked = 1;
    if lhs != rhs {
        report.fail(Counterexample { property: "residual".into(), inputs: Params::new(), lhs, rhs });
    }
    Ok(report)
}

/// Both sides of `t F_N' = N F_N - t F_N - N F_N^2`, through `t^order`.
pub fn genfun_ode_sides(big_n: u32, order: usize) -> Result<(PowerSeries, PowerSeries)> {
    let f = generating_series(big_n, order)?;
    let nn = q(i64::from(big_n));
    let lhs = f.derivative().shift_up(1);
    let rhs = f.scale(&nn).sub(&f.shift_up(1)).sub(&f.pow(2).scale(&nn));
    Ok((lhs.truncate(order), rhs.truncate(order)))
}

fn compare_series(report: &mut VerifyReport, lhs: &PowerSeries, rhs: &PowerSeries) {
    for k in 0..=lhs.order().min(rhs.order()) {
        report.cells_checked += 1;
        if lhs.coeff(k) != rhs.coeff(k) {
            report.fail(Counterexample {
                property: "coefficient".into(),
                inputs: params([("k", k.into())]),
                lhs: lhs.coeff(k).clone().into(),
                rhs: rhs.coeff(k).clone().into(),
            });
        }
    }
}

/// Certifies the first-order ODE of the generating series coefficientwise.
pub fn check_genfun_ode(big_n: u32, order: usize) -> Result<VerifyReport> {
    if order < 2 {
        return Err(precondition(GENFUN_ODE, "requires order >= 2"));
    }
    let ps = params([("N", big_n.into()), ("order", order.into())]);
    let mut report = VerifyReport::new(GENFUN_ODE, ps, CertMode::Exact);
    let (lhs, rhs) = genfun_ode_sides(big_n, order)?;
    compare_series(&mut report, &lhs, &rhs);
    Ok(report)
}

/// `A'/A` for `A = F_N^r`, computed with the series engine through `t^order`.
pub fn log_derivative(big_n: u32, r: u32, order: usize) -> Result<PowerSeries> {
    let a = generating_series(big_n, order + 1)?.pow(r);
    Ok(a.derivative().mul(&a.truncate(order).invert()?))
}

/// `r(-1/(N+1) - N sum_{n>=1} B_{N,n+1}/(n+1) t^n/n!)` from stored numbers.
pub fn log_derivative_closed_form(numbers: &HBNumberTable, r: u32, order: usize) -> Result<PowerSeries> {
    numbers.require(order + 1)?;
    let f = Factorials::new(order);
    let big_n = i64::from(numbers.big_n);
    let rr = q(i64::from(r));
    let mut coeffs = vec![-(&rr / q(big_n + 1))];
    for n in 1..=order {
        let c = &numbers.values[n + 1] / big(BigInt::from(n + 1)) * f.reciprocal(n);
        coeffs.push(-(&rr * q(big_n) * c));
    }
    Ok(PowerSeries::new(coeffs, order))
}

/// Compares the logarithmic derivative of `F_N^r` with its closed form.
pub fn check_logderiv(ctx: &Context, big_n: u32, r: u32, order: usize) -> Result<VerifyReport> {
    if order < 1 {
        return Err(precondition(LOGDERIV, "requires order >= 1"));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let ps = params([("N", big_n.into()), ("r", r.into()), ("order", order.into())]);
    let mut report = VerifyReport::new(LOGDERIV, ps, CertMode::Exact);
    let direct = log_derivative(big_n, r, order)?;
    let closed = log_derivative_closed_form(&ctx.numbers(big_n, order + 1)?, r, order)?;
    compare_series(&mut report, &direct, &closed);
    Ok(report)
}

pub(crate) fn replay_sides(ctx: &Context, report: &VerifyReport, cex: &Counterexample) -> Result<(Value, Value)> {
    let get = |k: &str| report.param(k).ok_or_else(|| Error::Replay(format!("missing parameter {k}")));
    let big_n = get("N")? as u32;
    let coefficient = || -> Result<usize> {
        cex.inputs
            .get("k")
            .and_then(|v| v.as_int())
            .map(|k| k as usize)
            .ok_or_else(|| Error::Replay("missing input k".into()))
    };
    match report.identity.as_str() {
        ODE => ode_sides(ctx, big_n, get("r")? as u32, get("n")? as usize),
        GENFUN_ODE => {
            let (lhs, rhs) = genfun_ode_sides(big_n, get("order")? as usize)?;
            let k = coefficient()?;
            Ok((lhs.coeff(k).clone().into(), rhs.coeff(k).clone().into()))
        }
        LOGDERIV => {
            let (r, order) = (get("r")? as u32, get("order")? as usize);
            let direct = log_derivative(big_n, r, order)?;
            let closed = log_derivative_closed_form(&ctx.numbers(big_n, order + 1)?, r, order)?;
            let k = coefficient()?;
            Ok((direct.coeff(k).clone().into(), closed.coeff(k).clone().into()))
        }
        other => Err(Error::Replay(format!("not a differential identity: {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::hb::hb_numbers;

    #[test]
    fn classical_second_degree_residual_vanishes() {
        let nums = hb_numbers(1, 2).unwrap();
        let y = UniPoly::from_coeffs(vec![rat(1, 6).unwrap(), q(-1), q(1)]);
        assert!(ode_residual(&nums, 1, 2, &y).unwrap().is_zero());
    }

    #[test]
    fn degree_one_cancels() {
        for big_n in 1..=4u32 {
            for r in 1..=3u32 {
                assert!(check_ode(&Context::new(), big_n, r, 1).unwrap().passed());
            }
        }
    }

    #[test]
    fn ode_rejects_n_zero() {
        assert!(matches!(check_ode(&Context::new(), 1, 1, 0), Err(Error::Precondition { .. })));
    }

    #[test]
    fn genfun_ode_constant_term_and_passes() {
        let (lhs, rhs) = genfun_ode_sides(2, 4).unwrap();
        assert_eq!(lhs.coeff(0), &q(0));
        assert_eq!(rhs.coeff(0), &q(0));
        assert!(check_genfun_ode(1, 10).unwrap().passed());
        assert!(check_genfun_ode(3, 20).unwrap().passed());
        assert!(check_genfun_ode(3, 1).is_err());
    }

    #[test]
    fn logderiv_examples() {
        let d = log_derivative(1, 1, 4).unwrap();
        assert_eq!(d.coeff(0), &rat(-1, 2).unwrap());
        assert_eq!(d.coeff(1), &rat(-1, 12).unwrap());
        for big_n in 1..=3u32 {
            let base = log_derivative(big_n, 1, 8).unwrap();
            let tripled = log_derivative(big_n, 3, 8).unwrap();
            assert_eq!(tripled, base.scale(&q(3)));
            assert_eq!(tripled.coeff(0), &-(q(3) / q(i64::from(big_n) + 1)));
        }
        assert!(check_logderiv(&Context::new(), 2, 2, 10).unwrap().passed());
    }
}
