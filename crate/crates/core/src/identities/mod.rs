//! Certification of the identities, recurrences and differential equations
//! by exact comparison of independently computed quantities.
//!
//! Every decision is an exact rational equality. Failing reports carry a
//! counterexample that [`replay`] can re-evaluate.

pub mod context;
pub mod ode;
pub mod paths;
pub mod report;
pub mod suite;
pub mod sums;

pub use context::{Context, Fault};
pub use ode::{check_genfun_ode, check_logderiv, check_ode};
pub use paths::{check_appell_basics, check_recurrence_paths};
pub use report::{CertMode, Counterexample, ParamValue, Status, Value, VerifyReport};
pub use suite::{run_suite, ModeChoice, SuiteConfig, SuiteKind, Summary};
pub use sums::{check_kamano, check_sums_of_products, check_two_three_sums, probe_sums_of_products};

use crate::error::{Error, Result};

/// Re-evaluates the counterexample of a failing report under `ctx`.
///
/// Returns `true` when both sides come out exactly as recorded and still
/// differ, i.e. the failure reproduces.
pub fn replay(ctx: &Context, report: &VerifyReport) -> Result<bool> {
    let cex = report
        .counterexample
        .as_ref()
        .ok_or_else(|| Error::Replay("report has no counterexample".into()))?;
    let (lhs, rhs) = match report.identity.as_str() {
        sums::SUMS_OF_PRODUCTS | sums::KAMANO | sums::TWO_THREE_SUMS => sums::replay_sides(ctx, report, cex)?,
        ode::ODE | ode::GENFUN_ODE | ode::LOGDERIV => ode::replay_sides(ctx, report, cex)?,
        paths::RECURRENCE_PATHS | paths::APPELL_BASICS => paths::replay_sides(ctx, report, cex)?,
        other => return Err(Error::Replay(format!("unknown identity {other}"))),
    };
    Ok(lhs == cex.lhs && rhs == cex.rhs && lhs != rhs)
}
