use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::context::{Context, Fault};
use super::report::{params, CertMode, Status, VerifyReport};
use super::{ode, paths, sums};
use crate::error::{Error, Result};

/// One family of checks in the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    Kamano,
    Sums,
    TwoThree,
    Ode,
    Recurrence,
    GenfunOde,
    Logderiv,
    Appell,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 8] = [
        SuiteKind::Kamano,
        SuiteKind::Sums,
        SuiteKind::TwoThree,
        SuiteKind::Ode,
        SuiteKind::Recurrence,
        SuiteKind::GenfunOde,
        SuiteKind::Logderiv,
        SuiteKind::Appell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Kamano => "kamano",
            SuiteKind::Sums => "sums",
            SuiteKind::TwoThree => "two-three",
            SuiteKind::Ode => "ode",
            SuiteKind::Recurrence => "recurrence",
            SuiteKind::GenfunOde => "genfun-ode",
            SuiteKind::Logderiv => "logderiv",
            SuiteKind::Appell => "appell",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// How sums-of-products cells are certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeChoice {
    /// Grid while `(n+1)^r` is at most the grid limit, sampling beyond.
    Auto,
    Grid,
    Sample,
}

impl FromStr for ModeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ModeChoice::Auto),
            "grid" => Ok(ModeChoice::Grid),
            "sample" => Ok(ModeChoice::Sample),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub big_n: RangeInclusive<u32>,
    pub r: RangeInclusive<u32>,
    pub n: RangeInclusive<usize>,
    pub mode: ModeChoice,
    pub sample_count: usize,
    pub seed: u64,
    pub suites: Vec<SuiteKind>,
    /// Also evaluate sums-of-products cells with `n < r - 1`, as informational reports.
    pub probe_below_precondition: bool,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    /// `N <= 4`, `r <= 4`, `n <= 24`, every suite, seed 42.
    fn default() -> Self {
        Self {
            big_n: 1..=4,
            r: 1..=4,
            n: 0..=24,
            mode: ModeChoice::Auto,
            sample_count: sums::DEFAULT_SAMPLE_COUNT,
            seed: 42,
            suites: SuiteKind::ALL.to_vec(),
            probe_below_precondition: false,
            fault: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cell {
    kind: SuiteKind,
    big_n: u32,
    r: u32,
    n: usize,
}

fn cells(config: &SuiteConfig) -> Vec<Cell> {
    let mut kinds = config.suites.clone();
    kinds.sort();
    kinds.dedup();
    let n_max = *config.n.end();
    let mut out = Vec::new();
    for kind in kinds {
        for big_n in config.big_n.clone() {
            let mut push = |r: u32, n: usize| out.push(Cell { kind, big_n, r, n });
            match kind {
                SuiteKind::Kamano | SuiteKind::Sums | SuiteKind::Ode => {
                    for r in config.r.clone() {
                        for n in config.n.clone() {
                            push(r, n);
                        }
                    }
                }
                SuiteKind::TwoThree => config.n.clone().for_each(|n| push(0, n)),
                SuiteKind::GenfunOde => push(0, n_max),
                SuiteKind::Recurrence | SuiteKind::Logderiv | SuiteKind::Appell => {
                    config.r.clone().for_each(|r| push(r, n_max))
                }
            }
        }
    }
    out
}

fn run_cell(ctx: &Context, config: &SuiteConfig, cell: Cell) -> Result<VerifyReport> {
    let Cell { kind, big_n, r, n } = cell;
    let nr = params([("N", big_n.into()), ("r", r.into()), ("n", n.into())]);
    match kind {
        SuiteKind::Kamano => {
            if n + 1 < r as usize {
                return Ok(VerifyReport::skipped(sums::KAMANO, nr, "n < r - 1"));
            }
            sums::check_kamano(ctx, big_n, r, n)
        }
        SuiteKind::Sums => {
            let mode = match config.mode {
                ModeChoice::Auto => sums::auto_mode(r, n),
                ModeChoice::Grid => CertMode::Grid,
                ModeChoice::Sample => CertMode::Sample,
            };
            if n + 1 < r as usize {
                if config.probe_below_precondition {
                    return sums::probe_sums_of_products(ctx, big_n, r, n, mode, config.sample_count, config.seed);
                }
                return Ok(VerifyReport::skipped(sums::SUMS_OF_PRODUCTS, nr, "n < r - 1"));
            }
            sums::check_sums_of_products(ctx, big_n, r, n, mode, config.sample_count, config.seed)
        }
        SuiteKind::TwoThree => {
            if n == 0 {
                let ps = params([("N", big_n.into()), ("n", n.into())]);
                return Ok(VerifyReport::skipped(sums::TWO_THREE_SUMS, ps, "n < 1"));
            }
            sums::check_two_three_sums(ctx, big_n, n)
        }
        SuiteKind::Ode => {
            if n == 0 {
                return Ok(VerifyReport::skipped(ode::ODE, nr, "n < 1"));
            }
            ode::check_ode(ctx, big_n, r, n)
        }
        SuiteKind::Recurrence => paths::check_recurrence_paths(ctx, big_n, r, n),
        SuiteKind::GenfunOde => {
            if n < 2 {
                let ps = params([("N", big_n.into()), ("order", n.into())]);
                return Ok(VerifyReport::skipped(ode::GENFUN_ODE, ps, "order < 2"));
            }
            ode::check_genfun_ode(big_n, n)
        }
        SuiteKind::Logderiv => {
            if n < 1 {
                let ps = params([("N", big_n.into()), ("r", r.into()), ("order", n.into())]);
                return Ok(VerifyReport::skipped(ode::LOGDERIV, ps, "order < 1"));
            }
            ode::check_logderiv(ctx, big_n, r, n)
        }
        SuiteKind::Appell => paths::check_appell_basics(ctx, big_n, r, n),
    }
}

/// Runs every selected check over the configured ranges.
///
/// Reports come back in a fixed order (suite, then `N`, `r`, `n`) regardless
/// of how the cells were scheduled. An empty range yields no reports.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerifyReport>> {
    if config.big_n.is_empty() || config.r.is_empty() || config.n.is_empty() {
        return Ok(Vec::new());
    }
    if *config.big_n.start() == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if *config.r.start() == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    // One extra index covers the operator and log-derivative checks.
    let mut ctx = Context::new().prepared(config.big_n.clone(), config.n.end() + 1)?;
    if let Some(f) = &config.fault {
        ctx = ctx.with_fault(f.clone());
    }
    cells(config).into_par_iter().map(|cell| run_cell(&ctx, config, cell)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub informational: usize,
}

impl Summary {
    pub fn of(reports: &[VerifyReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            if r.informational {
                s.informational += 1;
                continue;
            }
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    /// True iff no gating report failed.
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}
