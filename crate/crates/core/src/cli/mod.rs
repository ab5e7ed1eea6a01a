//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when verification finds a failing cell,
//! 2 on any usage or configuration error.

pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::hb::{a_poly, hb_higher_polys_series, hb_numbers};
use crate::identities::{run_suite, Fault, ModeChoice, SuiteConfig, SuiteKind, Summary};
use output::{param, Meta, OutputRecord, Payload};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hyperbern", version, about = "Exact hypergeometric Bernoulli numbers, polynomials and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output encoding.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Omit the generator/timestamp header.
    #[arg(long, global = true)]
    pub no_meta: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hypergeometric Bernoulli numbers B_{N,n}.
    Numbers {
        #[arg(long = "N", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        big_n: u32,
        #[arg(long = "max-n")]
        max_n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Higher-order polynomials B^{(r)}_{N,n}(x), ascending coefficients.
    Polys {
        #[arg(long = "N", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        big_n: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long = "max-n")]
        max_n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficient polynomials A_r^{(N)}(i, x; s).
    Apoly {
        #[arg(long = "N", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        big_n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Substitute this rational value for s.
        #[arg(long = "subst-s", value_parser = parse_rational_arg, allow_hyphen_values = true)]
        subst_s: Option<Rational>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the certification suite; exits 1 if any gating cell fails.
    Verify {
        #[arg(long = "N-max", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        big_n_max: u32,
        #[arg(long = "r-max", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        r_max: u32,
        #[arg(long = "n-max", default_value_t = 24)]
        n_max: usize,
        #[arg(long, default_value = "auto", value_parser = parse_mode)]
        mode: ModeChoice,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of sampled points per sample-mode cell.
        #[arg(long = "sample-count", default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        sample_count: u64,
        /// Suites to run (comma separated), or "all".
        #[arg(long, default_value = "all", value_delimiter = ',', value_parser = parse_suite)]
        suite: Vec<SuiteSelection>,
        /// Also evaluate sums-of-products cells below n = r - 1 (informational only).
        #[arg(long = "probe-below")]
        probe_below: bool,
        /// Add 1 to the stored B_{N,k}, written "N:k" (mutation testing).
        #[arg(long, value_parser = parse_fault)]
        perturb: Option<Fault>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    One(SuiteKind),
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<ModeChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<SuiteSelection, String> {
    if s == "all" {
        return Ok(SuiteSelection::All);
    }
    s.parse().map(SuiteSelection::One).map_err(|e: Error| e.to_string())
}

fn parse_fault(s: &str) -> std::result::Result<Fault, String> {
    let (n, k) = s.split_once(':').ok_or("expected N:k")?;
    let big_n = n.parse::<u32>().map_err(|e| e.to_string())?;
    let index = k.parse::<usize>().map_err(|e| e.to_string())?;
    Ok(Fault { big_n, index, delta: rational::int(1) })
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Numbers { common, .. }
            | Command::Polys { common, .. }
            | Command::Apoly { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

/// Computes the record for a parsed command, plus the exit code it implies.
pub fn execute(command: &Command) -> Result<(OutputRecord, i32)> {
    let meta = (!command.common().no_meta).then(Meta::now);
    let (params, payload, code) = match command {
        Command::Numbers { big_n, max_n, .. } => {
            let table = hb_numbers(*big_n, *max_n)?;
            let rows = table.values.into_iter().enumerate().collect();
            let ps = [param("N", *big_n), param("max_n", *max_n)];
            (ps.into_iter().collect(), Payload::Numbers(rows), EXIT_OK)
        }
        Command::Polys { big_n, r, max_n, .. } => {
            let table = hb_higher_polys_series(*big_n, *r, *max_n)?;
            let rows = table.polys.into_iter().enumerate().collect();
            let ps = [param("N", *big_n), param("r", *r), param("max_n", *max_n)];
            (ps.into_iter().collect(), Payload::Polys(rows), EXIT_OK)
        }
        Command::Apoly { big_n, r, subst_s, .. } => {
            let table = a_poly(*big_n, *r)?;
            let mut ps: crate::identities::report::Params =
                [param("N", *big_n), param("r", *r)].into_iter().collect();
            let payload = match subst_s {
                Some(s) => {
                    ps.insert("subst_s".into(), s.clone().into());
                    Payload::APolySubst(table.entries.iter().map(|a| a.subst_s(s)).enumerate().collect())
                }
                None => Payload::APoly(table.entries.into_iter().enumerate().collect()),
            };
            (ps, payload, EXIT_OK)
        }
        Command::Verify {
            big_n_max, r_max, n_max, mode, seed, sample_count, suite, probe_below, perturb, ..
        } => {
            let suites = if suite.contains(&SuiteSelection::All) {
                SuiteKind::ALL.to_vec()
            } else {
                suite
                    .iter()
                    .filter_map(|s| match s {
                        SuiteSelection::One(k) => Some(*k),
                        SuiteSelection::All => None,
                    })
                    .collect()
            };
            let config = SuiteConfig {
                big_n: 1..=*big_n_max,
                r: 1..=*r_max,
                n: 0..=*n_max,
                mode: *mode,
                sample_count: *sample_count as usize,
                seed: *seed,
                suites,
                probe_below_precondition: *probe_below,
                fault: perturb.clone(),
            };
            let reports = run_suite(&config)?;
            let summary = Summary::of(&reports);
            let code = if summary.ok() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let ps = [
                param("N_max", *big_n_max),
                param("r_max", *r_max),
                param("n_max", *n_max),
                param("seed", *seed as i64),
                param("sample_count", *sample_count as i64),
            ];
            (ps.into_iter().collect(), Payload::Verify(reports), code)
        }
    };
    Ok((OutputRecord { params, meta, payload }, code))
}

/// Renders the record in the requested format.
pub fn render(record: &OutputRecord, format: Format) -> Result<String> {
    match format {
        Format::Csv => record.to_csv(),
        Format::Json => record.to_json(),
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return EXIT_USAGE;
            }
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    let common = cli.command.common();
    let (record, code) = match execute(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match render(&record, common.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &common.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if let Payload::Verify(reports) = &record.payload {
        let s = Summary::of(reports);
        let _ = writeln!(
            stderr,
            "verify: {} passed, {} failed, {} skipped, {} informational",
            s.passed, s.failed, s.skipped, s.informational
        );
    }
    code
}
