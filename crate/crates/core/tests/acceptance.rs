//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any of them fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hyperbern::algebra::rational::{int, rat, Factorials};
use hyperbern::algebra::{Rational, UniPoly};
use hyperbern::hb::{
    a_poly, hb_higher_polys_series, hb_numbers, hb_order_step, normalized_denominator, HBPolyTable,
};
use hyperbern::identities::sums::{multinomial_convolution, two_sum_closed_form};
use hyperbern::identities::{
    check_appell_basics, check_genfun_ode, check_kamano, check_logderiv, check_ode,
    check_recurrence_paths, check_sums_of_products, check_two_three_sums, replay, run_suite,
    CertMode, Context, Fault, Status, SuiteConfig, VerifyReport,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(v: i64) -> Rational {
    int(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require_pass(report: &VerifyReport) -> Result<(), String> {
    ensure(report.passed(), || format!("{} failed: {}", report.label(), serde_json::to_string(report).unwrap()))
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// B_0 = 1 and sum_{k=0..n} C(n+1,k) B_k = 0 for n >= 1.
fn classical_oracle(n_max: usize) -> Vec<Rational> {
    let f = Factorials::new(n_max + 1);
    let mut b = vec![q(1)];
    for n in 1..=n_max {
        let s: Rational = (0..n).map(|k| Rational::from(f.binomial(n + 1, k)) * &b[k]).sum();
        b.push(-s / Rational::from(f.binomial(n + 1, n)));
    }
    b
}

fn c01_classical_reduction() -> Outcome {
    let start = Instant::now();
    let table = ok(hb_numbers(1, 30))?;
    let oracle = classical_oracle(30);
    ensure(table.values == oracle, || "hb_numbers(1, 30) differs from the oracle".into())?;
    ensure(table.values[30] == ok(rat(8615841276005, 14322))?, || "B_30 mismatch".into())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("31 values, {t:?}"))
}

fn c02_first_number() -> Outcome {
    for big_n in 1..=10u32 {
        let b1 = ok(hb_numbers(big_n, 1))?.values[1].clone();
        let want = -q(i64::from(big_n) + 1).recip();
        ensure(b1 == want, || format!("N={big_n}: {b1} != {want}"))?;
    }
    Ok("N = 1..10".into())
}

fn c03_hypergeometric_coefficients() -> Outcome {
    for big_n in 1..=6usize {
        let d = ok(normalized_denominator(big_n as u32, 40))?;
        let f = Factorials::new(big_n + 40);
        for k in 0..=40 {
            let want = Rational::new(f.get(big_n).clone(), f.get(big_n + k).clone());
            ensure(d.coeff(k) == &want, || format!("N={big_n}, k={k}: {} != {want}", d.coeff(k)))?;
        }
    }
    Ok("N = 1..6, k = 0..40".into())
}

fn c04_apoly_golden() -> Outcome {
    let half = ok(rat(1, 2))?;
    let x_minus = |c: i64| UniPoly::linear(q(c));
    let mut checked = 0;
    for big_n in 1..=5i64 {
        let two = ok(a_poly(big_n as u32, 2))?;
        let three = ok(a_poly(big_n as u32, 3))?;
        for n in 0..=16i64 {
            let s2 = two.specialize(n as usize);
            ensure(s2.len() == 2, || "r=2 table must have two entries".into())?;
            ensure(s2[0] == UniPoly::constant(q(big_n - n)), || format!("r=2 i=0 N={big_n} n={n}"))?;
            ensure(s2[1] == -&x_minus(1), || format!("r=2 i=1 N={big_n} n={n}"))?;

            let s3 = three.specialize(n as usize);
            ensure(s3.len() == 3, || "r=3 table must have three entries".into())?;
            let a0 = UniPoly::constant(&half * q((2 * big_n - n) * (big_n - n)));
            let a1 = -&(&x_minus(1).scale(&(&half * q(2 * big_n - n)))
                + &x_minus(2).scale(&(&half * q(big_n - n + 1))));
            let a2 = (&x_minus(2) * &x_minus(1)).scale(&half);
            ensure(s3[0] == a0, || format!("r=3 i=0 N={big_n} n={n}: {}", s3[0]))?;
            ensure(s3[1] == a1, || format!("r=3 i=1 N={big_n} n={n}: {} != {a1}", s3[1]))?;
            ensure(s3[2] == a2, || format!("r=3 i=2 N={big_n} n={n}: {}", s3[2]))?;
            checked += 5;
        }
    }
    Ok(format!("{checked} entries, N = 1..5, n = 0..16"))
}

fn c05_kamano() -> Outcome {
    let start = Instant::now();
    let ctx = ok(Context::new().prepared(1..=4, 24))?;
    let mut cells = 0;
    for big_n in 1..=4 {
        for r in 1..=4u32 {
            for n in (r as usize - 1)..=24 {
                require_pass(&ok(check_kamano(&ctx, big_n, r, n))?)?;
                cells += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{cells} cells, {t:?}"))
}

fn c06_sums_of_products() -> Outcome {
    let ctx = ok(Context::new().prepared(1..=4, 16))?;
    let mut grid = 0;
    for big_n in 1..=3 {
        for r in 1..=3u32 {
            for n in (r as usize - 1)..=10 {
                let report = ok(check_sums_of_products(&ctx, big_n, r, n, CertMode::Grid, 64, 42))?;
                require_pass(&report)?;
                let points = (n as u64 + 1).pow(r);
                ensure(report.cells_checked == points, || format!("{}: covered {}", report.label(), report.cells_checked))?;
                grid += 1;
            }
        }
    }
    let mut sampled = 0;
    for big_n in 1..=4 {
        for n in 3..=16 {
            let report = ok(check_sums_of_products(&ctx, big_n, 4, n, CertMode::Sample, 64, 42))?;
            require_pass(&report)?;
            ensure(report.cells_checked == 64 && report.sample_points.len() == 64, || {
                format!("{}: {} sampled points", report.label(), report.cells_checked)
            })?;
            sampled += 1;
        }
    }
    Ok(format!("{grid} grid cells, {sampled} sampled cells"))
}

fn c07_two_three_sums() -> Outcome {
    let ctx = ok(Context::new().prepared(1..=4, 20))?;
    for big_n in 1..=4 {
        for n in 1..=20 {
            require_pass(&ok(check_two_three_sums(&ctx, big_n, n))?)?;
        }
    }
    // Euler: sum C(n,i) B_i B_{n-i} = -n B_{n-1} - (n-1) B_n.
    let b = classical_oracle(20);
    let polys = ok(hb_higher_polys_series(1, 1, 20))?.polys;
    let zero = q(0);
    for n in 1..=20usize {
        let f = Factorials::new(n);
        let euler_lhs: Rational = (0..=n).map(|i| Rational::from(f.binomial(n, i)) * &b[i] * &b[n - i]).sum();
        let euler_rhs = -(q(n as i64) * &b[n - 1]) - q(n as i64 - 1) * &b[n];
        let conv = multinomial_convolution(&polys, &[zero.clone(), zero.clone()], n);
        let closed = two_sum_closed_form(1, &polys, n).eval(&zero);
        ensure(euler_lhs == euler_rhs, || format!("Euler identity fails at n={n}"))?;
        ensure(conv == euler_lhs && closed == euler_rhs, || format!("n={n}: {conv} / {closed} vs {euler_lhs}"))?;
        if n == 2 {
            let five_sixths = ok(rat(5, 6))?;
            ensure(conv == five_sixths && closed == five_sixths, || format!("n=2 gives {conv} and {closed}"))?;
        }
    }
    Ok("N = 1..4, n = 1..20; Euler n = 1..20 with 5/6 at n = 2".into())
}

fn c08_ode() -> Outcome {
    let ctx = ok(Context::new().prepared(1..=4, 15))?;
    let mut cells = 0;
    for big_n in 1..=4 {
        for r in 1..=3 {
            for n in 1..=15 {
                require_pass(&ok(check_ode(&ctx, big_n, r, n))?)?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} residuals vanish"))
}

fn c09_recurrence_paths() -> Outcome {
    let ctx = ok(Context::new().prepared(1..=4, 31))?;
    for big_n in 1..=4u32 {
        for r in 1..=4u32 {
            require_pass(&ok(check_recurrence_paths(&ctx, big_n, r, 30))?)?;
            // Iterated order steps, independently of the report.
            let mut table: HBPolyTable = ok(hb_higher_polys_series(big_n, 1, 30))?;
            for _ in 1..r {
                let polys = (0..=30).map(|n| hb_order_step(&table, n)).collect::<Result<Vec<_>, _>>();
                table = HBPolyTable { big_n, r: table.r + 1, polys: ok(polys)? };
            }
            let series = ok(hb_higher_polys_series(big_n, r, 30))?;
            ensure(table.polys == series.polys, || format!("order steps differ at N={big_n}, r={r}"))?;
        }
    }
    Ok("N = 1..4, r = 1..4, n = 0..30".into())
}

fn c10_genfun_ode() -> Outcome {
    for big_n in 1..=5 {
        require_pass(&ok(check_genfun_ode(big_n, 30))?)?;
    }
    Ok("N = 1..5, order 30".into())
}

fn c11_logderiv() -> Outcome {
    let ctx = ok(Context::new().prepared(1..=4, 31))?;
    for big_n in 1..=4 {
        for r in 1..=3 {
            require_pass(&ok(check_logderiv(&ctx, big_n, r, 30))?)?;
        }
    }
    Ok("N = 1..4, r = 1..3, order 30".into())
}

fn c12_appell_basics() -> Outcome {
    let ctx = ok(Context::new().prepared(1..=5, 20))?;
    for big_n in 1..=5 {
        for r in 1..=3 {
            let report = ok(check_appell_basics(&ctx, big_n, r, 20))?;
            require_pass(&report)?;
        }
    }
    Ok("N = 1..5, n = 0..20 (weighted integral at r = 1, derivative and monicity at r = 1..3)".into())
}

fn c13_mutation() -> Outcome {
    let mut mutations = 0;
    for big_n in 1..=4u32 {
        for index in 2..=25usize {
            let fault = Fault { big_n, index, delta: q(1) };
            let config = SuiteConfig {
                big_n: big_n..=big_n,
                r: 1..=2,
                n: 0..=index,
                fault: Some(fault.clone()),
                ..SuiteConfig::default()
            };
            let reports = ok(run_suite(&config))?;
            let failing: Vec<&VerifyReport> = reports.iter().filter(|r| r.status == Status::Fail).collect();
            ensure(!failing.is_empty(), || format!("B_{{{big_n},{index}}} + 1 went unnoticed"))?;
            let ctx = Context::new().with_fault(fault);
            for report in failing {
                let reproduced = ok(replay(&ctx, report))?;
                ensure(reproduced, || format!("{} did not replay", report.label()))?;
                let clean = ok(replay(&Context::new(), report))?;
                ensure(!clean, || format!("{} also fails without the fault", report.label()))?;
            }
            mutations += 1;
        }
    }
    Ok(format!("{mutations} single-entry mutations detected and replayed"))
}

fn c14_default_verify() -> Outcome {
    let start = Instant::now();
    let out = ok(Command::new(env!("CARGO_BIN_EXE_hyperbern")).args(["verify", "--no-meta"]).output())?;
    let t = start.elapsed();
    let code = out.status.code();
    ensure(code == Some(0), || format!("exit status {code:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("exit 0 in {t:?}; {}", String::from_utf8_lossy(&out.stderr).trim()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("classical reduction", c01_classical_reduction),
        ("B_{N,1} = -1/(N+1)", c02_first_number),
        ("1F1 coefficients", c03_hypergeometric_coefficients),
        ("A-table golden values", c04_apoly_golden),
        ("Kamano expansion", c05_kamano),
        ("sums of products, grid and sample", c06_sums_of_products),
        ("two- and three-fold sums, Euler", c07_two_three_sums),
        ("polynomial ODE", c08_ode),
        ("recurrence paths and order steps", c09_recurrence_paths),
        ("generating-function ODE", c10_genfun_ode),
        ("logarithmic derivative", c11_logderiv),
        ("Appell basics", c12_appell_basics),
        ("mutation sensitivity", c13_mutation),
        ("default verify run", c14_default_verify),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
