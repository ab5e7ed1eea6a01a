//! Sums-of-products identities: the general `r`-fold expansion with
//! polynomial arguments, its `x = 0` specialization, and the explicit two-
//! and three-fold closed forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::context::Context;
use super::report::{params, CertMode, Counterexample, ParamValue, Params, Value, VerifyReport};
use crate::algebra::rational::{self, big, Factorials, Rational};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::hb::{a_poly, a_poly_at_zero, appell_table, hb_higher_polys_series, APolyTable};

pub const SUMS_OF_PRODUCTS: &str = "sums_of_products";
pub const KAMANO: &str = "kamano";
pub const TWO_THREE_SUMS: &str = "two_three_sums";

/// Grid certification is used while `(n+1)^r` stays within this many points.
pub const GRID_POINT_LIMIT: u64 = 20_000;
pub const DEFAULT_SAMPLE_COUNT: usize = 64;
/// Sampled numerators lie in `[-B, B]`, denominators in `[1, B]`.
pub const SAMPLE_BOUND: i64 = 100;

/// Grid when `(n+1)^r <= GRID_POINT_LIMIT`, sampling otherwise.
pub fn auto_mode(r: u32, n: usize) -> CertMode {
    let mut points: u64 = 1;
    for _ in 0..r {
        points = points.saturating_mul(n as u64 + 1);
    }
    if points <= GRID_POINT_LIMIT {
        CertMode::Grid
    } else {
        CertMode::Sample
    }
}

fn q(v: i64) -> Rational {
    rational::int(v)
}

/// The rows `p_i(x)/i!`, `i = 0..=n`, with denominators cleared once.
///
/// For `x = a/b` the scaled row `L b^n p_i(x)/i!` is an integer, where `L`
/// is the lcm of all coefficient denominators.
struct ScaledRows {
    coeffs: Vec<Vec<BigInt>>,
    den: BigInt,
    n: usize,
}

impl ScaledRows {
    fn new(polys: &[UniPoly], n: usize) -> Self {
        let f = Factorials::new(n);
        let rows: Vec<Vec<Rational>> = (0..=n)
            .map(|i| polys[i].scale(&f.reciprocal(i)).into_coeffs())
            .collect();
        let den = rows.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = rows
            .iter()
            .map(|row| row.iter().map(|c| c.numer() * (&den / c.denom())).collect())
            .collect();
        Self { coeffs, den, n }
    }

    /// Scaled row at `x`, and the factor `L b^n` it was multiplied by.
    fn row(&self, x: &Rational) -> (Vec<BigInt>, BigInt) {
        let (a, b) = (x.numer(), x.denom());
        let mut a_pow = vec![BigInt::one(); self.n + 1];
        let mut b_pow = vec![BigInt::one(); self.n + 1];
        for k in 1..=self.n {
            a_pow[k] = &a_pow[k - 1] * a;
            b_pow[k] = &b_pow[k - 1] * b;
        }
        let weights: Vec<BigInt> = (0..=self.n).map(|k| &a_pow[k] * &b_pow[self.n - k]).collect();
        let row = self
            .coeffs
            .iter()
            .map(|c| c.iter().zip(&weights).filter(|(c, _)| !c.is_zero()).map(|(c, w)| c * w).sum())
            .collect();
        (row, &self.den * &b_pow[self.n])
    }

    /// The multinomial sum at `xs`.
    fn convolve(&self, xs: &[Rational]) -> Rational {
        let n = self.n;
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        acc[0] = BigInt::one();
        let mut den = BigInt::one();
        for x in xs {
            let (row, scale) = self.row(x);
            acc = convolve_step(&acc, &row, n);
            den *= scale;
        }
        Rational::new(&acc[n] * Factorials::new(n).get(n), den)
    }
}

/// Truncated product of two coefficient lists through index `n`.
fn convolve_step(acc: &[BigInt], row: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut next = vec![BigInt::zero(); n + 1];
    for (m, slot) in next.iter_mut().enumerate() {
        for j in 0..=m {
            if !acc[j].is_zero() && !row[m - j].is_zero() {
                *slot += &acc[j] * &row[m - j];
            }
        }
    }
    next
}

/// `n! [t^n] prod_j sum_i p_i(x_j) t^i / i!`, i.e. the multinomial sum
/// `sum_{i_1+..+i_r=n} n!/(i_1!..i_r!) p_{i_1}(x_1)..p_{i_r}(x_r)`,
/// accumulated one factor at a time on integers.
pub fn multinomial_convolution(polys: &[UniPoly], xs: &[Rational], n: usize) -> Rational {
    ScaledRows::new(polys, n).convolve(xs)
}

/// `(1/N^{r-1}) sum_{i<r} A(i, x; 1+N(r-1)-n) (-1)^i C(n,i) i! p_{n-i}(x)`.
///
/// Requires `n >= r - 1` so that every `p_{n-i}` exists.
pub fn expansion_rhs(apoly: &APolyTable, polys: &[UniPoly], n: usize) -> UniPoly {
    let f = Factorials::new(n);
    let specialized = apoly.specialize(n);
    let mut acc = UniPoly::zero();
    for (i, a) in specialized.iter().enumerate() {
        if i > n {
            break;
        }
        let mut c = big(f.binomial(n, i)) * f.rational(i);
        if i % 2 == 1 {
            c = -c;
        }
        acc = &acc + &(a * &polys[n - i]).scale(&c);
    }
    let norm = big(BigInt::from(apoly.big_n).pow(apoly.r - 1));
    acc.scale(&norm.recip())
}

/// Closed form of the two-fold sum as a polynomial in `x = x_1 + x_2`.
pub fn two_sum_closed_form(big_n: u32, polys: &[UniPoly], n: usize) -> UniPoly {
    let nn = q(i64::from(big_n));
    let nq = q(n as i64);
    let first = polys[n].scale(&((&nn - &nq) / &nn));
    let second = (&UniPoly::linear(q(1)) * &polys[n - 1]).scale(&(&nq / &nn));
    &first + &second
}

/// Closed form of the three-fold sum as a polynomial in `x = x_1 + x_2 + x_3`.
pub fn three_sum_closed_form(big_n: u32, polys: &[UniPoly], n: usize) -> UniPoly {
    let bn = i64::from(big_n);
    let ni = n as i64;
    let x1 = UniPoly::linear(q(1));
    let x2 = UniPoly::linear(q(2));
    let t0 = polys[n].scale(&q((bn - ni) * (2 * bn - ni)));
    let mid = &x1.scale(&q(2 * bn - ni)) + &x2.scale(&q(bn - ni + 1));
    let t1 = (&mid * &polys[n - 1]).scale(&q(ni));
    let t2 = (&(&x1 * &x2) * &polys[n - 2]).scale(&q(ni * (ni - 1)));
    (&(&t0 + &t1) + &t2).scale(&q(2 * bn * bn).recip())
}

/// Result of scanning `{0..n}^r` in lexicographic order.
struct GridScan {
    checked: u64,
    mismatch: Option<Vec<usize>>,
}

/// Evaluates the multinomial sum on every point of `{0..n}^r` and compares
/// it with `expected[x_1 + .. + x_r]`.
///
/// Both sides are symmetric in the coordinates, so only non-decreasing
/// points are evaluated; each one accounts for all of its permutations in
/// `checked`.
///
/// The rows are scaled to integers by [`ScaledRows`], so the inner loops
/// never reduce fractions: the sum at a point equals
/// `n! * total / L^r`, and each expected value is converted to the integer
/// `expected * L^r / n!` once (a non-integer target can never match).
fn grid_scan(polys: &[UniPoly], r: usize, n: usize, expected: &[Rational]) -> GridScan {
    let scaled = ScaledRows::new(polys, n);
    let int_rows: Vec<Vec<BigInt>> = (0..=n).map(|x| scaled.row(&q(x as i64)).0).collect();
    let scale = big(scaled.den.pow(r as u32)) / Factorials::new(n).rational(n);
    let targets: Vec<Option<BigInt>> = expected
        .iter()
        .map(|e| {
            let t = e * &scale;
            t.is_integer().then(|| t.to_integer())
        })
        .collect();

    let branches: Vec<GridScan> = (0..=n)
        .into_par_iter()
        .map(|x1| {
            let mut point = vec![x1];
            let mut scan = GridScan { checked: 0, mismatch: None };
            descend(&int_rows, &targets, r, n, int_rows[x1].clone(), &mut point, &mut scan);
            scan
        })
        .collect();
    let checked = branches.iter().map(|b| b.checked).sum();
    let mismatch = branches.into_iter().find_map(|b| b.mismatch);
    GridScan { checked, mismatch }
}

fn descend(
    rows: &[Vec<BigInt>],
    targets: &[Option<BigInt>],
    r: usize,
    n: usize,
    acc: Vec<BigInt>,
    point: &mut Vec<usize>,
    scan: &mut GridScan,
) {
    if scan.mismatch.is_some() {
        return;
    }
    if point.len() == r {
        scan.checked += permutations(point);
        let sum: usize = point.iter().sum();
        if targets[sum].as_ref() != Some(&acc[n]) {
            scan.mismatch = Some(point.clone());
        }
        return;
    }
    let last = point.len() + 1 == r;
    let start = point.last().copied().unwrap_or(0);
    for (x, row) in rows.iter().enumerate().skip(start) {
        point.push(x);
        if last {
            // Only the coefficient of t^n is needed at the final factor.
            let mut total = BigInt::zero();
            for j in 0..=n {
                if !acc[j].is_zero() && !row[n - j].is_zero() {
                    total += &acc[j] * &row[n - j];
                }
            }
            scan.checked += permutations(point);
            let sum: usize = point.iter().sum();
            if targets[sum].as_ref() != Some(&total) {
                scan.mismatch = Some(point.clone());
            }
        } else {
            descend(rows, targets, r, n, convolve_step(&acc, row, n), point, scan);
        }
        point.pop();
        if scan.mismatch.is_some() {
            return;
        }
    }
}

/// Number of distinct orderings of a sorted point.
fn permutations(point: &[usize]) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    let runs = point.chunk_by(|a, b| a == b).map(|run| fact(run.len())).product::<u64>();
    fact(point.len()) / runs
}

fn mix(mut z: u64) -> u64 {
    // splitmix64 finalizer
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic rational points for one cell.
pub fn sample_points(seed: u64, cell: &[u64], count: usize, dim: usize) -> Vec<Vec<Rational>> {
    let stream = cell.iter().fold(mix(seed), |acc, &c| mix(acc ^ c));
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    (0..count)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let num = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
                    let den = rng.gen_range(1..=SAMPLE_BOUND);
                    Rational::new(BigInt::from(num), BigInt::from(den))
                })
                .collect()
        })
        .collect()
}

fn point_inputs(xs: &[Rational]) -> Params {
    xs.iter()
        .enumerate()
        .map(|(i, x)| (format!("x{}", i + 1), ParamValue::from(x.clone())))
        .collect()
}

fn inputs_to_point(inputs: &Params, dim: usize) -> Result<Vec<Rational>> {
    (1..=dim)
        .map(|i| {
            inputs
                .get(&format!("x{i}"))
                .map(ParamValue::to_rational)
                .ok_or_else(|| Error::Replay(format!("missing input x{i}")))
        })
        .collect()
}

fn precondition(identity: &str, reason: String) -> Error {
    Error::Precondition { identity: identity.to_string(), reason }
}

/// Everything the sums-of-products check compares, built once per cell.
struct SumsCell {
    polys: Vec<UniPoly>,
    rows: ScaledRows,
    rhs: UniPoly,
    lemma: UniPoly,
}

impl SumsCell {
    fn build(ctx: &Context, big_n: u32, r: u32, n: usize) -> Result<Self> {
        let numbers = ctx.numbers(big_n, n)?;
        let polys = appell_table(&numbers).polys;
        let rhs = expansion_rhs(&a_poly(big_n, r)?, &polys, n);
        let lemma = hb_higher_polys_series(big_n, r, n)?.polys[n].clone();
        let rows = ScaledRows::new(&polys, n);
        Ok(Self { polys, rows, rhs, lemma })
    }

    fn direct(&self, xs: &[Rational]) -> (Value, Value) {
        let sum: Rational = xs.iter().sum();
        (self.rows.convolve(xs).into(), self.rhs.eval(&sum).into())
    }

    fn lemma_at(&self, x: &Rational) -> (Value, Value) {
        (self.lemma.eval(x).into(), self.rhs.eval(x).into())
    }
}

/// Certifies the `r`-fold sums-of-products expansion at `(N, r, n)`.
///
/// The left side is evaluated both as the multinomial convolution of
/// `B_{N,i}(x_j)` and as `B^{(r)}_{N,n}(x_1 + .. + x_r)` from the series
/// path; each is compared with the `A`-table right side.
pub fn check_sums_of_products(
    ctx: &Context,
    big_n: u32,
    r: u32,
    n: usize,
    mode: CertMode,
    sample_count: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if r == 0 || n + 1 < r as usize {
        return Err(precondition(SUMS_OF_PRODUCTS, format!("requires n >= r - 1, got n={n}, r={r}")));
    }
    sums_of_products_unchecked(ctx, big_n, r, n, mode, sample_count, seed)
}

/// Same comparison outside the claimed range; the report is marked informational.
pub fn probe_sums_of_products(
    ctx: &Context,
    big_n: u32,
    r: u32,
    n: usize,
    mode: CertMode,
    sample_count: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let mut report = sums_of_products_unchecked(ctx, big_n, r, n, mode, sample_count, seed)?;
    report.informational = true;
    Ok(report)
}

fn sums_of_products_unchecked(
    ctx: &Context,
    big_n: u32,
    r: u32,
    n: usize,
    mode: CertMode,
    sample_count: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let cell = SumsCell::build(ctx, big_n, r, n)?;
    let dim = r as usize;
    let ps = params([("N", big_n.into()), ("r", r.into()), ("n", n.into())]);
    let mut report = VerifyReport::new(SUMS_OF_PRODUCTS, ps, mode);

    match mode {
        CertMode::Grid | CertMode::Exact => {
            report.mode = CertMode::Grid;
            let sums: Vec<Rational> = (0..=dim * n).map(|s| q(s as i64)).collect();
            for x in &sums {
                let (lhs, rhs) = cell.lemma_at(x);
                if lhs != rhs {
                    let inputs = params([("x", x.clone().into())]);
                    report.fail(Counterexample { property: "lemma_vs_rhs".into(), inputs, lhs, rhs });
                    break;
                }
            }
            let expected: Vec<Rational> = sums.iter().map(|x| cell.rhs.eval(x)).collect();
            let scan = grid_scan(&cell.polys, dim, n, &expected);
            report.cells_checked = scan.checked;
            if let Some(point) = scan.mismatch {
                let xs: Vec<Rational> = point.iter().map(|&v| q(v as i64)).collect();
                let (lhs, rhs) = cell.direct(&xs);
                report.fail(Counterexample {
                    property: "direct_vs_rhs".into(),
                    inputs: point_inputs(&xs),
                    lhs,
                    rhs,
                });
            }
        }
        CertMode::Sample => {
            let points = sample_points(seed, &[u64::from(big_n), u64::from(r), n as u64], sample_count, dim);
            report.seed = Some(seed);
            report.sample_points = points
                .iter()
                .map(|p| p.iter().map(rational::to_string).collect())
                .collect();
            let evaluated: Vec<_> = points
                .par_iter()
                .map(|xs| {
                    let sum: Rational = xs.iter().sum();
                    (cell.direct(xs), cell.lemma_at(&sum), sum)
                })
                .collect();
            for (xs, ((dl, dr), (ll, lr), sum)) in points.iter().zip(evaluated) {
                report.cells_checked += 1;
                if dl != dr {
                    report.fail(Counterexample {
                        property: "direct_vs_rhs".into(),
                        inputs: point_inputs(xs),
                        lhs: dl,
                        rhs: dr,
                    });
                }
                if ll != lr {
                    let inputs = params([("x", sum.into())]);
                    report.fail(Counterexample { property: "lemma_vs_rhs".into(), inputs, lhs: ll, rhs: lr });
                }
            }
        }
    }
    Ok(report)
}

/// Certifies the numbers-only expansion at `(N, r, n)` with Kamano's table.
pub fn check_kamano(ctx: &Context, big_n: u32, r: u32, n: usize) -> Result<VerifyReport> {
    if r == 0 || n + 1 < r as usize {
        return Err(precondition(KAMANO, format!("requires n >= r - 1, got n={n}, r={r}")));
    }
    let ps = params([("N", big_n.into()), ("r", r.into()), ("n", n.into())]);
    let mut report = VerifyReport::new(KAMANO, ps, CertMode::Exact);
    let (lhs, rhs) = kamano_sides(ctx, big_n, r, n)?;
    report.cells_checked = 1;
    if lhs != rhs {
        report.fail(Counterexample { property: "convolution_vs_rhs".into(), inputs: Params::new(), lhs, rhs });
    }
    Ok(report)
}

fn kamano_sides(ctx: &Context, big_n: u32, r: u32, n: usize) -> Result<(Value, Value)> {
    let numbers = ctx.numbers(big_n, n)?;
    let constants: Vec<UniPoly> = numbers.values.iter().cloned().map(UniPoly::constant).collect();
    let zeros = vec![Rational::zero(); r as usize];
    let lhs = multinomial_convolution(&constants, &zeros, n);
    let rhs = expansion_rhs(&a_poly_at_zero(big_n, r)?, &constants, n).eval(&Rational::zero());
    Ok((lhs.into(), rhs.into()))
}

/// Certifies the explicit two-fold (`n >= 1`) and, when `n >= 2`, three-fold
/// closed forms by grid evaluation, and checks that each agrees with the
/// general `A`-table expansion at `r = 2, 3`.
pub fn check_two_three_sums(ctx: &Context, big_n: u32, n: usize) -> Result<VerifyReport> {
    if n == 0 {
        return Err(precondition(TWO_THREE_SUMS, "requires n >= 1".into()));
    }
    let numbers = ctx.numbers(big_n, n)?;
    let polys = appell_table(&numbers).polys;
    let three = n >= 2;
    let ps = params([
        ("N", big_n.into()),
        ("n", n.into()),
        ("three_fold", i64::from(three).into()),
    ]);
    let mut report = VerifyReport::new(TWO_THREE_SUMS, ps, CertMode::Grid);

    let mut forms = vec![(2usize, two_sum_closed_form(big_n, &polys, n))];
    if three {
        forms.push((3, three_sum_closed_form(big_n, &polys, n)));
    }
    for (arity, closed) in &forms {
        let table = expansion_rhs(&a_poly(big_n, *arity as u32)?, &polys, n);
        if &table != closed {
            report.fail(Counterexample {
                property: format!("{}_vs_apoly", fold_name(*arity)),
                inputs: Params::new(),
                lhs: closed.clone().into(),
                rhs: table.into(),
            });
        }
        let expected: Vec<Rational> = (0..=arity * n).map(|s| closed.eval(&q(s as i64))).collect();
        let scan = grid_scan(&polys, *arity, n, &expected);
        report.cells_checked += scan.checked;
        if let Some(point) = scan.mismatch {
            let xs: Vec<Rational> = point.iter().map(|&v| q(v as i64)).collect();
            let sum: Rational = xs.iter().sum();
            report.fail(Counterexample {
                property: format!("{}_grid", fold_name(*arity)),
                inputs: point_inputs(&xs),
                lhs: multinomial_convolution(&polys, &xs, n).into(),
                rhs: closed.eval(&sum).into(),
            });
        }
    }
    Ok(report)
}

fn fold_name(arity: usize) -> &'static str {
    if arity == 2 {
        "two_sum"
    } else {
        "three_sum"
    }
}

/// Recomputes both sides of a recorded counterexample.
pub(crate) fn replay_sides(ctx: &Context, report: &VerifyReport, cex: &Counterexample) -> Result<(Value, Value)> {
    let get = |k: &str| {
        report.param(k).ok_or_else(|| Error::Replay(format!("missing parameter {k}")))
    };
    let big_n = get("N")? as u32;
    let n = get("n")? as usize;
    match (report.identity.as_str(), cex.property.as_str()) {
        (SUMS_OF_PRODUCTS, prop) => {
            let r = get("r")? as u32;
            let cell = SumsCell::build(ctx, big_n, r, n)?;
            match prop {
                "direct_vs_rhs" => Ok(cell.direct(&inputs_to_point(&cex.inputs, r as usize)?)),
                "lemma_vs_rhs" => {
                    let x = cex.inputs.get("x").ok_or_else(|| Error::Replay("missing input x".into()))?;
                    Ok(cell.lemma_at(&x.to_rational()))
                }
                other => Err(Error::Replay(format!("unknown property {other}"))),
            }
        }
        (KAMANO, _) => kamano_sides(ctx, big_n, get("r")? as u32, n),
        (TWO_THREE_SUMS, prop) => {
            let numbers = ctx.numbers(big_n, n)?;
            let polys = appell_table(&numbers).polys;
            let (arity, kind) = prop
                .split_once("_sum_")
                .ok_or_else(|| Error::Replay(format!("unknown property {prop}")))?;
            let arity = if arity == "two" { 2 } else { 3 };
            let closed = if arity == 2 {
                two_sum_closed_form(big_n, &polys, n)
            } else {
                three_sum_closed_form(big_n, &polys, n)
            };
            match kind {
                "vs_apoly" => {
                    let table = expansion_rhs(&a_poly(big_n, arity as u32)?, &polys, n);
                    Ok((closed.into(), table.into()))
                }
                "grid" => {
                    let xs = inputs_to_point(&cex.inputs, arity)?;
                    let sum: Rational = xs.iter().sum();
                    Ok((multinomial_convolution(&polys, &xs, n).into(), closed.eval(&sum).into()))
                }
                other => Err(Error::Replay(format!("unknown property kind {other}"))),
            }
        }
        (other, _) => Err(Error::Replay(format!("not a sums identity: {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::hb::hb_polys;

    fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 1 {
            return vec![vec![n]];
        }
        (0..=n)
            .flat_map(|first| {
                compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }

    /// Literal enumeration of compositions with multinomial weights.
    fn brute_force(polys: &[UniPoly], xs: &[Rational], n: usize) -> Rational {
        let f = Factorials::new(n);
        compositions(n, xs.len())
            .iter()
            .map(|c| {
                let mut term = f.rational(n);
                for (i, x) in c.iter().zip(xs) {
                    term = term * polys[*i].eval(x) * f.reciprocal(*i);
                }
                term
            })
            .sum()
    }

    #[test]
    fn nested_convolution_matches_enumeration() {
        let polys = hb_polys(2, 7).unwrap().polys;
        let xs = vec![rat(1, 3).unwrap(), rat(-2, 1).unwrap(), rat(5, 7).unwrap()];
        for n in 0..=7 {
            assert_eq!(multinomial_convolution(&polys, &xs, n), brute_force(&polys, &xs, n));
        }
    }

    #[test]
    fn euler_instance() {
        // N=1, r=2, n=2 at x1 = x2 = 0: both sides 5/6
        let ctx = Context::new();
        let polys = hb_polys(1, 2).unwrap().polys;
        let zero = vec![Rational::zero(); 2];
        assert_eq!(multinomial_convolution(&polys, &zero, 2), rat(5, 6).unwrap());
        let rhs = expansion_rhs(&a_poly(1, 2).unwrap(), &polys, 2);
        assert_eq!(rhs.eval(&Rational::zero()), rat(5, 6).unwrap());
        let report = check_kamano(&ctx, 1, 2, 2).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn kamano_small_cells() {
        let ctx = Context::new();
        let (lhs, rhs) = kamano_sides(&ctx, 2, 2, 1).unwrap();
        assert_eq!(lhs, Value::Rational(rat(-2, 3).unwrap()));
        assert_eq!(lhs, rhs);
        assert!(check_kamano(&ctx, 3, 1, 4).unwrap().passed());
        assert!(check_kamano(&ctx, 1, 3, 1).is_err());
    }

    #[test]
    fn grid_and_sample_modes_pass() {
        let ctx = Context::new();
        let g = check_sums_of_products(&ctx, 2, 3, 4, CertMode::Grid, 0, 0).unwrap();
        assert!(g.passed(), "{g:?}");
        assert_eq!(g.cells_checked, 125);
        let s = check_sums_of_products(&ctx, 2, 3, 4, CertMode::Sample, 8, 7).unwrap();
        assert!(s.passed(), "{s:?}");
        assert_eq!(s.sample_points.len(), 8);
        assert_eq!(s.seed, Some(7));
    }

    #[test]
    fn order_one_degenerates() {
        let ctx = Context::new();
        for n in 0..6 {
            assert!(check_sums_of_products(&ctx, 3, 1, n, CertMode::Grid, 0, 0).unwrap().passed());
        }
    }

    #[test]
    fn two_fold_matches_closed_form_symbolically() {
        for big_n in 1..=3u32 {
            let polys = hb_polys(big_n, 8).unwrap().polys;
            for n in 1..=8 {
                let rhs = expansion_rhs(&a_poly(big_n, 2).unwrap(), &polys, n);
                assert_eq!(rhs, two_sum_closed_form(big_n, &polys, n));
            }
        }
    }

    #[test]
    fn below_precondition_is_rejected() {
        let ctx = Context::new();
        let err = check_sums_of_products(&ctx, 1, 4, 1, CertMode::Grid, 0, 0).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
        let probe = probe_sums_of_products(&ctx, 1, 4, 1, CertMode::Grid, 0, 0).unwrap();
        assert!(probe.informational);
    }

    #[test]
    fn sample_points_are_reproducible_and_bounded() {
        let a = sample_points(42, &[1, 2, 3], 16, 4);
        assert_eq!(a, sample_points(42, &[1, 2, 3], 16, 4));
        assert_ne!(a, sample_points(43, &[1, 2, 3], 16, 4));
        assert_ne!(a, sample_points(42, &[1, 2, 4], 16, 4));
        for x in a.iter().flatten() {
            assert!(x.denom() <= &BigInt::from(SAMPLE_BOUND));
            assert!(x.numer().magnitude() <= &BigInt::from(SAMPLE_BOUND).magnitude().clone());
        }
    }

    #[test]
    fn auto_mode_threshold() {
        assert_eq!(auto_mode(4, 10), CertMode::Grid);
        assert_eq!(auto_mode(4, 11), CertMode::Sample);
        assert_eq!(auto_mode(3, 26), CertMode::Grid);
        assert_eq!(auto_mode(3, 27), CertMode::Sample);
    }
}
