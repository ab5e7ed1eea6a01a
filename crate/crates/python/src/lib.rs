//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! any argument whose `str()` reads as `p` or `p/q` is accepted as input.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hyperbern::algebra::rational::{self, Rational};
use hyperbern::algebra::{BiPoly, UniPoly};
use hyperbern::identities::{self as ids, sums, CertMode, Context, Fault, ModeChoice, SuiteConfig, SuiteKind};

fn value_error(e: hyperbern::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, v: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((rational::to_string(v),))
}

fn fractions<'py>(py: Python<'py>, vs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    vs.iter().map(|v| fraction(py, v)).collect()
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    rational::parse(obj.str()?.to_str()?.trim()).map_err(value_error)
}

fn json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// Context with an optional `(N, k)` perturbation of `B_{N,k}` by +1.
fn context(perturb: Option<(u32, usize)>) -> Context {
    match perturb {
        Some((big_n, index)) => Context::new().with_fault(Fault { big_n, index, delta: rational::int(1) }),
        None => Context::new(),
    }
}

/// Univariate polynomial with exact rational coefficients.
#[pyclass(name = "Poly", module = "hyperbern", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct PyPoly {
    inner: UniPoly,
}

#[pymethods]
impl PyPoly {
    /// Coefficients in ascending degree.
    #[new]
    fn new(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let cs = coeffs.iter().map(to_rational).collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: UniPoly::from_coeffs(cs) })
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.coeffs())
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn __call__<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.eval(&to_rational(x)?))
    }

    fn derivative(&self) -> Self {
        Self { inner: self.inner.derivative() }
    }

    /// `∫_0^1 (1-x)^(N-1) p(x) dx`.
    fn integral_weighted<'py>(&self, py: Python<'py>, big_n: u32) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.integral_weighted(big_n))
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Polynomial in `x` and `s`; `matrix[i][j]` is the coefficient of `x^i s^j`.
#[pyclass(name = "BiPoly", module = "hyperbern", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct PyBiPoly {
    inner: BiPoly,
}

#[pymethods]
impl PyBiPoly {
    #[getter]
    fn matrix<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.to_matrix().iter().map(|row| fractions(py, row)).collect()
    }

    /// Polynomial in `x` after setting `s`.
    fn subst_s(&self, s: &Bound<'_, PyAny>) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: self.inner.subst_s(&to_rational(s)?) })
    }

    /// Polynomial in `s` after setting `x`.
    fn subst_x(&self, x: &Bound<'_, PyAny>) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: self.inner.subst_x(&to_rational(x)?) })
    }

    fn __call__<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>, s: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.eval(&to_rational(x)?, &to_rational(s)?))
    }

    fn __repr__(&self) -> String {
        let rows: Vec<String> = self
            .inner
            .to_matrix()
            .iter()
            .map(|row| format!("[{}]", row.iter().map(rational::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("BiPoly([{}])", rows.join(", "))
    }
}

/// Outcome of one certification cell.
#[pyclass(name = "VerifyReport", module = "hyperbern", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyVerifyReport {
    inner: ids::VerifyReport,
}

#[pymethods]
impl PyVerifyReport {
    #[getter]
    fn identity(&self) -> &str {
        &self.inner.identity
    }

    /// `"pass"`, `"fail"` or `"skipped"`.
    #[getter]
    fn status(&self) -> &'static str {
        match self.inner.status {
            ids::Status::Pass => "pass",
            ids::Status::Fail => "fail",
            ids::Status::Skipped => "skipped",
        }
    }

    #[getter]
    fn mode(&self) -> String {
        self.inner.mode.to_string()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn informational(&self) -> bool {
        self.inner.informational
    }

    #[getter]
    fn cells_checked(&self) -> u64 {
        self.inner.cells_checked
    }

    #[getter]
    fn params<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json(py, &self.inner.params)
    }

    #[getter]
    fn counterexample<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json(py, &self.inner.counterexample)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("VerifyReport({}, {})", self.inner.label(), self.status())
    }
}

fn report(r: hyperbern::Result<ids::VerifyReport>) -> PyResult<PyVerifyReport> {
    r.map(|inner| PyVerifyReport { inner }).map_err(value_error)
}

fn polys(table: hyperbern::hb::HBPolyTable) -> Vec<PyPoly> {
    table.polys.into_iter().map(|inner| PyPoly { inner }).collect()
}

/// `B_{N,0..=max_n}`.
#[pyfunction]
#[pyo3(signature = (big_n, max_n))]
fn numbers<'py>(py: Python<'py>, big_n: u32, max_n: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let table = hyperbern::hb::hb_numbers(big_n, max_n).map_err(value_error)?;
    fractions(py, &table.values)
}

/// `B^{(r)}_{N,0..=max_n}(x)` from the generating series.
#[pyfunction]
#[pyo3(signature = (big_n, max_n, r = 1))]
fn higher_polys(big_n: u32, max_n: usize, r: u32) -> PyResult<Vec<PyPoly>> {
    hyperbern::hb::hb_higher_polys_series(big_n, r, max_n).map(polys).map_err(value_error)
}

/// Same table built by the index recurrence from the numbers.
#[pyfunction]
#[pyo3(signature = (big_n, max_n, r = 1))]
fn higher_polys_recurrence(big_n: u32, max_n: usize, r: u32) -> PyResult<Vec<PyPoly>> {
    let numbers = hyperbern::hb::hb_numbers(big_n, max_n).map_err(value_error)?;
    hyperbern::hb::hb_higher_polys_recurrence(&numbers, r, max_n).map(polys).map_err(value_error)
}

/// `A_r^{(N)}(i, x; s)` for `i = 0..r-1`.
#[pyfunction]
#[pyo3(signature = (big_n, r, at_zero = false))]
fn apoly(big_n: u32, r: u32, at_zero: bool) -> PyResult<Vec<PyBiPoly>> {
    let table = if at_zero { hyperbern::hb::a_poly_at_zero(big_n, r) } else { hyperbern::hb::a_poly(big_n, r) };
    let table = table.map_err(value_error)?;
    Ok(table.entries.into_iter().map(|inner| PyBiPoly { inner }).collect())
}

#[pyfunction]
#[pyo3(signature = (big_n, r, n, perturb = None))]
fn check_kamano(big_n: u32, r: u32, n: usize, perturb: Option<(u32, usize)>) -> PyResult<PyVerifyReport> {
    report(ids::check_kamano(&context(perturb), big_n, r, n))
}

/// `mode` is `"auto"`, `"grid"` or `"sample"`.
#[pyfunction]
#[pyo3(signature = (big_n, r, n, mode = "auto", sample_count = 64, seed = 42, perturb = None))]
fn check_sums_of_products(
    big_n: u32,
    r: u32,
    n: usize,
    mode: &str,
    sample_count: usize,
    seed: u64,
    perturb: Option<(u32, usize)>,
) -> PyResult<PyVerifyReport> {
    let mode = match mode.parse::<ModeChoice>().map_err(value_error)? {
        ModeChoice::Auto => sums::auto_mode(r, n),
        ModeChoice::Grid => CertMode::Grid,
        ModeChoice::Sample => CertMode::Sample,
    };
    report(ids::check_sums_of_products(&context(perturb), big_n, r, n, mode, sample_count, seed))
}

#[pyfunction]
#[pyo3(signature = (big_n, n, perturb = None))]
fn check_two_three_sums(big_n: u32, n: usize, perturb: Option<(u32, usize)>) -> PyResult<PyVerifyReport> {
    report(ids::check_two_three_sums(&context(perturb), big_n, n))
}

#[pyfunction]
#[pyo3(signature = (big_n, r, n, perturb = None))]
fn check_ode(big_n: u32, r: u32, n: usize, perturb: Option<(u32, usize)>) -> PyResult<PyVerifyReport> {
    report(ids::check_ode(&context(perturb), big_n, r, n))
}

#[pyfunction]
#[pyo3(signature = (big_n, r, n_max, perturb = None))]
fn check_recurrence_paths(big_n: u32, r: u32, n_max: usize, perturb: Option<(u32, usize)>) -> PyResult<PyVerifyReport> {
    report(ids::check_recurrence_paths(&context(perturb), big_n, r, n_max))
}

#[pyfunction]
fn check_genfun_ode(big_n: u32, order: usize) -> PyResult<PyVerifyReport> {
    report(ids::check_genfun_ode(big_n, order))
}

#[pyfunction]
#[pyo3(signature = (big_n, r, order, perturb = None))]
fn check_logderiv(big_n: u32, r: u32, order: usize, perturb: Option<(u32, usize)>) -> PyResult<PyVerifyReport> {
    report(ids::check_logderiv(&context(perturb), big_n, r, order))
}

#[pyfunction]
#[pyo3(signature = (big_n, r, n_max, perturb = None))]
fn check_appell_basics(big_n: u32, r: u32, n_max: usize, perturb: Option<(u32, usize)>) -> PyResult<PyVerifyReport> {
    report(ids::check_appell_basics(&context(perturb), big_n, r, n_max))
}

/// Runs the suite over `N <= big_n_max`, `r <= r_max`, `n <= n_max`.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (
    big_n_max = 4, r_max = 4, n_max = 24, mode = "auto", seed = 42, sample_count = 64,
    suites = None, probe_below = false, perturb = None
))]
fn verify(
    py: Python<'_>,
    big_n_max: u32,
    r_max: u32,
    n_max: usize,
    mode: &str,
    seed: u64,
    sample_count: usize,
    suites: Option<Vec<String>>,
    probe_below: bool,
    perturb: Option<(u32, usize)>,
) -> PyResult<Vec<PyVerifyReport>> {
    let suites = match suites {
        Some(names) => names.iter().map(|s| s.parse::<SuiteKind>()).collect::<Result<_, _>>().map_err(value_error)?,
        None => SuiteKind::ALL.to_vec(),
    };
    let config = SuiteConfig {
        big_n: 1..=big_n_max,
        r: 1..=r_max,
        n: 0..=n_max,
        mode: mode.parse().map_err(value_error)?,
        sample_count,
        seed,
        suites,
        probe_below_precondition: probe_below,
        fault: perturb.map(|(big_n, index)| Fault { big_n, index, delta: rational::int(1) }),
    };
    let reports = py.detach(|| ids::run_suite(&config)).map_err(value_error)?;
    Ok(reports.into_iter().map(|inner| PyVerifyReport { inner }).collect())
}

/// True when the report's counterexample reproduces under the given perturbation.
#[pyfunction]
#[pyo3(signature = (report, perturb = None))]
fn replay(report: &PyVerifyReport, perturb: Option<(u32, usize)>) -> PyResult<bool> {
    ids::replay(&context(perturb), &report.inner).map_err(value_error)
}

/// Exact hypergeometric Bernoulli numbers, polynomials and identity checks.
#[pymodule(name = "hyperbern")]
pub mod hyperbern_module {
    #[pymodule_export]
    use super::{
        apoly, check_appell_basics, check_genfun_ode, check_kamano, check_logderiv, check_ode,
        check_recurrence_paths, check_sums_of_products, check_two_three_sums, higher_polys,
        higher_polys_recurrence, numbers, replay, verify, PyBiPoly, PyPoly, PyVerifyReport,
    };
}
