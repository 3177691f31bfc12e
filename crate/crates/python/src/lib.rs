use pyo3::exceptions::{PyRuntimeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use trisum::arith::factor::{factor, Factorization};
use trisum::bireduce::bivariate_abramov;
use trisum::certificate::{Cert, CertMode};
use trisum::expr::{parse_expression, parse_factored_den};
use trisum::telescope::{self as ts, CtOptions, Status};
use trisum::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::InvalidFactorization(_) | Error::UncertifiedFactor(_) | Error::InvalidArgument(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        Error::Precondition(_) | Error::MaxOrderExceeded(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Rational function in x, y, z over the rationals.
#[pyclass(name = "RatFun", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRatFun(trisum::arith::RatFun);

#[pymethods]
impl PyRatFun {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_expression(text).map(PyRatFun).map_err(py_err)
    }

    #[getter]
    fn numerator(&self) -> String {
        self.0.num().to_string()
    }

    #[getter]
    fn denominator(&self) -> String {
        self.0.den().to_string()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[pyo3(signature = (dx = 0, dy = 0, dz = 0))]
    fn shift(&self, dx: i64, dy: i64, dz: i64) -> Self {
        PyRatFun(self.0.shift(dx, dy, dz))
    }

    fn __add__(&self, o: &Self) -> Self {
        PyRatFun(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyRatFun(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyRatFun(&self.0 * &o.0)
    }

    fn __neg__(&self) -> Self {
        PyRatFun(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFun('{}')", self.0)
    }
}

/// Linear recurrence operator in the shift of x with coefficients in Q(x).
#[pyclass(name = "OreOp", frozen, eq, skip_from_py_object)]
#[derive(Clone)]
struct PyOreOp(ts::OreOp);

impl PartialEq for PyOreOp {
    fn eq(&self, o: &Self) -> bool {
        self.0.canonical() == o.0.canonical()
    }
}

#[pymethods]
impl PyOreOp {
    /// Coefficients as expression strings, lowest shift power first.
    #[new]
    fn new(coeffs: Vec<String>) -> PyResult<Self> {
        let cs = coeffs.iter().map(|c| parse_expression(c)).collect::<trisum::Result<Vec<_>>>().map_err(py_err)?;
        Ok(PyOreOp(ts::OreOp::new(cs)))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.0.coeff_strings()
    }

    fn monic(&self) -> Self {
        PyOreOp(self.0.monic())
    }

    fn apply(&self, f: &PyRatFun) -> PyRatFun {
        PyRatFun(self.0.apply(&f.0))
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyOreOp(self.0.mul(&o.0))
    }

    fn equal_up_to_scalar(&self, o: &Self) -> bool {
        self.0.equal_up_to_scalar(&o.0)
    }

    fn __repr__(&self) -> String {
        format!("OreOp({:?})", self.0.coeff_strings())
    }
}

/// Outcome of a telescoper computation.
#[pyclass(name = "TelescopeResult", frozen)]
struct PyTelescopeResult {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    order: usize,
    #[pyo3(get)]
    iterations: usize,
    #[pyo3(get)]
    operator: PyOreOp,
    /// `(g, h)` strings, or `None` without a certificate.
    #[pyo3(get)]
    certificate: Option<(String, String)>,
}

#[pymethods]
impl PyTelescopeResult {
    fn __repr__(&self) -> String {
        format!("TelescopeResult(status='{}', order={})", self.status, self.order)
    }
}

fn cert_pair(c: Option<&Cert>) -> Option<(String, String)> {
    c.filter(|c| c.mode.tracks()).map(|c| (c.g.to_string(), c.h.to_string()))
}

fn input(f: &PyRatFun, factored_den: Option<&str>) -> PyResult<Factorization> {
    match factored_den {
        Some(text) => parse_factored_den(text, f.0.den()).map_err(py_err),
        None => Ok(factor(f.0.den())),
    }
}

/// Minimal telescoper of `f` with respect to x.
#[pyfunction]
#[pyo3(signature = (f, factored_den = None, certificate = "normalized", enhancements = true, lclm = false, max_order = None))]
fn telescope(
    py: Python<'_>,
    f: &PyRatFun,
    factored_den: Option<&str>,
    certificate: &str,
    enhancements: bool,
    lclm: bool,
    max_order: Option<usize>,
) -> PyResult<PyTelescopeResult> {
    let den = input(f, factored_den)?;
    let mode: CertMode = certificate.parse().map_err(py_err)?;
    let opts = CtOptions { mode, enhancements, max_order };
    let g = f.0.clone();
    let res = py.detach(move || ts::telescope(&g, &den, &opts, lclm)).map_err(py_err)?;
    Ok(PyTelescopeResult {
        status: res.status.as_str().to_string(),
        order: res.order,
        iterations: res.iterations,
        operator: PyOreOp(res.op),
        certificate: if res.status == Status::NoTelescoper { None } else { cert_pair(res.cert.as_ref()) },
    })
}

/// `(summable, g, h)`; `g` and `h` are `None` when `f` is not summable.
#[pyfunction]
#[pyo3(signature = (f, factored_den = None))]
fn summable(f: &PyRatFun, factored_den: Option<&str>) -> PyResult<(bool, Option<String>, Option<String>)> {
    let den = input(f, factored_den)?;
    let mut res = bivariate_abramov(&f.0, &den, CertMode::Normalized).map_err(py_err)?;
    if !res.r.is_zero() {
        return Ok((false, None, None));
    }
    res.cert.finish();
    Ok((true, Some(res.cert.g.to_string()), Some(res.cert.h.to_string())))
}

/// Remainder `r` of the decomposition `f = Δ_y(g) + Δ_z(h) + r`.
#[pyfunction]
#[pyo3(signature = (f, factored_den = None))]
fn reduce(f: &PyRatFun, factored_den: Option<&str>) -> PyResult<PyRatFun> {
    let den = input(f, factored_den)?;
    let res = bivariate_abramov(&f.0, &den, CertMode::None).map_err(py_err)?;
    Ok(PyRatFun(res.r.to_ratfun()))
}

/// Whether `op(f)` is `(y, z)`-summable.
#[pyfunction]
#[pyo3(signature = (op, f, factored_den = None))]
fn verify(op: &PyOreOp, f: &PyRatFun, factored_den: Option<&str>) -> PyResult<bool> {
    let den = input(f, factored_den)?;
    ts::verify_telescoper(&op.0, &f.0, &den, None).map_err(py_err)
}

#[pymodule]
fn trisum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFun>()?;
    m.add_class::<PyOreOp>()?;
    m.add_class::<PyTelescopeResult>()?;
    m.add_function(wrap_pyfunction!(telescope, m)?)?;
    m.add_function(wrap_pyfunction!(summable, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
