//! Python bindings: Euler numbers, Dirichlet characters, complex-side l-values and the
//! multiple p-adic l-function. Rationals come back as `fractions.Fraction`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use padic_euler::characters::{enumerate_characters, DirichletCharacter};
use padic_euler::lfunction::{self, DerivativeMethod, PadicLQuery, SValue};
use padic_euler::lvalues::{self, LNegQuery};
use padic_euler::verify::{run_suite, Suite, VerifyParams};
use padic_euler::{CycElem, Error, PadicContext, PadicNum, Rational};

create_exception!(padic_euler_py, UnsupportedEmbeddingError, PyValueError);
create_exception!(padic_euler_py, PrecisionError, PyArithmeticError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnsupportedEmbedding { .. } => UnsupportedEmbeddingError::new_err(e.to_string()),
        Error::Precision { .. } => PrecisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((q.numer().clone(), q.denom().clone()))
}

/// Element of Q(zeta_m) in the power basis reduced modulo the m-th cyclotomic polynomial.
#[pyclass(name = "Cyclotomic", frozen, eq, skip_from_py_object, module = "padic_euler_py")]
#[derive(Clone, PartialEq)]
struct PyCyclotomic(CycElem);

#[pymethods]
impl PyCyclotomic {
    /// The order m of the root of unity.
    #[getter]
    fn order(&self) -> u64 {
        self.0.order()
    }

    /// Coefficients of 1, z, z^2, ... as Fractions.
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.coeffs().iter().map(|c| fraction(py, c)).collect()
    }

    /// The rational value, or None when the element is not rational.
    fn as_fraction<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.0.as_rational().map(|q| fraction(py, q)).transpose()
    }

    fn to_json(&self) -> String {
        serde_json_string(&self.0.to_json())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        CycElem::from_json(&j).map(PyCyclotomic).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyclotomic({})", self.0)
    }
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// A p-adic number `unit * p^valuation + O(p^precision)`.
#[pyclass(name = "Padic", frozen, eq, skip_from_py_object, module = "padic_euler_py")]
#[derive(Clone, PartialEq)]
struct PyPadic(PadicNum);

#[pymethods]
impl PyPadic {
    #[new]
    #[pyo3(signature = (p, value, precision))]
    fn new(p: u64, value: BigInt, precision: i64) -> PyResult<Self> {
        if !padic_euler::arith::is_prime(p) {
            return Err(PyValueError::new_err(format!("{p} is not prime")));
        }
        Ok(PyPadic(PadicNum::from_bigint(p, &value, precision)))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.prime()
    }

    /// None for a value that is zero to the known precision.
    #[getter]
    fn valuation(&self) -> Option<i64> {
        self.0.valuation()
    }

    #[getter]
    fn precision(&self) -> i64 {
        self.0.precision()
    }

    /// Base-p digits of the unit part, least significant first.
    fn unit_digits(&self) -> Vec<u64> {
        self.0.unit_digits()
    }

    /// Representative in [0, p^precision); None for negative valuation.
    fn to_int(&self) -> Option<BigInt> {
        self.0.to_bigint()
    }

    /// The signed integer this value equals when it is small, else None.
    fn small_integer(&self) -> Option<i64> {
        self.0.small_integer()
    }

    fn agreement(&self, other: &PyPadic) -> PyResult<i64> {
        self.0.agreement(&other.0).map_err(to_py)
    }

    fn __add__(&self, other: &PyPadic) -> PyResult<Self> {
        self.0.try_add(&other.0).map(PyPadic).map_err(to_py)
    }

    fn __sub__(&self, other: &PyPadic) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(PyPadic).map_err(to_py)
    }

    fn __mul__(&self, other: &PyPadic) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(PyPadic).map_err(to_py)
    }

    fn __neg__(&self) -> Self {
        PyPadic(self.0.neg())
    }

    fn to_json(&self) -> String {
        serde_json_string(&self.0.to_json())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        PadicNum::from_json(&j).map(PyPadic).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Padic({})", self.0)
    }
}

/// A Dirichlet character in the canonical enumeration for its modulus.
#[pyclass(name = "Character", frozen, skip_from_py_object, module = "padic_euler_py")]
#[derive(Clone)]
struct PyCharacter(DirichletCharacter);

#[pymethods]
impl PyCharacter {
    #[new]
    fn new(f: u64, index: u64) -> PyResult<Self> {
        DirichletCharacter::from_index(f, index).map(PyCharacter).map_err(to_py)
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.0.modulus()
    }

    #[getter]
    fn index(&self) -> u64 {
        self.0.index()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.0.order()
    }

    #[getter]
    fn conductor(&self) -> u64 {
        self.0.conductor()
    }

    #[getter]
    fn exponents(&self) -> Vec<u64> {
        self.0.exponents().to_vec()
    }

    fn is_primitive(&self) -> bool {
        self.0.is_primitive()
    }

    /// chi(a) in Q(zeta_order).
    fn __call__(&self, a: i64) -> PyCyclotomic {
        PyCyclotomic(self.0.evaluate(a))
    }

    fn to_json(&self) -> String {
        serde_json_string(&self.0.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Character(f={}, index={}, order={}, conductor={})",
            self.0.modulus(),
            self.0.index(),
            self.0.order(),
            self.0.conductor()
        )
    }
}

/// E_n^(r) as a Fraction.
#[pyfunction]
#[pyo3(signature = (n, r=1))]
fn euler_number<'py>(py: Python<'py>, n: usize, r: u32) -> PyResult<Bound<'py, PyAny>> {
    let q = padic_euler::euler_number_multi(n, r).map_err(to_py)?;
    fraction(py, &q)
}

/// E_n^(r)(x) for a rational x given as (num, den).
#[pyfunction]
#[pyo3(signature = (n, r, num, den=BigInt::from(1)))]
fn euler_polynomial<'py>(
    py: Python<'py>,
    n: usize,
    r: u32,
    num: BigInt,
    den: BigInt,
) -> PyResult<Bound<'py, PyAny>> {
    if den == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    let x = Rational::new(num, den);
    fraction(py, &padic_euler::euler_polynomial_multi(n, r, &x).map_err(to_py)?)
}

/// Characters mod f in canonical order.
#[pyfunction]
#[pyo3(signature = (f, primitive_only=false))]
fn characters(f: u64, primitive_only: bool) -> PyResult<Vec<PyCharacter>> {
    Ok(enumerate_characters(f, primitive_only)
        .map_err(to_py)?
        .into_iter()
        .map(PyCharacter)
        .collect())
}

/// l_r(-n, chi) summed over tuples in {1..F}^r with F = f_mult * f.
#[pyfunction]
#[pyo3(signature = (chi, r, n, f_mult=1))]
fn l_value_neg(chi: &PyCharacter, r: u32, n: usize, f_mult: u64) -> PyResult<PyCyclotomic> {
    let q = LNegQuery::new(n, r, chi.0.clone(), f_mult * chi.0.modulus()).map_err(to_py)?;
    lvalues::l_value_neg(&q).map(PyCyclotomic).map_err(to_py)
}

/// E_{0,chi}^(r) .. E_{n_max,chi}^(r) from the generating function.
#[pyfunction]
fn gf_oracle(chi: &PyCharacter, r: u32, n_max: usize) -> PyResult<Vec<PyCyclotomic>> {
    Ok(lvalues::gf_oracle_generalized(n_max, r, &chi.0)
        .map_err(to_py)?
        .into_iter()
        .map(PyCyclotomic)
        .collect())
}

fn padic_query(p: u64, chi: &PyCharacter, r: u32, prec: u32, f_mult: u64) -> PyResult<PadicLQuery> {
    let ctx = PadicContext::with_guard(p, prec, PadicContext::guard_from_env()).map_err(to_py)?;
    PadicLQuery::new(r, chi.0.clone(), f_mult * p * chi.0.modulus(), ctx).map_err(to_py)
}

fn s_value(s: &Bound<'_, PyAny>, ctx: &PadicContext) -> PyResult<SValue> {
    if let Ok(k) = s.extract::<i64>() {
        return Ok(SValue::Integer(k));
    }
    if let Ok(x) = s.cast::<PyPadic>() {
        return Ok(SValue::Padic(x.get().0.clone()));
    }
    if let Ok(text) = s.extract::<String>() {
        return SValue::parse(&text, ctx).map_err(to_py);
    }
    Err(PyValueError::new_err("s must be an int, a Padic, or a string"))
}

/// l_{p,r}(s, chi) with F = f_mult * p * f. `s` is an int, a Padic, or a string
/// accepted by the command line (`"a/b"`, `"digits:..."`).
#[pyfunction]
#[pyo3(signature = (p, chi, r, s, prec=10, f_mult=1))]
fn l_padic(
    p: u64,
    chi: &PyCharacter,
    r: u32,
    s: &Bound<'_, PyAny>,
    prec: u32,
    f_mult: u64,
) -> PyResult<PyPadic> {
    let q = padic_query(p, chi, r, prec, f_mult)?;
    let s = s_value(s, q.context())?;
    lfunction::l_padic(&s, &q).map(PyPadic).map_err(to_py)
}

/// E_{n,chi_n}^(r) - p^n chi_n(p) E*_{n,chi_n}^(r).
#[pyfunction]
#[pyo3(signature = (p, chi, r, n, prec=10, f_mult=1))]
fn theorem1_rhs(p: u64, chi: &PyCharacter, r: u32, n: u32, prec: u32, f_mult: u64) -> PyResult<PyPadic> {
    let q = padic_query(p, chi, r, prec, f_mult)?;
    lfunction::theorem1_rhs(n, &q).map(PyPadic).map_err(to_py)
}

/// Derivative at s = 0 by `method` in {"corollary2", "direct", "fd"}.
#[pyfunction]
#[pyo3(signature = (p, chi, r, prec=10, method="direct", fd_k=4, f_mult=1))]
fn l_derivative_at_0(
    p: u64,
    chi: &PyCharacter,
    r: u32,
    prec: u32,
    method: &str,
    fd_k: u32,
    f_mult: u64,
) -> PyResult<PyPadic> {
    let method = match method {
        "corollary2" => DerivativeMethod::Corollary2,
        "direct" => DerivativeMethod::Direct,
        "fd" => DerivativeMethod::FiniteDifference(fd_k),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    let q = padic_query(p, chi, r, prec, f_mult)?;
    lfunction::l_derivative_at_0(&q, method).map(PyPadic).map_err(to_py)
}

/// Runs a verification suite; returns (suite, check, passed, detail) tuples.
#[pyfunction]
#[pyo3(signature = (suite="all", p=5, f=3, prec=15))]
fn verify(suite: &str, p: u64, f: u64, prec: u32) -> PyResult<Vec<(String, String, bool, String)>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let params = VerifyParams { p, f, precision: prec, guard: PadicContext::guard_from_env() };
    Ok(run_suite(suite, &params)
        .map_err(to_py)?
        .into_iter()
        .map(|c| (c.suite, c.check, c.passed, c.detail))
        .collect())
}

#[pymodule]
pub mod padic_euler_py {
    #[pymodule_export]
    use super::{
        characters, euler_number, euler_polynomial, gf_oracle, l_derivative_at_0, l_padic,
        l_value_neg, theorem1_rhs, verify, PrecisionError, PyCharacter, PyCyclotomic, PyPadic,
        UnsupportedEmbeddingError,
    };
}
