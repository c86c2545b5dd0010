//! Python bindings. Reports cross the boundary as plain dicts and lists.

use cpmackey::free::{check_freeness, CellComplex};
use cpmackey::homalg::bo2_page;
use cpmackey::linalg::{smith_normal_form, solve_linear};
use cpmackey::mackey::{box_product, iso, IsoResult, MackeyFunctor as CoreFunctor};
use cpmackey::point::{grid_label, point_functor, point_type, standard_of_type, PointType};
use cpmackey::projspace::{mono_name, CPRing as CoreCPRing};
use cpmackey::rog::{rog_len, ROGElement};
use cpmackey::verify::{run_suite, Suite, SuiteParams};
use cpmackey::{Error, GroundRing, Mat};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) | Error::InvalidRing(_) | Error::Hypothesis(_) | Error::Unsupported(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn parse_ring(s: &str) -> PyResult<GroundRing> {
    s.parse::<GroundRing>().map_err(py_err)
}

fn matrix(rows: Vec<Vec<i64>>) -> PyResult<Mat> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("matrix rows have different lengths"));
    }
    Ok(Mat::from_rows(&rows, cols))
}

/// serde_json value to the matching Python object; object keys keep their sorted order.
fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(o) => {
            let dict = PyDict::new(py);
            for (k, x) in o {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

/// An element of RO(C_p): coefficients of the trivial summand then lambda_1, ..., lambda_{(p-1)/2}.
#[pyclass(name = "RogElement", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct RogElement(ROGElement);

#[pymethods]
impl RogElement {
    #[new]
    fn new(p: i64, coeffs: Vec<i64>) -> PyResult<Self> {
        ROGElement::new(p, coeffs).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn trivial(p: i64, n: i64) -> Self {
        Self(ROGElement::trivial(p, n))
    }

    #[staticmethod]
    fn lam(p: i64, k: i64) -> Self {
        Self(ROGElement::lambda(p, k))
    }

    /// `(|alpha^{C_p}|, |alpha|)`.
    fn dims(&self) -> (i64, i64) {
        self.0.dims()
    }

    fn is_honest(&self) -> bool {
        self.0.is_honest()
    }

    #[getter]
    fn coeffs(&self) -> Vec<i64> {
        self.0.coeffs.clone()
    }

    fn __add__(&self, o: &Self) -> Self {
        Self(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        Self(&self.0 - &o.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RogElement({})", self.0)
    }
}

/// A Mackey functor for C_p: top and bottom modules with restriction, transfer and the action.
#[pyclass(name = "MackeyFunctor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct MackeyFunctor(CoreFunctor);

fn type_from_label(label: &str, p: i64) -> PyResult<PointType> {
    Ok(match label {
        "A" => PointType::A,
        "R" => PointType::R,
        "L" => PointType::L,
        "R_-" => PointType::RMinus,
        "L_-" => PointType::LMinus,
        "<k>" => PointType::BracketK,
        "0" | "." => PointType::Zero,
        s if s == format!("<k/{p}>") => PointType::BracketKModP,
        s => match s.strip_prefix("A<").and_then(|r| r.strip_suffix('>')).and_then(|d| d.parse().ok()) {
            Some(d) => PointType::ATwisted(d),
            None => return Err(PyValueError::new_err(format!("unknown functor '{label}'"))),
        },
    })
}

#[pymethods]
impl MackeyFunctor {
    /// A standard functor by label: A, A<d>, R, L, R_-, L_-, <k>, <k/p>, 0.
    #[staticmethod]
    fn standard(label: &str, ring: &str, p: i64) -> PyResult<Self> {
        let t = type_from_label(label, p)?;
        standard_of_type(t, parse_ring(ring)?, p).map(Self).map_err(py_err)
    }

    fn box_product(&self, o: &Self) -> PyResult<Self> {
        box_product(&self.0, &o.0).map(Self).map_err(py_err)
    }

    /// `True`/`False` when decided, `None` when the search is inconclusive.
    fn is_isomorphic(&self, o: &Self) -> Option<bool> {
        match iso(&self.0, &o.0) {
            IsoResult::Found(_) => Some(true),
            IsoResult::NotIsomorphic(_) => Some(false),
            IsoResult::Inconclusive(_) => None,
        }
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __str__(&self) -> String {
        self.0.describe()
    }
}

#[pyfunction]
#[pyo3(signature = (rows, ring="Z"))]
/// Smith normal form over Z or Z/n: dict with d, u, u_inv, v (as row lists) and rank.
fn snf<'py>(py: Python<'py>, rows: Vec<Vec<i64>>, ring: &str) -> PyResult<Bound<'py, PyDict>> {
    let m = matrix(rows)?;
    let s = match parse_ring(ring)? {
        GroundRing::Integers => smith_normal_form(&m),
        r => cpmackey::linalg::smith_normal_form_mod(&m, r.modulus()),
    };
    let d = PyDict::new(py);
    d.set_item("d", s.d.to_rows())?;
    d.set_item("u", s.u.to_rows())?;
    d.set_item("u_inv", s.u_inv.to_rows())?;
    d.set_item("v", s.v.to_rows())?;
    d.set_item("rank", s.rank)?;
    d.set_item("diagonal", s.diagonal())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (rows, b, ring="Z"))]
/// A solution of `A x = b`, or `None` when the system is inconsistent.
fn solve(rows: Vec<Vec<i64>>, b: Vec<i64>, ring: &str) -> PyResult<Option<Vec<i64>>> {
    solve_linear(&matrix(rows)?, &b, parse_ring(ring)?).map_err(py_err)
}

#[pyfunction]
/// Grid label of H^alpha(S^0) with `m = |alpha^{C_p}|` and `n = |alpha|`.
fn point_label(p: i64, m: i64, n: i64) -> String {
    grid_label(p, m, n)
}

#[pyfunction]
#[pyo3(signature = (alpha, ring="Z"))]
/// The Mackey functor H^alpha(S^0) with its isomorphism-type label.
fn point_cohomology(alpha: &RogElement, ring: &str) -> PyResult<(String, MackeyFunctor)> {
    let label = point_type(&alpha.0).label(alpha.0.p);
    let f = point_functor(parse_ring(ring)?, &alpha.0).map_err(py_err)?;
    Ok((label, MackeyFunctor(f)))
}

/// Cohomology of CP(U_C) over F_q as a free module on the monomials D_j C^n.
#[pyclass(name = "CPRing", frozen)]
struct CPRing(CoreCPRing);

#[pymethods]
impl CPRing {
    #[new]
    fn new(p: i64, q: i64) -> PyResult<Self> {
        let ring = GroundRing::prime_field(q).map_err(py_err)?;
        CoreCPRing::new(ring, p).map(Self).map_err(py_err)
    }

    /// `D_j C^n * D_k C^m` expanded in the monomial basis, as a string.
    fn product(&self, a: (u32, u32), b: (u32, u32)) -> PyResult<String> {
        let (x, _) = self.0.solve_monomials(a, b).map_err(py_err)?;
        Ok(x.to_string())
    }

    #[staticmethod]
    fn monomial_name(j: u32, n: u32) -> String {
        mono_name((j, n))
    }
}

#[pyfunction]
/// Check the freeness hypotheses on a cell complex given as JSON. Returns `(free, violation)`.
fn freeness(cells_json: &str) -> PyResult<(bool, Option<String>)> {
    let cx: CellComplex = serde_json::from_str(cells_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(match check_freeness(&cx) {
        Ok(()) => (true, None),
        Err(v) => (false, Some(format!("{}: {}", v.bullet, v.detail))),
    })
}

#[pyfunction]
#[pyo3(signature = (ring="Z", smax=10, tmax=10))]
/// Nonzero E_2 entries `{(s, t): description}` for BSO(2) -> BO(2) -> BZ/2.
fn ext_chart(ring: &str, smax: usize, tmax: usize) -> PyResult<Vec<((usize, usize), String)>> {
    let (page, _) = bo2_page(parse_ring(ring)?, smax, tmax).map_err(py_err)?;
    let mut out = Vec::new();
    for s in 0..=smax {
        for t in 0..=tmax {
            let m = page.get(s, t);
            if !m.is_zero_module() {
                out.push(((s, t), m.describe()));
            }
        }
    }
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (suite, p=None, q=None, ring=None, max_degree=None))]
/// Run a verification suite; returns the report as a dict with `claims` and `pass`.
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    p: Option<i64>,
    q: Option<i64>,
    ring: Option<&str>,
    max_degree: Option<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(py_err)?;
    let ring = ring.map(parse_ring).transpose()?;
    let rep = run_suite(suite, &SuiteParams { p, q, ring, max_dim: max_degree }).map_err(py_err)?;
    to_py(py, &serde_json::to_value(rep).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

#[pyfunction]
/// Number of RO(C_p) coordinates.
fn rog_rank(p: i64) -> usize {
    rog_len(p)
}

#[pymodule]
#[pyo3(name = "cpmackey")]
fn cpmackey_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RogElement>()?;
    m.add_class::<MackeyFunctor>()?;
    m.add_class::<CPRing>()?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(point_label, m)?)?;
    m.add_function(wrap_pyfunction!(point_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(freeness, m)?)?;
    m.add_function(wrap_pyfunction!(ext_chart, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(rog_rank, m)?)?;
    Ok(())
}
