//! Python bindings: the instance model, scheme construction, validation, and
//! the exhaustive oracle, exposed as `picod_py`.
//!
//! Verdicts, oracle results, and bound reports cross the boundary as plain
//! dicts (via their JSON form) so Python callers get ordinary data.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use picod_core as core;

fn core_err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else {
                n.as_f64()
                    .ok_or_else(|| PyRuntimeError::new_err("unrepresentable number"))?
                    .into_pyobject(py)?
                    .into_any()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                // Keys that are integers (user indices) come back as ints.
                match k.parse::<u64>() {
                    Ok(n) => dict.set_item(n, json_to_py(py, v)?)?,
                    Err(_) => dict.set_item(k, json_to_py(py, v)?)?,
                }
            }
            dict.into_any()
        }
    })
}

fn to_py_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let json = serde_json::to_value(value)
        .map_err(|e| PyRuntimeError::new_err(format!("serialization failed: {e}")))?;
    json_to_py(py, &json)
}

/// A private pliable index coding instance with circular-shift side
/// information.
#[pyclass(name = "Instance", frozen)]
struct PyInstance {
    inner: core::Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(m: usize, s: usize, h: usize) -> PyResult<Self> {
        Ok(PyInstance { inner: core::Instance::new(m, s, h).map_err(core_err)? })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn h(&self) -> usize {
        self.inner.h()
    }

    /// gcd(m, h).
    #[getter]
    fn g(&self) -> usize {
        self.inner.g()
    }

    /// Number of distinct users, m / g.
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// Sorted 1-based message indices held by user i.
    fn side_info(&self, i: usize) -> PyResult<Vec<usize>> {
        Ok(self.inner.side_info(i).map_err(core_err)?.into_iter().collect())
    }

    fn has_one_factor(&self) -> bool {
        self.inner.nth().has_one_factor()
    }

    /// A witness 1-factor (sorted message indices), or None.
    fn find_one_factor(&self) -> Option<Vec<usize>> {
        self.inner.nth().find_one_factor()
    }

    fn is_infeasible(&self) -> bool {
        core::is_infeasible(&self.inner)
    }

    /// The regime classification with its bounds, as a dict.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = core::classify(&self.inner, self.inner.nth().has_one_factor());
        to_py_dict(py, &report)
    }

    /// Users incident to message j in the network topology hypergraph.
    fn incidence(&self, j: usize) -> PyResult<Vec<usize>> {
        if j < 1 || j > self.inner.m() {
            return Err(PyValueError::new_err(format!("message index {j} out of range")));
        }
        Ok(self.inner.nth().incidence(j).into_iter().collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(m={}, s={}, h={}, g={}, n={})",
            self.inner.m(),
            self.inner.s(),
            self.inner.h(),
            self.inner.g(),
            self.inner.n()
        )
    }
}

/// A constructed code: generator rows, induced assignment, provenance.
#[pyclass(name = "Scheme", frozen)]
struct PyScheme {
    inner: core::Scheme,
}

#[pymethods]
impl PyScheme {
    /// Code length (number of transmissions).
    #[getter]
    fn ell(&self) -> usize {
        self.inner.ell()
    }

    /// Generator rows as lists of 1-based message indices.
    #[getter]
    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner
            .generator
            .rows()
            .map(|r| r.support().iter().map(|c| c + 1).collect())
            .collect()
    }

    /// user -> assigned message.
    #[getter]
    fn assignment(&self) -> std::collections::BTreeMap<usize, usize> {
        self.inner.assignment.desired.clone()
    }

    #[getter]
    fn case_tag(&self) -> PyResult<String> {
        serde_json::to_value(self.inner.case_tag)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| PyRuntimeError::new_err("case tag is not a string"))
    }

    #[getter]
    fn instance(&self) -> PyInstance {
        PyInstance { inner: self.inner.instance }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyScheme {
            inner: serde_json::from_str(text)
                .map_err(|e| PyValueError::new_err(format!("bad scheme JSON: {e}")))?,
        })
    }

    /// Verdict of the linear validator against this scheme's instance.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let verdict =
            core::validate_linear(&self.inner.generator, &self.inner.instance).map_err(core_err)?;
        to_py_dict(py, &verdict)
    }

    fn __repr__(&self) -> PyResult<String> {
        Ok(format!(
            "Scheme(m={}, s={}, h={}, ell={}, case={})",
            self.inner.instance.m(),
            self.inner.instance.s(),
            self.inner.instance.h(),
            self.inner.ell(),
            self.case_tag()?
        ))
    }
}

/// Build the proved scheme for (m, s, h). Raises ValueError on the
/// infeasible family and on s = 0.
#[pyfunction]
fn construct(m: usize, s: usize, h: usize) -> PyResult<PyScheme> {
    let inst = core::Instance::new(m, s, h).map_err(core_err)?;
    Ok(PyScheme { inner: core::construct(&inst).map_err(core_err)? })
}

/// Validate generator rows (1-based indices) against an instance.
#[pyfunction]
fn validate_rows<'py>(
    py: Python<'py>,
    m: usize,
    s: usize,
    h: usize,
    rows: Vec<Vec<usize>>,
) -> PyResult<Bound<'py, PyAny>> {
    let inst = core::Instance::new(m, s, h).map_err(core_err)?;
    if rows.is_empty() {
        return Err(PyValueError::new_err("need at least one row"));
    }
    for row in &rows {
        for &j in row {
            if j < 1 || j > m {
                return Err(PyValueError::new_err(format!("message index {j} out of [1..{m}]")));
            }
        }
    }
    let supports: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| r.iter().map(|&j| j - 1).collect())
        .collect();
    let generator = core::BitMatrix::from_supports(m, &supports);
    let verdict = core::validate_linear(&generator, &inst).map_err(core_err)?;
    to_py_dict(py, &verdict)
}

/// Exhaustive optimal-length search; returns the result as a dict.
#[pyfunction]
#[pyo3(signature = (m, s, h, ell_max=None))]
fn optimal_linear_length<'py>(
    py: Python<'py>,
    m: usize,
    s: usize,
    h: usize,
    ell_max: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let inst = core::Instance::new(m, s, h).map_err(core_err)?;
    let cap = core::max_search_ell(m);
    if cap == 0 {
        return Err(PyValueError::new_err(format!(
            "exhaustive search supports m <= 10, got m={m}"
        )));
    }
    let result = core::optimal_linear_length(&inst, ell_max.unwrap_or(cap)).map_err(core_err)?;
    to_py_dict(py, &result)
}

/// Complete proof that no linear code of any length is valid (m <= 8).
#[pyfunction]
fn prove_linear_infeasible(m: usize, s: usize, h: usize) -> PyResult<bool> {
    let inst = core::Instance::new(m, s, h).map_err(core_err)?;
    core::prove_linear_infeasible(&inst).map_err(core_err)
}

/// Number of valid row spaces of one dimension (m <= 8).
#[pyfunction]
fn count_valid_codes(m: usize, s: usize, h: usize, ell: usize) -> PyResult<u64> {
    let inst = core::Instance::new(m, s, h).map_err(core_err)?;
    core::count_valid_codes(&inst, ell).map_err(core_err)
}

/// Exact conditional entropy of each non-held message given each user's
/// observation, as a dict keyed by (user, message).
#[pyfunction]
fn privacy_entropy_report<'py>(
    py: Python<'py>,
    m: usize,
    s: usize,
    h: usize,
    rows: Vec<Vec<usize>>,
) -> PyResult<Bound<'py, PyAny>> {
    let inst = core::Instance::new(m, s, h).map_err(core_err)?;
    let supports: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| r.iter().map(|&j| j.checked_sub(1).expect("1-based index")).collect())
        .collect();
    let generator = core::BitMatrix::from_supports(m, &supports);
    let table = core::EncoderTable::from_matrix(&generator).map_err(core_err)?;
    let report = core::privacy_entropy_report(&table, &inst).map_err(core_err)?;
    let dict = PyDict::new(py);
    for ((user, message), bits) in report {
        dict.set_item((user, message), bits)?;
    }
    Ok(dict.into_any())
}

/// Number of k-dimensional subspaces of GF(2)^m, exactly.
#[pyfunction]
fn gaussian_binomial(m: usize, k: usize) -> PyResult<BigUint> {
    if k > m {
        return Err(PyValueError::new_err(format!("k={k} exceeds m={m}")));
    }
    Ok(core::gaussian_binomial(m, k))
}

#[pymodule]
fn picod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyInstance>()?;
    m.add_class::<PyScheme>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(validate_rows, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_linear_length, m)?)?;
    m.add_function(wrap_pyfunction!(prove_linear_infeasible, m)?)?;
    m.add_function(wrap_pyfunction!(count_valid_codes, m)?)?;
    m.add_function(wrap_pyfunction!(privacy_entropy_report, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    Ok(())
}
