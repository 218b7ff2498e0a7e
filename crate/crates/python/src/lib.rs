use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use superdual::cli;
use superdual::duality::{self, DualityReport, DEFAULT_SIZE_CAP};
use superdual::exactlin::ExactMatrix;
use superdual::glsuper::NilpotentData;
use superdual::hecke::{self, HeckeOperatorSet};
use superdual::superindex::Pyramid;
use superdual::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Sparse exact matrix as `(rows, cols, [(i, j, "p/q"), ...])`.
type Triplets = (usize, usize, Vec<(usize, usize, String)>);

fn triplets(a: &ExactMatrix) -> Triplets {
    (a.rows(), a.cols(), a.entries().map(|(i, j, v)| (i, j, v.to_string())).collect())
}

/// Rational scalars `c_1, ..., c_n`, one per pyramid column.
#[pyclass(name = "CharVector", frozen)]
struct PyCharVector(hecke::CharVector);

#[pymethods]
impl PyCharVector {
    /// `values` is either a string like `"1/2,3"` or a list of strings or ints.
    #[new]
    fn new(values: &Bound<'_, PyAny>, n: usize) -> PyResult<Self> {
        let text = match values.extract::<String>() {
            Ok(s) => s,
            Err(_) => values
                .extract::<Vec<Bound<'_, PyAny>>>()?
                .iter()
                .map(|v| v.str().map(|s| s.to_string()))
                .collect::<PyResult<Vec<_>>>()?
                .join(","),
        };
        hecke::CharVector::parse(&text, n).map(PyCharVector).map_err(to_py)
    }

    #[staticmethod]
    fn zero(n: usize) -> Self {
        PyCharVector(hecke::CharVector::zero(n))
    }

    fn values(&self) -> Vec<String> {
        self.0.values().iter().map(|q| q.to_string()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CharVector({:?})", self.0.to_string())
    }
}

#[pyclass(name = "DualityReport", frozen)]
struct PyReport(DualityReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn theorem(&self) -> &str {
        &self.0.theorem
    }

    #[getter]
    fn lhs_dim(&self) -> usize {
        self.0.lhs_dim
    }

    #[getter]
    fn rhs_dim(&self) -> usize {
        self.0.rhs_dim
    }

    #[getter]
    fn equal(&self) -> bool {
        self.0.equal
    }

    #[getter]
    fn elapsed_ms(&self) -> u64 {
        self.0.elapsed_ms
    }

    /// `(name, pass, detail)` per check.
    #[getter]
    fn checks(&self) -> Vec<(String, bool, String)> {
        self.0.checks.iter().map(|c| (c.name.clone(), c.pass, c.detail.clone())).collect()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.params.m
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.params.n
    }

    #[getter]
    fn d(&self) -> Option<usize> {
        self.0.params.d
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s).map(PyReport).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __bool__(&self) -> bool {
        self.0.equal
    }

    fn __repr__(&self) -> String {
        format!(
            "DualityReport(theorem={:?}, lhs_dim={}, rhs_dim={}, equal={})",
            self.0.theorem, self.0.lhs_dim, self.0.rhs_dim, self.0.equal
        )
    }
}

fn report(r: superdual::Result<DualityReport>) -> PyResult<PyReport> {
    r.map(PyReport).map_err(to_py)
}

/// Operators `x_1..x_d` and `s_1..s_{d-1}` on `V^{⊗d}`, relations already checked.
#[pyclass(name = "HeckeOperators", frozen)]
struct PyHecke(HeckeOperatorSet);

#[pymethods]
impl PyHecke {
    #[new]
    fn new(m: usize, n: usize, d: usize, c: &PyCharVector) -> PyResult<Self> {
        let p = Pyramid::new(m, n).map_err(to_py)?;
        HeckeOperatorSet::new(p, d, c.0.clone()).map(PyHecke).map_err(to_py)
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.x(1).rows()
    }

    fn x(&self, i: usize) -> PyResult<Triplets> {
        if i == 0 || i > self.0.d {
            return Err(PyValueError::new_err(format!("x_{i} needs 1 <= i <= {}", self.0.d)));
        }
        Ok(triplets(self.0.x(i)))
    }

    fn s(&self, j: usize) -> PyResult<Triplets> {
        if j == 0 || j >= self.0.d {
            return Err(PyValueError::new_err(format!("s_{j} needs 1 <= j < {}", self.0.d)));
        }
        Ok(triplets(self.0.s(j)))
    }

    /// `(name, pass, max |defect|)` for every defining relation.
    fn relations(&self) -> Vec<(String, bool, String)> {
        hecke::check_daha_relations(&self.0).into_iter().map(|r| (r.name, r.pass, r.max_norm.to_string())).collect()
    }

    /// `(minimal, expected)` polynomials of `x_1` as strings.
    fn cyclotomic(&self) -> (String, String, bool) {
        let c = hecke::cyclotomic_minpoly(&self.0);
        (c.minimal.to_string(), c.expected.to_string(), c.matches)
    }
}

#[pyfunction]
#[pyo3(signature = (m, n, d, size_cap = DEFAULT_SIZE_CAP))]
fn verify_sergeev(m: usize, n: usize, d: usize, size_cap: usize) -> PyResult<PyReport> {
    report(duality::verify_sergeev(m, n, d, size_cap))
}

/// `partitions` is written `λ|μ`, e.g. `"1|2,1"`.
#[pyfunction]
#[pyo3(signature = (m, n, d, partitions, size_cap = DEFAULT_SIZE_CAP))]
fn verify_vust(m: usize, n: usize, d: usize, partitions: &str, size_cap: usize) -> PyResult<PyReport> {
    let e = NilpotentData::parse(partitions, m, n).map_err(to_py)?;
    report(duality::verify_vust(m, n, d, &e, size_cap))
}

#[pyfunction]
#[pyo3(signature = (m, n, d, size_cap = DEFAULT_SIZE_CAP))]
fn verify_trunc_poly(m: usize, n: usize, d: usize, size_cap: usize) -> PyResult<PyReport> {
    report(duality::verify_trunc_poly_dc(m, n, d, size_cap))
}

#[pyfunction]
#[pyo3(signature = (m, n, d, c, max_kazhdan = 4, size_cap = DEFAULT_SIZE_CAP))]
fn verify_hecke_dc(
    m: usize,
    n: usize,
    d: usize,
    c: &PyCharVector,
    max_kazhdan: i64,
    size_cap: usize,
) -> PyResult<PyReport> {
    report(duality::verify_hecke_dc(m, n, d, &c.0, max_kazhdan, size_cap))
}

#[pyfunction]
#[pyo3(signature = (m, n, d, c, size_cap = DEFAULT_SIZE_CAP))]
fn verify_filtration(m: usize, n: usize, d: usize, c: &PyCharVector, size_cap: usize) -> PyResult<PyReport> {
    report(duality::filtration_consistency(m, n, d, &c.0, size_cap))
}

#[pyfunction]
#[pyo3(signature = (m, n, d, c, size_cap = DEFAULT_SIZE_CAP))]
fn verify_hecke_relations(m: usize, n: usize, d: usize, c: &PyCharVector, size_cap: usize) -> PyResult<PyReport> {
    report(cli::hecke_relations_report(m, n, d, &c.0, size_cap))
}

#[pyfunction]
#[pyo3(signature = (m, n, d, c, size_cap = DEFAULT_SIZE_CAP))]
fn verify_cyclotomic(m: usize, n: usize, d: usize, c: &PyCharVector, size_cap: usize) -> PyResult<PyReport> {
    report(cli::cyclotomic_report(m, n, d, &c.0, size_cap))
}

#[pyfunction]
fn verify_centralizer(m: usize, n: usize) -> PyResult<PyReport> {
    report(cli::centralizer_report(m, n))
}

#[pyfunction]
#[pyo3(signature = (m, n, d, size_cap = DEFAULT_SIZE_CAP))]
fn verify_theta(m: usize, n: usize, d: usize, size_cap: usize) -> PyResult<PyReport> {
    report(cli::theta_report(m, n, d, size_cap))
}

#[pyfunction]
#[pyo3(signature = (m, n, d, seed = 0, trials = 20, size_cap = DEFAULT_SIZE_CAP))]
fn verify_theta_sigma(m: usize, n: usize, d: usize, seed: u64, trials: u64, size_cap: usize) -> PyResult<PyReport> {
    report(cli::theta_sigma_report(m, n, d, seed, trials, size_cap))
}

#[pyfunction]
#[pyo3(signature = (m, n, max_kazhdan = 6))]
fn wchi_discover(m: usize, n: usize, max_kazhdan: i64) -> PyResult<PyReport> {
    report(cli::wchi_discover_report(m, n, max_kazhdan))
}

#[pyfunction]
#[pyo3(signature = (m, n, max_kazhdan = 6))]
fn wchi_hilbert(m: usize, n: usize, max_kazhdan: i64) -> PyResult<PyReport> {
    report(cli::wchi_hilbert_report(m, n, max_kazhdan))
}

/// All `(m, n, d)` with `1 <= m <= n` and `(m+n)^d <= cap`.
#[pyfunction]
#[pyo3(signature = (cap = DEFAULT_SIZE_CAP))]
fn sergeev_grid(cap: usize) -> Vec<(usize, usize, usize)> {
    duality::sergeev_grid(cap)
}

/// Runs the command line tool in process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let out = py.detach(|| cli::run(std::iter::once("superdual".to_string()).chain(args)));
    (out.code, out.stdout, out.stderr)
}

#[pymodule(name = "superdual")]
fn superdual_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCharVector>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyHecke>()?;
    m.add_function(wrap_pyfunction!(verify_sergeev, m)?)?;
    m.add_function(wrap_pyfunction!(verify_vust, m)?)?;
    m.add_function(wrap_pyfunction!(verify_trunc_poly, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hecke_dc, m)?)?;
    m.add_function(wrap_pyfunction!(verify_filtration, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hecke_relations, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_centralizer, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theta, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theta_sigma, m)?)?;
    m.add_function(wrap_pyfunction!(wchi_discover, m)?)?;
    m.add_function(wrap_pyfunction!(wchi_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(sergeev_grid, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("EXIT_PASS", cli::EXIT_PASS)?;
    m.add("EXIT_FAIL", cli::EXIT_FAIL)?;
    m.add("EXIT_USAGE", cli::EXIT_USAGE)?;
    m.add("EXIT_CAP", cli::EXIT_CAP)?;
    Ok(())
}
