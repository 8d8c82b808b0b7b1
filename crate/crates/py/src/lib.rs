//! Python bindings for `fknot`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fknot::diagram::Kink;
use fknot::locsys::{orbifold_from, scan_levels, DEFAULT_BUDGET};
use fknot::{
    alexander_from_matrix, count_invertible_modules, count_torsors, dehn_matrix, dehn_presentation, fox_alexander,
    mirror, parse_pd, smith_normal_form, wirtinger_presentation, Error, GroupFamily, GroupSpec, IntMatrix,
};

create_exception!(fknot_py, FknotError, PyValueError, "Error raised by the knot pipeline.");

fn py_err(e: Error) -> PyErr {
    FknotError::new_err(format!("{}: {}", e.kind(), e.detail()))
}

#[pyclass(name = "Diagram", module = "fknot_py", frozen)]
struct PyDiagram {
    inner: fknot::Diagram,
}

#[pyclass(name = "ModuleCount", module = "fknot_py", frozen, get_all)]
struct PyModuleCount {
    q: BigInt,
    delta_q: BigInt,
    count: BigInt,
    p_divides_c0: bool,
    elementary_divisors: Vec<BigInt>,
}

#[pymethods]
impl PyModuleCount {
    fn __repr__(&self) -> String {
        format!(
            "ModuleCount(q={}, delta_q={}, count={}, p_divides_c0={})",
            self.q,
            self.delta_q,
            self.count,
            if self.p_divides_c0 { "True" } else { "False" }
        )
    }
}

#[pyclass(name = "Enumeration", module = "fknot_py", frozen, get_all)]
struct PyEnumeration {
    /// `None` when the scan did not stabilize.
    stable_count: Option<u64>,
    stable_levels: Option<(u32, u32)>,
    /// `(level, classes)` per scanned level.
    levels: Vec<(u32, u64)>,
    automorphism_order: Option<u64>,
    /// Orbifold count as `(numerator, denominator)`, when stable.
    orbifold: Option<(BigInt, BigInt)>,
}

#[pyclass(name = "TorsorCount", module = "fknot_py", frozen, get_all)]
struct PyTorsorCount {
    group_order: u64,
    fixed_group_order: u64,
    unknowns: usize,
    equations: Vec<String>,
    solutions: u64,
    classes: u64,
    stabilizer_orders: Vec<u64>,
}

#[pymethods]
impl PyDiagram {
    #[new]
    fn new(pd: &str) -> PyResult<Self> {
        parse_pd(pd).map(|inner| PyDiagram { inner }).map_err(py_err)
    }

    #[staticmethod]
    fn unknot() -> Self {
        PyDiagram { inner: fknot::Diagram::unknot() }
    }

    #[getter]
    fn pd(&self) -> String {
        self.inner.pd_string()
    }

    #[getter]
    fn crossing_count(&self) -> usize {
        self.inner.crossing_count()
    }

    #[getter]
    fn writhe(&self) -> i64 {
        self.inner.writhe()
    }

    #[getter]
    fn signs(&self) -> Vec<i64> {
        self.inner.signs()
    }

    fn mirror(&self) -> Self {
        PyDiagram { inner: mirror(&self.inner) }
    }

    /// Adds a curl on `edge` (0-based). `kind` is one of `under-left`,
    /// `under-right`, `over-left`, `over-right`.
    fn with_kink(&self, edge: usize, kind: &str) -> PyResult<Self> {
        let k = match kind {
            "under-left" => Kink::UnderLeft,
            "under-right" => Kink::UnderRight,
            "over-left" => Kink::OverLeft,
            "over-right" => Kink::OverRight,
            _ => return Err(PyValueError::new_err(format!("unknown kink kind {kind:?}"))),
        };
        self.inner.with_kink(edge, k).map(|inner| PyDiagram { inner }).map_err(py_err)
    }

    /// Normalized Alexander coefficients `c_0..c_n`.
    #[pyo3(signature = (method = "dehn"))]
    fn alexander(&self, method: &str) -> PyResult<Vec<BigInt>> {
        let poly = match method {
            "dehn" => dehn_presentation(&self.inner).and_then(|p| alexander_from_matrix(&dehn_matrix(&p))),
            "fox" => fox_alexander(&wirtinger_presentation(&self.inner)),
            _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
        };
        poly.map(|p| p.coeffs().to_vec()).map_err(py_err)
    }

    #[pyo3(signature = (p, nu = 1))]
    fn count(&self, p: u64, nu: u32) -> PyResult<PyModuleCount> {
        let c = count_invertible_modules(&self.inner, p, nu).map_err(py_err)?;
        Ok(PyModuleCount {
            q: c.q,
            delta_q: c.delta_q,
            count: c.count,
            p_divides_c0: c.p_divides_c0,
            elementary_divisors: c.elementary_divisors,
        })
    }

    /// Enumeration oracle over levels `nu, 2 nu, ..` up to `cap` (default `12 nu`).
    #[pyo3(signature = (p, nu = 1, cap = None, budget = None))]
    fn enumerate(&self, py: Python<'_>, p: u64, nu: u32, cap: Option<u32>, budget: Option<u64>) -> PyResult<PyEnumeration> {
        let d = self.inner.clone();
        let s = py
            .detach(move || scan_levels(&d, p, nu, cap.unwrap_or(12 * nu), budget.unwrap_or(DEFAULT_BUDGET)))
            .map_err(py_err)?;
        let orbifold = match s.stable_levels {
            Some(_) => {
                let o = orbifold_from(&s).map_err(py_err)?;
                Some((o.num, o.den))
            }
            None => None,
        };
        Ok(PyEnumeration {
            stable_count: s.stable_count(),
            stable_levels: s.stable_levels,
            levels: s.levels.iter().map(|l| (l.level, l.classes)).collect(),
            automorphism_order: s.automorphism_order,
            orbifold,
        })
    }

    #[pyo3(signature = (p, level, group = "gl1", nu = 1, budget = None))]
    fn torsor(&self, p: u64, level: u32, group: &str, nu: u32, budget: Option<u64>) -> PyResult<PyTorsorCount> {
        let family = match group {
            "gl1" => GroupFamily::GL1,
            "gl2" => GroupFamily::GL2,
            _ => return Err(PyValueError::new_err(format!("unknown group {group:?}"))),
        };
        let spec = GroupSpec { family, p, level };
        let c = count_torsors(&self.inner, &spec, nu, budget.unwrap_or(DEFAULT_BUDGET)).map_err(py_err)?;
        Ok(PyTorsorCount {
            group_order: c.group_order,
            fixed_group_order: c.fixed_group_order,
            unknowns: c.unknowns,
            equations: c.equations,
            solutions: c.solutions,
            classes: c.classes,
            stabilizer_orders: c.orbits.iter().map(|o| o.stabilizer_order).collect(),
        })
    }

    fn __repr__(&self) -> String {
        format!("Diagram({:?})", self.inner.pd_string())
    }
}

#[pyfunction]
fn parse(pd: &str) -> PyResult<PyDiagram> {
    PyDiagram::new(pd)
}

/// Elementary divisors of an integer matrix given as a list of rows.
#[pyfunction]
fn elementary_divisors(rows: Vec<Vec<i64>>) -> PyResult<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    Ok(smith_normal_form(&IntMatrix::from_i64_rows(&rows)).divisors().to_vec())
}

/// Bundled corpus as `(name, knot, pd, expected)` tuples.
#[pyfunction]
fn corpus() -> Vec<(String, String, String, Vec<i64>)> {
    fknot::corpus::corpus().into_iter().map(|e| (e.name, e.knot, e.pd, e.expected)).collect()
}

/// Runs the command-line front end; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (args, budget_env = None))]
fn run_cli(py: Python<'_>, args: Vec<String>, budget_env: Option<String>) -> (i32, String, String) {
    let mut argv = vec!["fknot".to_string()];
    argv.extend(args);
    let out = py.detach(move || fknot::cli::run(&argv, budget_env.as_deref()));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn fknot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyModuleCount>()?;
    m.add_class::<PyEnumeration>()?;
    m.add_class::<PyTorsorCount>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(elementary_divisors, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("FknotError", m.py().get_type::<FknotError>())?;
    Ok(())
}
