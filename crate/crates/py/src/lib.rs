//! Python bindings.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use cfrs_core::branching::DEFAULT_BUDGET;
use cfrs_core::containment::build_containment;
use cfrs_core::dag::Dag;
use cfrs_core::instances::{self, CubicGraph};
use cfrs_core::io;
use cfrs_core::matrix::{self, Verdict};
use cfrs_core::poset::{self, WeightFn};
use cfrs_core::solvers::{self, Method};

create_exception!(cfrs, BudgetExceeded, PyException);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Binary matrix without all-zero rows or columns.
#[pyclass(name = "Matrix", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix(matrix::BinaryMatrix);

#[pymethods]
impl PyMatrix {
    /// Builds a matrix from rows written as strings over "01".
    #[new]
    fn new(rows: Vec<String>) -> PyResult<Self> {
        matrix::BinaryMatrix::from_strs(&rows).map(Self).map_err(value_error)
    }

    /// Parses the "m n" header format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_matrix(text).map(Self).map_err(value_error)
    }

    fn to_text(&self) -> String {
        io::write_matrix(&self.0)
    }

    #[getter]
    fn rows(&self) -> usize {
        self.0.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.0.cols()
    }

    fn row_strings(&self) -> Vec<String> {
        self.0.row_strings()
    }

    /// First conflict as `(col_i, col_j, (r, r1, r2))`, 0-based, or None.
    fn find_conflict(&self) -> Option<(usize, usize, (usize, usize, usize))> {
        matrix::find_conflict(&self.0).map(|w| (w.col_i, w.col_j, w.rows))
    }

    fn is_conflict_free(&self) -> bool {
        matrix::is_conflict_free(&self.0)
    }

    fn is_laminar(&self) -> bool {
        matrix::is_laminar(&self.0)
    }

    /// `(m, n, k, height, width)` of the containment digraph.
    fn stats(&self) -> (usize, usize, usize, usize, usize) {
        let d = build_containment(&self.0);
        (self.0.rows(), self.0.cols(), d.vertex_count(), d.height(), d.width())
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?})", self.0.row_strings())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0.row_strings() == other.0.row_strings()
    }
}

/// A split matrix and, per source row, the indices of its split rows.
#[pyclass(name = "RowSplit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRowSplit(matrix::RowSplit);

#[pymethods]
impl PyRowSplit {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        io::parse_split(text).map(Self).map_err(value_error)
    }

    fn to_text(&self) -> String {
        io::write_split(&self.0)
    }

    #[getter]
    fn matrix(&self) -> PyMatrix {
        PyMatrix(self.0.split.clone())
    }

    #[getter]
    fn groups(&self) -> Vec<Vec<usize>> {
        self.0.groups.clone()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.0.rows()
    }

    #[getter]
    fn distinct_rows(&self) -> usize {
        self.0.distinct_rows()
    }
}

#[pyclass(name = "SolveReport", frozen, get_all)]
struct PySolveReport {
    method: String,
    m: usize,
    n: usize,
    k: usize,
    height: usize,
    width: usize,
    rows: usize,
    distinct_rows: usize,
    beta_lower_bound: Option<usize>,
    linear_lower_bound: Option<u64>,
    elapsed_ms: f64,
}

impl From<solvers::SolveReport> for PySolveReport {
    fn from(r: solvers::SolveReport) -> Self {
        Self {
            method: r.method.name().to_string(),
            m: r.m,
            n: r.n,
            k: r.k,
            height: r.height,
            width: r.width,
            rows: r.rows,
            distinct_rows: r.distinct_rows,
            beta_lower_bound: r.beta_lower_bound,
            linear_lower_bound: r.linear_lower_bound,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// Runs one of the methods "exact-rows", "exact-distinct", "linear",
/// "height", "width" or "distinct-2".
#[pyfunction]
#[pyo3(signature = (matrix, method, budget = DEFAULT_BUDGET))]
fn solve(matrix: &PyMatrix, method: &str, budget: u64) -> PyResult<(PyRowSplit, PySolveReport)> {
    let method: Method = method.parse().map_err(PyValueError::new_err)?;
    match solvers::solve(&matrix.0, method, budget) {
        Ok((split, report)) => Ok((PyRowSplit(split), report.into())),
        Err(e) if e.is_budget_exceeded() => Err(BudgetExceeded::new_err(e.to_string())),
        Err(e) => Err(value_error(e)),
    }
}

/// Returns `(True, None)` on acceptance, `(False, reason)` otherwise.
#[pyfunction]
fn verify(matrix: &PyMatrix, split: &PyRowSplit) -> PyResult<(bool, Option<String>)> {
    Ok(match matrix::verify_row_split(&matrix.0, &split.0, true).map_err(value_error)? {
        Verdict::Accept => (true, None),
        Verdict::Reject(reason) => (false, Some(reason.to_string())),
    })
}

type Partition = (Vec<Vec<usize>>, Vec<Vec<usize>>, u64);

/// Minimum-price chain partition of a DAG under monotone weights.
/// Returns `(chains, tower_levels, price)`.
#[pyfunction]
fn min_price_chain_partition(
    n: usize,
    arcs: Vec<(usize, usize)>,
    weights: Vec<u64>,
) -> PyResult<Partition> {
    let dag = Dag::new(n, arcs).map_err(value_error)?;
    let weights = WeightFn(weights);
    let (partition, tower) = poset::min_price_chain_partition(&dag, &weights).map_err(value_error)?;
    let price = partition.price(&weights);
    let chains = partition.chains.into_iter().map(|c| c.0).collect();
    let levels = tower.levels.into_iter().map(|a| a.0).collect();
    Ok((chains, levels, price))
}

#[pyfunction]
fn gen_md(d: usize, h: usize) -> PyResult<PyMatrix> {
    instances::gen_md(d, h).map(PyMatrix).map_err(value_error)
}

#[pyfunction]
fn gen_random(rows: usize, cols: usize, density: f64, seed: u64) -> PyResult<PyMatrix> {
    instances::gen_random(rows, cols, density, seed).map(PyMatrix).map_err(value_error)
}

#[pyfunction]
fn gen_random_laminar(rows: usize, k: usize, seed: u64) -> PyResult<PyMatrix> {
    instances::gen_random_laminar(rows, k, seed).map(PyMatrix).map_err(value_error)
}

fn cubic(edges: Vec<(usize, usize)>) -> PyResult<CubicGraph> {
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    CubicGraph::new(n, edges).map_err(value_error)
}

#[pyfunction]
fn gen_vc_reduction(edges: Vec<(usize, usize)>) -> PyResult<PyMatrix> {
    instances::gen_vc_reduction(&cubic(edges)?).map(PyMatrix).map_err(value_error)
}

#[pyfunction]
fn gen_ib_reduction(edges: Vec<(usize, usize)>) -> PyResult<PyMatrix> {
    instances::gen_ib_reduction(&cubic(edges)?).map(PyMatrix).map_err(value_error)
}

#[pymodule]
fn cfrs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyRowSplit>()?;
    m.add_class::<PySolveReport>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(min_price_chain_partition, m)?)?;
    m.add_function(wrap_pyfunction!(gen_md, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_laminar, m)?)?;
    m.add_function(wrap_pyfunction!(gen_vc_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(gen_ib_reduction, m)?)?;
    Ok(())
}
