//! Python module `gmverify`. Reports come back as plain dicts and lists.

use gm_core::decomposition::{self, Certificate, DecomposeMode};
use gm_core::dirichlet::{self, VertexPair};
use gm_core::graph::{self as core_graph, Family};
use gm_core::partition::{self, Partition, RealSeq, DEFAULT_TOLERANCE};
use gm_core::{enumeration, gm, graph6, spectra};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: gm_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Round-trips a serializable value through JSON into Python objects.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn mode(name: &str) -> PyResult<DecomposeMode> {
    name.parse().map_err(err)
}

#[pyclass(name = "Graph", eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: core_graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core_graph::Graph::from_edges(n, &edges).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        graph6::parse_graph6(text).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        core_graph::parse_edge_list(text).map(|inner| PyGraph { inner }).map_err(err)
    }

    /// `path`, `cycle`, `complete`, `star` or `empty`.
    #[staticmethod]
    fn family(name: &str, n: usize) -> PyResult<Self> {
        let kind: Family = name.parse().map_err(err)?;
        core_graph::standard_family(kind, n).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed = 0))]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        core_graph::random_graph(n, p, seed).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[staticmethod]
    fn threshold(creation: Vec<u8>) -> PyResult<Self> {
        core_graph::threshold_graph(&creation).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_prufer(seq: Vec<usize>) -> PyResult<Self> {
        core_graph::tree_from_prufer(&seq).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn graph6(&self) -> String {
        graph6::write_graph6(&self.inner)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn add_edge(&mut self, i: usize, j: usize) -> PyResult<()> {
        self.inner.add_edge(i, j).map_err(err)
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn degree_sequence(&self) -> Vec<usize> {
        self.inner.degree_sequence().into_vec()
    }

    fn conjugate_degrees(&self) -> Vec<usize> {
        self.inner.conjugate_degrees().into_vec()
    }

    fn laplacian(&self) -> Vec<Vec<i64>> {
        self.inner.laplacian().to_rows()
    }

    fn spectrum(&self) -> Vec<f64> {
        spectra::laplacian_spectrum(&self.inner).values
    }

    fn complement(&self) -> Self {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    fn is_threshold(&self) -> bool {
        self.inner.is_threshold()
    }

    fn is_tree(&self) -> bool {
        self.inner.is_tree()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __repr__(&self) -> String {
        format!("Graph.from_graph6({:?})", self.graph6())
    }
}

fn wrap(graphs: Vec<core_graph::Graph>) -> Vec<PyGraph> {
    graphs.into_iter().map(|inner| PyGraph { inner }).collect()
}

/// Conjugate partition `p^T(j) = #{i : p_i >= j}`.
#[pyfunction]
fn conjugate(parts: Vec<usize>) -> Vec<usize> {
    Partition::from_unsorted(parts).conjugate().into_vec()
}

/// Whether `s ⊴ t`; both are sorted non-increasing first.
#[pyfunction]
#[pyo3(signature = (t, s, tol = DEFAULT_TOLERANCE))]
fn majorizes(t: Vec<f64>, s: Vec<f64>, tol: f64) -> PyResult<bool> {
    let sort = |v: Vec<f64>| partition::sort_desc(&RealSeq::new(v));
    partition::majorizes(&sort(t), &sort(s), tol).map(|v| v.holds).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, tol = DEFAULT_TOLERANCE))]
fn gm_check(py: Python<'_>, g: &PyGraph, tol: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &gm::gm_check(&g.inner, tol))
}

/// First qualifying cut as a dict, or `None`.
#[pyfunction]
#[pyo3(signature = (g, mode = "theorem", tol = DEFAULT_TOLERANCE))]
fn decompose_search(py: Python<'_>, g: &PyGraph, mode: &str, tol: f64) -> PyResult<Option<Py<PyAny>>> {
    #[derive(Serialize)]
    struct Found {
        #[serde(rename = "VA")]
        va: u64,
        a: Vec<usize>,
        b: Vec<usize>,
        hypotheses: decomposition::HypothesisReport,
    }
    match decomposition::decompose_search(&g.inner, self::mode(mode)?, tol) {
        Some((cut, hypotheses)) => {
            let found = Found {
                va: cut.mask(),
                a: cut.side_a(),
                b: cut.side_b(),
                hypotheses,
            };
            to_py(py, &found).map(Some)
        }
        None => Ok(None),
    }
}

#[pyfunction]
fn tree_certificate(py: Python<'_>, g: &PyGraph) -> PyResult<Py<PyAny>> {
    to_py(py, &decomposition::tree_certificate(&g.inner).map_err(err)?)
}

/// Accepts a certificate dict or its JSON text.
#[pyfunction]
#[pyo3(signature = (cert, tol = DEFAULT_TOLERANCE))]
fn verify_certificate(py: Python<'_>, cert: &Bound<'_, PyAny>, tol: f64) -> PyResult<bool> {
    let text: String = match cert.extract::<String>() {
        Ok(s) => s,
        Err(_) => py.import("json")?.call_method1("dumps", (cert,))?.extract()?,
    };
    let cert = Certificate::from_json(&text).map_err(err)?;
    decomposition::verify_certificate(&cert, tol).map_err(err)
}

fn pair(g: &PyGraph, deleted: Vec<usize>) -> PyResult<VertexPair> {
    VertexPair::from_vertices(g.inner.clone(), &deleted).map_err(err)
}

/// Reduction chain for `(G, D)` with `D` a list of 0-based vertices.
#[pyfunction]
#[pyo3(signature = (g, deleted, tol = DEFAULT_TOLERANCE))]
fn reduction_chain(py: Python<'_>, g: &PyGraph, deleted: Vec<usize>, tol: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &dirichlet::reduction_chain_check(&pair(g, deleted)?, tol).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, deleted, tol = DEFAULT_TOLERANCE))]
fn pair_gm_check(py: Python<'_>, g: &PyGraph, deleted: Vec<usize>, tol: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &dirichlet::pair_gm_check(&pair(g, deleted)?, tol).map_err(err)?)
}

#[pyfunction]
fn pair_degrees(g: &PyGraph, deleted: Vec<usize>) -> PyResult<Vec<usize>> {
    Ok(dirichlet::pair_degrees(&pair(g, deleted)?))
}

/// One representative per isomorphism class on `n <= 8` vertices.
#[pyfunction]
fn all_graphs(n: usize) -> PyResult<Vec<PyGraph>> {
    enumeration::all_graphs(n).map(wrap).map_err(err)
}

#[pyfunction]
fn all_trees(n: usize) -> PyResult<Vec<PyGraph>> {
    enumeration::all_trees(n).map(wrap).map_err(err)
}

/// Census summary with per-class `rows`.
#[pyfunction]
#[pyo3(signature = (n = 6, mode = "theorem", workers = 1, tol = DEFAULT_TOLERANCE))]
fn census(py: Python<'_>, n: usize, mode: &str, workers: usize, tol: f64) -> PyResult<Py<PyAny>> {
    let m = self::mode(mode)?;
    let report = py.detach(|| decomposition::census(n, m, tol, workers)).map_err(err)?;
    let out = to_py(py, &report)?;
    out.bind(py).set_item("rows", to_py(py, &report.rows)?)?;
    Ok(out)
}

#[pymodule]
fn gmverify(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("DEFAULT_TOLERANCE", DEFAULT_TOLERANCE)?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes, m)?)?;
    m.add_function(wrap_pyfunction!(gm_check, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_search, m)?)?;
    m.add_function(wrap_pyfunction!(tree_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_chain, m)?)?;
    m.add_function(wrap_pyfunction!(pair_gm_check, m)?)?;
    m.add_function(wrap_pyfunction!(pair_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(all_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(all_trees, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
