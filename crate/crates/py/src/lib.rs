//! Python bindings: meshes, seeds, moves, sparsity, girth, rigidity and
//! model towers. Structured results come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;
use serde::Serialize;
use srs_core::mesh::{io, SurfaceMesh};
use srs_core::model::{self, TreeSpec};
use srs_core::moves::{self, MoveLog, MoveRecord};
use srs_core::{girth, rigidity, seeds, sparsity};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hand a serializable value to Python through `json.loads`.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A triangulated surface with holes.
#[pyclass(name = "Mesh", module = "srs_py", skip_from_py_object)]
#[derive(Clone)]
struct PyMesh {
    inner: SurfaceMesh,
}

impl From<SurfaceMesh> for PyMesh {
    fn from(inner: SurfaceMesh) -> Self {
        PyMesh { inner }
    }
}

#[pymethods]
impl PyMesh {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::from_json(text).map(Self::from).map_err(value_error)
    }

    fn to_json(&self) -> String {
        io::to_json(&self.inner)
    }

    fn to_dot(&self) -> String {
        io::to_dot(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn maxwell(&self) -> i64 {
        self.inner.maxwell_count()
    }

    fn hole_lengths(&self) -> Vec<usize> {
        self.inner.hole_lengths()
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.graph().edge_pairs()
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let inv = self.inner.invariants().map_err(value_error)?;
        to_py(py, &inv)
    }

    /// Apply one move given as a `moves/1` record (JSON object).
    fn apply(&self, record: &str) -> PyResult<Self> {
        let record: MoveRecord = serde_json::from_str(record).map_err(value_error)?;
        moves::apply(&self.inner, &record).map(Self::from).map_err(value_error)
    }

    /// Apply a `moves/1` log.
    fn replay(&self, log: &str) -> PyResult<Self> {
        let log = MoveLog::from_json(log).map_err(value_error)?;
        moves::replay(&self.inner, &log.moves).map(Self::from).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "Mesh(vertices={}, edges={}, holes={:?})",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.hole_lengths()
        )
    }
}

/// Built-in meshes: disc, octahedron, discus-R, projective-seed, torus-seed,
/// projective-core, torus-core, violating-join.
#[pyfunction]
fn seed(name: &str) -> PyResult<PyMesh> {
    let mesh = match name {
        "disc" => seeds::disc(),
        "octahedron" => seeds::octahedron(),
        "projective-seed" => seeds::projective_seed(),
        "torus-seed" => seeds::torus_seed(),
        "projective-core" => seeds::projective_core(),
        "torus-core" => seeds::torus_core(),
        "violating-join" => seeds::violating_join(),
        other => {
            let r = other
                .strip_prefix("discus-")
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| value_error(format!("unknown seed {other:?}")))?;
            seeds::discus_mesh(r).map_err(value_error)?
        }
    };
    Ok(mesh.into())
}

/// Two-holed piece of a surface ("S0", "S1" or "P") with the given entrance.
#[pyfunction]
fn piece(surface: &str, entrance: usize) -> PyResult<PyMesh> {
    let surface = surface.parse().map_err(value_error)?;
    let p = seeds::piece(surface, entrance).map_err(value_error)?;
    Ok(p.mesh.into())
}

/// Sparsity verdict; `method` is "exhaustive", "flow" or None for automatic.
#[pyfunction]
#[pyo3(signature = (mesh, method=None))]
fn check_tight<'py>(py: Python<'py>, mesh: &PyMesh, method: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let g = mesh.inner.graph();
    let verdict = match method {
        Some("exhaustive") => sparsity::check_exhaustive(&g).map_err(value_error)?,
        Some("flow") => sparsity::check_flow(&g),
        None => sparsity::check(&g),
        Some(other) => return Err(value_error(format!("unknown method {other:?}"))),
    };
    to_py(py, &verdict)
}

#[pyfunction]
fn check_girth<'py>(py: Python<'py>, mesh: &PyMesh) -> PyResult<Bound<'py, PyAny>> {
    let verdict = girth::check_girth(&mesh.inner).map_err(value_error)?;
    to_py(py, &verdict)
}

#[pyfunction]
#[pyo3(signature = (mesh, seed=rigidity::DEFAULT_SEED, trials=rigidity::DEFAULT_TRIALS))]
fn rank<'py>(py: Python<'py>, mesh: &PyMesh, seed: u64, trials: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &rigidity::generic_rank(&mesh.inner.graph(), seed, trials))
}

#[pyfunction]
#[pyo3(signature = (mesh, seed=rigidity::DEFAULT_SEED, trials=rigidity::DEFAULT_TRIALS))]
fn is_min_3rigid<'py>(py: Python<'py>, mesh: &PyMesh, seed: u64, trials: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &rigidity::is_min_3rigid(&mesh.inner.graph(), seed, trials))
}

/// Repair an `f = 6` mesh; returns the new mesh and a summary dict.
#[pyfunction]
#[pyo3(signature = (mesh, max_moves=10_000))]
fn repair<'py>(py: Python<'py>, mesh: &PyMesh, max_moves: usize) -> PyResult<(PyMesh, Bound<'py, PyAny>)> {
    let out = girth::repair(&mesh.inner, max_moves).map_err(value_error)?;
    let summary = serde_json::json!({
        "success": out.success,
        "moves": out.log.len(),
        "maxwell_trace": out.maxwell_trace,
        "delta_trace": out.delta_trace,
        "log": MoveLog::new(out.log),
    });
    Ok((out.mesh.into(), to_py(py, &summary)?))
}

/// Invariants of a `tree-spec/1` document.
#[pyfunction]
fn classify<'py>(py: Python<'py>, spec: &str) -> PyResult<Bound<'py, PyAny>> {
    let spec = TreeSpec::from_json(spec).map_err(value_error)?;
    to_py(py, &model::classify(&spec))
}

/// Tower stages `G_0..G_depth` for a `tree-spec/1` document.
#[pyfunction]
fn build_tower<'py>(py: Python<'py>, spec: &str, depth: usize) -> PyResult<Bound<'py, PyList>> {
    let spec = TreeSpec::from_json(spec).map_err(value_error)?;
    let tower = model::build_tower(&spec, depth).map_err(value_error)?;
    PyList::new(py, tower.stages.into_iter().map(|s| PyMesh::from(s.mesh)))
}

#[pyfunction]
fn schwarz_block(m: usize) -> PyResult<PyMesh> {
    model::schwarz_block_join(m).map(|b| b.mesh.into()).map_err(value_error)
}

#[pymodule]
fn srs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMesh>()?;
    m.add_function(wrap_pyfunction!(seed, m)?)?;
    m.add_function(wrap_pyfunction!(piece, m)?)?;
    m.add_function(wrap_pyfunction!(check_tight, m)?)?;
    m.add_function(wrap_pyfunction!(check_girth, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(is_min_3rigid, m)?)?;
    m.add_function(wrap_pyfunction!(repair, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(build_tower, m)?)?;
    m.add_function(wrap_pyfunction!(schwarz_block, m)?)?;
    Ok(())
}
