//! Python bindings for the meandist toolkit.
//!
//! Build the cdylib and import it as `meandist_py` (see python/smoke_test.py
//! for a loader that works straight out of `cargo build`).

use meandist::bounds;
use meandist::discrete::mesh as dmesh;
use meandist::discrete::{generators, DiameterMode, DiscreteManifold};
use meandist::dumbbell::{self, CRule, DumbbellParams, SweepMode};
use meandist::model::{DumbbellPoint, ModelSpace, PointRef, Quantity};
use meandist::verify::{self, Tolerances};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn err(e: meandist::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn quantity_tuple(q: Quantity) -> (f64, String) {
    (q.value, q.provenance.label().to_string())
}

/// A closed-form model geometry.
#[pyclass]
struct Space {
    inner: ModelSpace,
}

/// Convert a Python point representation to a typed point:
/// float (circle), [x0,...,xn] (sphere), (x, y) (torus),
/// (radial, [dir...]) (balls), (region, a, b) (dumbbell).
fn to_point(space: &ModelSpace, obj: &Bound<'_, PyAny>) -> PyResult<PointRef> {
    let point = match space {
        ModelSpace::Circle { .. } => PointRef::Circle { arc: obj.extract()? },
        ModelSpace::Sphere { .. } => PointRef::Sphere { coords: obj.extract()? },
        ModelSpace::FlatTorus { .. } => {
            let (x, y) = obj.extract()?;
            PointRef::Torus { x, y }
        }
        ModelSpace::EuclideanBall { .. } | ModelSpace::HyperbolicBall { .. } => {
            let (radial, direction): (f64, Vec<f64>) = obj.extract()?;
            PointRef::Ball { radial, direction }
        }
        ModelSpace::Dumbbell { .. } => {
            let (region, a, b): (String, f64, f64) = obj.extract()?;
            let dp = match region.as_str() {
                "sphere" => DumbbellPoint::SpherePart { polar: a, azimuth: b },
                "cyl" | "cylinder" => DumbbellPoint::CylinderPart { depth: a, azimuth: b },
                "disk" => DumbbellPoint::DiskPart { radial: a, azimuth: b },
                other => {
                    return Err(PyValueError::new_err(format!(
                        "unknown dumbbell region '{other}'"
                    )))
                }
            };
            PointRef::Dumbbell(dp)
        }
    };
    space.check_point(&point).map_err(err)?;
    Ok(point)
}

#[pymethods]
impl Space {
    #[staticmethod]
    fn circle(length: f64) -> PyResult<Self> {
        Ok(Space { inner: ModelSpace::circle(length).map_err(err)? })
    }
    #[staticmethod]
    fn sphere(dim: u32, curvature: f64) -> PyResult<Self> {
        Ok(Space { inner: ModelSpace::sphere(dim, curvature).map_err(err)? })
    }
    #[staticmethod]
    fn flat_torus(side_a: f64, side_b: f64) -> PyResult<Self> {
        Ok(Space { inner: ModelSpace::flat_torus(side_a, side_b).map_err(err)? })
    }
    #[staticmethod]
    fn euclidean_ball(dim: u32, radius: f64) -> PyResult<Self> {
        Ok(Space { inner: ModelSpace::euclidean_ball(dim, radius).map_err(err)? })
    }
    #[staticmethod]
    fn hyperbolic_ball(dim: u32, radius: f64) -> PyResult<Self> {
        Ok(Space { inner: ModelSpace::hyperbolic_ball(dim, radius).map_err(err)? })
    }
    #[staticmethod]
    fn dumbbell(eps: f64, neck_length: f64) -> PyResult<Self> {
        Ok(Space { inner: ModelSpace::dumbbell(eps, neck_length).map_err(err)? })
    }

    fn describe(&self) -> String {
        self.inner.describe()
    }
    fn dim(&self) -> u32 {
        self.inner.dim()
    }
    /// (value, provenance)
    fn diameter(&self) -> (f64, String) {
        quantity_tuple(self.inner.diameter())
    }
    fn volume(&self) -> (f64, String) {
        quantity_tuple(self.inner.volume())
    }
    fn distance(&self, p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<f64> {
        let pp = to_point(&self.inner, p)?;
        let qq = to_point(&self.inner, q)?;
        self.inner.distance(&pp, &qq).map_err(err)
    }
    /// Exact f for circle/sphere/torus (point-independent by homogeneity).
    fn mean_distance(&self) -> PyResult<(f64, String)> {
        let q = self
            .inner
            .mean_distance_exact(&self.inner.base_point())
            .map_err(err)?;
        Ok(quantity_tuple(q))
    }
    /// f at the center of a Euclidean or hyperbolic ball.
    fn ball_mean_distance(&self) -> PyResult<(f64, String)> {
        Ok(quantity_tuple(self.inner.ball_mean_distance().map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Space({})", self.inner.describe())
    }
}

/// A weighted metric graph with geodesic distance fields.
#[pyclass]
struct Manifold {
    inner: DiscreteManifold,
}

#[pymethods]
impl Manifold {
    #[staticmethod]
    fn cycle(n: usize, total_length: f64) -> PyResult<Self> {
        Ok(Manifold { inner: generators::cycle(n, total_length).map_err(err)? })
    }
    #[staticmethod]
    fn torus_grid(n: usize, side_a: f64, side_b: f64) -> PyResult<Self> {
        Ok(Manifold { inner: generators::torus_grid(n, side_a, side_b).map_err(err)? })
    }
    #[staticmethod]
    fn icosphere(levels: usize) -> PyResult<Self> {
        Ok(Manifold { inner: generators::icosphere(levels).map_err(err)? })
    }
    /// Build the dumbbell mesh; returns (manifold, p, q).
    #[staticmethod]
    fn dumbbell(neck_length: f64, neck_circumference: f64) -> PyResult<(Self, usize, usize)> {
        let params =
            DumbbellParams::with_default_resolution(neck_length, neck_circumference).map_err(err)?;
        let built = dumbbell::build_mesh(&params).map_err(err)?;
        Ok((Manifold { inner: built.manifold }, built.p, built.q))
    }
    #[staticmethod]
    fn from_off(path: String) -> PyResult<Self> {
        let (mesh, _warnings) = dmesh::load_mesh(std::path::Path::new(&path)).map_err(err)?;
        Ok(Manifold { inner: dmesh::from_mesh(&mesh, path).map_err(err)? })
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }
    fn total_weight(&self) -> f64 {
        self.inner.total_weight()
    }
    fn dim_hint(&self) -> u32 {
        self.inner.dim_hint()
    }
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn distance_field(&self, source: usize) -> PyResult<Vec<f64>> {
        Ok(self.inner.distance_field(source).map_err(err)?.dist)
    }
    fn oracle_distance_field(&self, space: &Space, source: usize) -> PyResult<Vec<f64>> {
        Ok(self
            .inner
            .distance_oracle_field(&space.inner, source)
            .map_err(err)?
            .dist)
    }
    fn f_of(&self, source: usize) -> PyResult<f64> {
        self.inner.f_of(source).map_err(err)
    }
    fn oracle_f_of(&self, space: &Space, source: usize) -> PyResult<f64> {
        let field = self
            .inner
            .distance_oracle_field(&space.inner, source)
            .map_err(err)?;
        Ok(self.inner.functional(&field))
    }
    fn eccentricity(&self, source: usize) -> PyResult<f64> {
        self.inner.eccentricity(source).map_err(err)
    }
    /// (value, lower_bound_only)
    #[pyo3(signature = (exact = true, seeds = 16, seed = 0))]
    fn diameter(&self, exact: bool, seeds: usize, seed: u64) -> PyResult<(f64, bool)> {
        let mode = if exact {
            DiameterMode::Exact
        } else {
            DiameterMode::Sampled { seeds, seed }
        };
        let d = self.inner.diameter(mode).map_err(err)?;
        Ok((d.value, d.lower_bound_only))
    }
    /// (radii, cumulative volumes)
    fn ball_volume_profile(&self, source: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let p = self.inner.ball_volume_profile(source).map_err(err)?;
        Ok((p.radii, p.volumes))
    }
    fn radial_integral(&self, source: usize) -> PyResult<f64> {
        Ok(self.inner.ball_volume_profile(source).map_err(err)?.radial_integral())
    }
    #[pyo3(signature = (levels, project_to_sphere = false))]
    fn subdivide(&self, levels: usize, project_to_sphere: bool) -> PyResult<Self> {
        Ok(Manifold {
            inner: dmesh::subdivide(&self.inner, levels, project_to_sphere).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Manifold({}, {} vertices)",
            self.inner.label(),
            self.inner.vertex_count()
        )
    }
}

#[pyfunction]
fn c_compact(n: u32) -> f64 {
    bounds::c_compact(n)
}
#[pyfunction]
fn c_hadamard(n: u32) -> f64 {
    bounds::c_hadamard(n)
}
#[pyfunction]
fn c_noncompact(n: u32) -> f64 {
    bounds::c_noncompact(n)
}
#[pyfunction]
fn g_compact(r: f64, d: f64, n: u32) -> PyResult<f64> {
    bounds::g_compact(r, d, n).map_err(err)
}
#[pyfunction]
fn g_hadamard(r: f64, d: f64, n: u32) -> PyResult<f64> {
    bounds::g_hadamard(r, d, n).map_err(err)
}
#[pyfunction]
fn g_noncompact(t: f64, d: f64, n: u32) -> PyResult<f64> {
    bounds::g_noncompact(t, d, n).map_err(err)
}
#[pyfunction]
fn argmax_g_compact(d: f64, n: u32) -> f64 {
    bounds::argmax_g_compact(d, n)
}
#[pyfunction]
fn argmax_g_hadamard(d: f64, n: u32) -> f64 {
    bounds::argmax_g_hadamard(d, n)
}
#[pyfunction]
fn argmax_g_noncompact(d: f64, n: u32) -> f64 {
    bounds::argmax_g_noncompact(d, n)
}

/// Check `f > c(n) d V` for a theorem token (t1_1, t4_1, t4_2); returns a
/// dict with ratio, threshold, satisfied, verdict.
#[pyfunction]
#[pyo3(signature = (theorem, n, f_value, diameter, volume))]
fn check_lower_bound<'py>(
    py: Python<'py>,
    theorem: &str,
    n: u32,
    f_value: f64,
    diameter: f64,
    volume: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let t = bounds::Theorem::from_token(theorem)
        .ok_or_else(|| PyValueError::new_err(format!("unknown theorem token '{theorem}'")))?;
    let spec = bounds::BoundSpec::new(t, n).map_err(err)?;
    let report = bounds::check_lower_bound(
        &spec,
        Quantity::exact(f_value),
        Quantity::exact(diameter),
        Quantity::exact(volume),
    )
    .map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("theorem", t.token())?;
    dict.set_item("ratio", report.ratio)?;
    dict.set_item("threshold", report.threshold)?;
    dict.set_item("satisfied", report.satisfied)?;
    dict.set_item("verdict", meandist::report::verdict_label(report.verdict))?;
    Ok(dict)
}

/// Thin-neck asymptotics; returns a dict with f_p, f_q, dV, ratio_p, ratio_q.
#[pyfunction]
fn dumbbell_asymptotics<'py>(py: Python<'py>, eps: f64, neck_length: f64) -> PyResult<Bound<'py, PyDict>> {
    let a = meandist::model::dumbbell_asymptotics(eps, neck_length).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("f_p", a.f_p.value)?;
    dict.set_item("f_q", a.f_q.value)?;
    dict.set_item("dV", a.diameter_volume.value)?;
    dict.set_item("ratio_p", a.f_p.value / a.diameter_volume.value)?;
    dict.set_item("ratio_q", a.f_q.value / a.diameter_volume.value)?;
    Ok(dict)
}

/// Sweep the dumbbell family; rule is "inverse-cube" or a fixed C as float,
/// mode is "asymptotic" or "mesh".
#[pyfunction]
#[pyo3(signature = (l_values, rule = "inverse-cube".to_string(), mode = "asymptotic".to_string()))]
fn dumbbell_sweep<'py>(
    py: Python<'py>,
    l_values: Vec<f64>,
    rule: String,
    mode: String,
) -> PyResult<Bound<'py, PyList>> {
    let rule = if rule == "inverse-cube" {
        CRule::InverseCube
    } else {
        CRule::Fixed(
            rule.parse::<f64>()
                .map_err(|_| PyValueError::new_err("rule is 'inverse-cube' or a fixed C value"))?,
        )
    };
    let mode = match mode.as_str() {
        "asymptotic" => SweepMode::Asymptotic,
        "mesh" => SweepMode::Mesh,
        other => return Err(PyValueError::new_err(format!("unknown mode '{other}'"))),
    };
    let records = dumbbell::sweep(&l_values, rule, mode).map_err(err)?;
    let list = PyList::empty(py);
    for r in records {
        let dict = PyDict::new(py);
        dict.set_item("L", r.neck_length)?;
        dict.set_item("C", r.neck_circumference)?;
        dict.set_item("ratio_p", r.ratio_p)?;
        dict.set_item("ratio_q", r.ratio_q)?;
        dict.set_item(
            "source",
            match r.source {
                dumbbell::SweepSource::Asymptotic => "asymptotic",
                dumbbell::SweepSource::Mesh => "mesh",
            },
        )?;
        list.append(dict)?;
    }
    Ok(list)
}

/// Run a verification suite by token; returns a list of row dicts.
#[pyfunction]
fn run_suite<'py>(py: Python<'py>, suite: String) -> PyResult<Bound<'py, PyList>> {
    let s = verify::Suite::from_token(&suite)
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite '{suite}'")))?;
    let rows = verify::run_suite(s, &Tolerances::default()).map_err(err)?;
    let list = PyList::empty(py);
    for r in rows {
        let dict = PyDict::new(py);
        dict.set_item("quantity", &r.quantity)?;
        dict.set_item("value", r.value)?;
        dict.set_item("provenance", &r.provenance)?;
        dict.set_item("theorem", r.theorem.as_deref())?;
        dict.set_item("verdict", r.verdict.as_deref())?;
        dict.set_item("passed", r.passed())?;
        list.append(dict)?;
    }
    Ok(list)
}

#[pymodule]
fn meandist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Space>()?;
    m.add_class::<Manifold>()?;
    m.add_function(wrap_pyfunction!(c_compact, m)?)?;
    m.add_function(wrap_pyfunction!(c_hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(c_noncompact, m)?)?;
    m.add_function(wrap_pyfunction!(g_compact, m)?)?;
    m.add_function(wrap_pyfunction!(g_hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(g_noncompact, m)?)?;
    m.add_function(wrap_pyfunction!(argmax_g_compact, m)?)?;
    m.add_function(wrap_pyfunction!(argmax_g_hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(argmax_g_noncompact, m)?)?;
    m.add_function(wrap_pyfunction!(check_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(dumbbell_asymptotics, m)?)?;
    m.add_function(wrap_pyfunction!(dumbbell_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
