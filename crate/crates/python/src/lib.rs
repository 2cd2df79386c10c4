//! Python bindings: `Cone`, `Region`, `Ideal` and the mixed quantities.

use std::sync::{Arc, OnceLock};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cocone::linalg::{parse_rational, Point};
use cocone::verify::{verify, Check, InstanceSpec};
use cocone::{
    colength, hilbert_samuel, mixed_covolume, mixed_multiplicity, random_instance, samuel_multiplicity, Cone,
    ConvexRegion, MonomialIdeal, ProblemFile, Rational, ToricSemigroup,
};

fn err(e: cocone::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

/// Accepts ints, `fractions.Fraction` and `"p/q"` strings.
fn rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = x.str()?.to_string();
    parse_rational(&text).map_err(err)
}

fn point(coords: &[Bound<'_, PyAny>]) -> PyResult<Point> {
    Ok(Point::new(coords.iter().map(rational).collect::<PyResult<_>>()?))
}

fn point_list<'py>(py: Python<'py>, pts: &[Point]) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    pts.iter()
        .map(|p| p.coords().iter().map(|c| fraction(py, c)).collect())
        .collect()
}

/// A pointed full-dimensional rational cone spanned by integer rays.
#[pyclass(name = "Cone", frozen)]
struct PyCone {
    cone: Arc<Cone>,
    semigroup: OnceLock<Arc<ToricSemigroup>>,
}

impl PyCone {
    fn wrap(cone: Arc<Cone>, semigroup: Option<Arc<ToricSemigroup>>) -> Self {
        let cell = OnceLock::new();
        if let Some(s) = semigroup {
            let _ = cell.set(s);
        }
        PyCone { cone, semigroup: cell }
    }

    fn semigroup(&self) -> PyResult<Arc<ToricSemigroup>> {
        if let Some(s) = self.semigroup.get() {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(ToricSemigroup::new(Arc::clone(&self.cone)).map_err(err)?);
        Ok(Arc::clone(self.semigroup.get_or_init(|| s)))
    }
}

#[pymethods]
impl PyCone {
    #[new]
    fn new(rays: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyCone::wrap(Arc::new(Cone::from_rays(&rays).map_err(err)?), None))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.cone.dim()
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<i64>> {
        self.cone.rays().to_vec()
    }

    #[getter]
    fn facet_normals(&self) -> Vec<Vec<i64>> {
        self.cone.facet_normals().to_vec()
    }

    #[getter]
    fn xi(&self) -> Vec<i64> {
        self.cone.xi().to_vec()
    }

    fn hilbert_basis(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.semigroup()?.hilbert_basis().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("Cone({:?})", self.cone.rays())
    }
}

/// A region `conv(points) + C`.
#[pyclass(name = "Region", frozen)]
struct PyRegion(ConvexRegion);

#[pymethods]
impl PyRegion {
    #[new]
    fn new(cone: &PyCone, points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let pts = points.iter().map(|p| point(p)).collect::<PyResult<Vec<_>>>()?;
        Ok(PyRegion(ConvexRegion::from_generators(&cone.cone, pts).map_err(err)?))
    }

    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        point_list(py, self.0.vertices())
    }

    fn is_cobounded(&self) -> bool {
        self.0.is_cobounded()
    }

    fn contains(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        Ok(self.0.contains(&point(&x)?))
    }

    fn covolume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let v = py.detach(|| self.0.covolume()).map_err(err)?;
        fraction(py, &v)
    }

    fn scale(&self, factor: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyRegion(self.0.scale(&rational(factor)?).map_err(err)?))
    }

    fn __add__(&self, other: &PyRegion) -> PyResult<Self> {
        Ok(PyRegion(self.0.sum(&other.0).map_err(err)?))
    }
}

/// A monomial ideal of the semigroup `C ∩ Z^n`.
#[pyclass(name = "Ideal", frozen)]
struct PyIdeal(MonomialIdeal);

#[pymethods]
impl PyIdeal {
    #[new]
    fn new(cone: &PyCone, generators: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyIdeal(MonomialIdeal::new(&cone.semigroup()?, generators).map_err(err)?))
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<i64>> {
        self.0.generators().to_vec()
    }

    fn contains(&self, alpha: Vec<i64>) -> PyResult<bool> {
        self.0.contains(&alpha).map_err(err)
    }

    fn is_m_primary(&self) -> bool {
        self.0.is_m_primary()
    }

    fn newton(&self) -> PyRegion {
        PyRegion(self.0.newton().clone())
    }

    fn colength(&self, py: Python<'_>) -> PyResult<u64> {
        py.detach(|| colength(&self.0)).map_err(err)
    }

    fn hilbert_samuel(&self, py: Python<'_>, k_max: u32) -> PyResult<Vec<u64>> {
        let table = py.detach(|| hilbert_samuel(&self.0, k_max)).map_err(err)?;
        Ok(table.entries.iter().map(|&(_, h)| h).collect())
    }

    fn multiplicity(&self, py: Python<'_>) -> PyResult<u64> {
        py.detach(|| samuel_multiplicity(&self.0)).map_err(err)
    }

    fn integral_closure(&self) -> PyResult<Self> {
        Ok(PyIdeal(self.0.integral_closure().map_err(err)?))
    }

    fn equivalent(&self, other: &PyIdeal) -> PyResult<bool> {
        self.0.equivalent(&other.0).map_err(err)
    }

    fn __mul__(&self, other: &PyIdeal) -> PyResult<Self> {
        Ok(PyIdeal(self.0.product(&other.0).map_err(err)?))
    }

    fn __pow__(&self, k: u32, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        PyIdeal(self.0.power(k))
    }

    fn __eq__(&self, other: &PyIdeal) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Ideal({:?})", self.0.generators())
    }
}

#[pyfunction(name = "mixed_covolume")]
fn py_mixed_covolume<'py>(py: Python<'py>, regions: Vec<PyRef<'py, PyRegion>>) -> PyResult<Bound<'py, PyAny>> {
    let rs: Vec<ConvexRegion> = regions.iter().map(|r| r.0.clone()).collect();
    let v = py.detach(|| mixed_covolume(&rs)).map_err(err)?;
    fraction(py, &v)
}

#[pyfunction(name = "mixed_multiplicity")]
fn py_mixed_multiplicity(py: Python<'_>, ideals: Vec<PyRef<'_, PyIdeal>>) -> PyResult<u64> {
    let is: Vec<MonomialIdeal> = ideals.iter().map(|i| i.0.clone()).collect();
    py.detach(|| mixed_multiplicity(&is)).map_err(err)
}

/// One verification report as a JSON string.
#[pyfunction(name = "verify")]
fn py_verify(py: Python<'_>, check: &str, seed: u64, dim: usize) -> PyResult<String> {
    let check: Check = check.parse().map_err(err)?;
    let spec = InstanceSpec::standard(seed, dim);
    let report = py.detach(|| verify(check, &spec)).map_err(err)?;
    Ok(report.to_json())
}

/// The problem file of a seeded random instance, as JSON text.
#[pyfunction]
fn random_problem(seed: u64, dim: usize) -> PyResult<String> {
    let instance = random_instance(&InstanceSpec::standard(seed, dim)).map_err(err)?;
    Ok(ProblemFile::from_instance(&instance).to_json_pretty())
}

/// Parses problem-file JSON into `(cone, regions, ideals)`.
#[pyfunction]
fn load_problem<'py>(py: Python<'py>, text: &str) -> PyResult<(PyCone, Bound<'py, PyDict>, Bound<'py, PyDict>)> {
    let p = ProblemFile::parse(text).map_err(err)?;
    let regions = PyDict::new(py);
    for (name, r) in &p.regions {
        regions.set_item(name, PyRegion(r.clone()))?;
    }
    let ideals = PyDict::new(py);
    for (name, i) in &p.ideals {
        ideals.set_item(name, PyIdeal(i.clone()))?;
    }
    Ok((PyCone::wrap(p.cone, p.semigroup), regions, ideals))
}

#[pymodule]
fn pycocone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCone>()?;
    m.add_class::<PyRegion>()?;
    m.add_class::<PyIdeal>()?;
    m.add_function(wrap_pyfunction!(py_mixed_covolume, m)?)?;
    m.add_function(wrap_pyfunction!(py_mixed_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify, m)?)?;
    m.add_function(wrap_pyfunction!(random_problem, m)?)?;
    m.add_function(wrap_pyfunction!(load_problem, m)?)?;
    Ok(())
}
