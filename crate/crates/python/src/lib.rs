//! Python bindings for `dblcat`.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use dblcat::cli::parse_expr;
use dblcat::freegg::{self, check_double_axioms};
use dblcat::functor::{map_cell, FreeFunctor};
use dblcat::presentation::{validate_presentation, DecoratedFunctorSpec};
use dblcat::projection::ProjectionHandle;
use dblcat::quotient::{check_verticalization, equal_mod, horizontalization};
use dblcat::{corpus, CellExpr, Verdict};

create_exception!(dblcat_py, DblcatError, PyException);

fn err(e: dblcat::Error) -> PyErr {
    DblcatError::new_err(e.to_string())
}

fn expr(src: &str) -> PyResult<CellExpr> {
    parse_expr(src).map_err(err)
}

fn report(r: dblcat::ValidationReport) -> Vec<String> {
    r.violations.iter().map(|v| v.to_string()).collect()
}

/// `(representative, size, level, members)`.
type ClassRow = (String, usize, usize, usize);

fn verdict(v: Verdict) -> String {
    v.label()
}

#[pyclass(name = "Presentation", module = "dblcat_py", from_py_object)]
#[derive(Clone)]
struct PyPresentation {
    inner: dblcat::Presentation,
}

#[pymethods]
impl PyPresentation {
    /// A bundled example by name.
    #[staticmethod]
    fn load(name: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: corpus::presentation(name).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: dblcat::Presentation::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Violations, empty when the presentation is valid.
    fn validate(&self) -> PyResult<Vec<String>> {
        Ok(report(validate_presentation(&self.inner).map_err(err)?))
    }

    fn normalize(&self, e: &str) -> PyResult<String> {
        Ok(freegg::prenormalize(&self.inner, &expr(e)?).map_err(err)?.to_string())
    }

    #[pyo3(signature = (x, y, budget = 10))]
    fn equal(&self, x: &str, y: &str, budget: usize) -> PyResult<String> {
        Ok(verdict(freegg::equal(&self.inner, &expr(x)?, &expr(y)?, budget).map_err(err)?))
    }

    fn level(&self, e: &str) -> PyResult<usize> {
        freegg::level(&self.inner, &expr(e)?).map_err(err)
    }

    /// `(d, c, s, t)`.
    fn boundary(&self, e: &str) -> PyResult<(String, String, String, String)> {
        let b = freegg::boundary(&self.inner, &expr(e)?).map_err(err)?;
        Ok((b.d, b.c, b.s, b.t))
    }

    /// One row per class, and a truncation flag.
    #[pyo3(signature = (frame, max_size, max_level = None))]
    fn enumerate(&self, frame: &str, max_size: usize, max_level: Option<usize>) -> PyResult<(Vec<ClassRow>, bool)> {
        let f = freegg::Boundary::parse(frame).map_err(err)?;
        let en = freegg::enumerate(&self.inner, &f, max_size, max_level.unwrap_or(usize::MAX)).map_err(err)?;
        let classes = en.classes.into_iter().map(|c| (c.representative.to_string(), c.size, c.level, c.members)).collect();
        Ok((classes, en.truncated))
    }

    #[pyo3(signature = (budget = 8))]
    fn check_axioms(&self, budget: usize) -> PyResult<Vec<String>> {
        Ok(report(check_double_axioms(&self.inner, budget).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Presentation(objects={}, 2-cells={})", self.inner.objects.len(), self.inner.globular.cells.len())
    }
}

#[pyclass(name = "Quotient", module = "dblcat_py", from_py_object)]
#[derive(Clone)]
struct PyQuotient {
    inner: dblcat::QuotientSpec,
}

#[pymethods]
impl PyQuotient {
    #[new]
    fn new(base: &PyPresentation, relations: Vec<(String, String)>) -> PyResult<Self> {
        let rel = relations.iter().map(|(a, b)| Ok((expr(a)?, expr(b)?))).collect::<PyResult<Vec<_>>>()?;
        Ok(PyQuotient { inner: dblcat::QuotientSpec::new(base.inner.clone(), rel).map_err(err)? })
    }

    #[staticmethod]
    fn load(name: &str) -> PyResult<Self> {
        Ok(PyQuotient { inner: corpus::quotient(name).map_err(err)? })
    }

    #[pyo3(signature = (x, y, budget = 10))]
    fn equal(&self, x: &str, y: &str, budget: usize) -> PyResult<String> {
        Ok(verdict(equal_mod(&self.inner, &expr(x)?, &expr(y)?, budget).map_err(err)?))
    }

    /// `(name, dom, cod, representative)` per globular class.
    #[pyo3(signature = (budget = 10))]
    fn globular_classes(&self, budget: usize) -> PyResult<Vec<(String, String, String, String)>> {
        let h = horizontalization(&self.inner, budget).map_err(err)?;
        Ok(h.classes.into_iter().map(|c| (c.name, c.dom, c.cod, c.representative.to_string())).collect())
    }

    #[pyo3(signature = (budget = 10))]
    fn check_verticalization(&self, budget: usize) -> PyResult<Vec<String>> {
        Ok(report(check_verticalization(&self.inner, budget).map_err(err)?))
    }
}

#[pyclass(name = "Projection", module = "dblcat_py", unsendable)]
struct PyProjection {
    inner: ProjectionHandle,
}

#[pymethods]
impl PyProjection {
    #[new]
    #[pyo3(signature = (target, budget = 10))]
    fn new(target: &PyQuotient, budget: usize) -> PyResult<Self> {
        Ok(PyProjection { inner: ProjectionHandle::new(target.inner.clone(), budget).map_err(err)? })
    }

    fn project(&mut self, e: &str) -> PyResult<String> {
        Ok(self.inner.project(&expr(e)?).map_err(err)?.representative.to_string())
    }

    #[pyo3(signature = (k, budget = 10))]
    fn check_fullness(&mut self, k: usize, budget: usize) -> PyResult<Vec<String>> {
        Ok(report(self.inner.check_fullness(k, budget).map_err(err)?))
    }
}

#[pyclass(name = "Functor", module = "dblcat_py")]
struct PyFunctor {
    inner: FreeFunctor,
}

#[pymethods]
impl PyFunctor {
    #[staticmethod]
    fn load(name: &str) -> PyResult<Self> {
        let spec: DecoratedFunctorSpec = corpus::functor(name).map_err(err)?;
        Ok(PyFunctor { inner: FreeFunctor::new(spec).map_err(err)? })
    }

    fn map(&self, e: &str) -> PyResult<String> {
        Ok(map_cell(&self.inner, &expr(e)?).map_err(err)?.to_string())
    }
}

/// Canonical printing of an expression.
#[pyfunction]
fn parse(src: &str) -> PyResult<String> {
    Ok(expr(src)?.to_string())
}

#[pymodule]
pub fn dblcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DblcatError", m.py().get_type::<DblcatError>())?;
    m.add("EXAMPLES", corpus::NAMES.to_vec())?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyQuotient>()?;
    m.add_class::<PyProjection>()?;
    m.add_class::<PyFunctor>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    Ok(())
}
