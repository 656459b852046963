//! Python bindings: `import coxcomb`.

use std::collections::BTreeMap;

use coxcomb_core::abelian::{self, FgAbelianGroup, GroupHom, IntegerMatrix};
use coxcomb_core::iteration::{
    self, ConfigPoint, ExponentConfig, FiberData, RamificationProfile, TraceStatus,
};
use coxcomb_core::platonic::{self, GeometryFlags, PlatonicError};
use coxcomb_core::ring::{ExponentData, ProjectivePoint, RingData};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(coxcomb, HypothesesNotMet, PyValueError);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix(rows: Vec<Vec<BigInt>>, cols_if_empty: usize) -> PyResult<IntegerMatrix> {
    if rows.is_empty() {
        return Ok(IntegerMatrix::zeros(0, cols_if_empty));
    }
    IntegerMatrix::from_rows(&rows).map_err(value_err)
}

/// Finitely generated abelian group `Z^n / im(presentation)`.
#[pyclass(name = "AbelianGroup", frozen, module = "coxcomb")]
struct PyGroup(FgAbelianGroup);

#[pymethods]
impl PyGroup {
    #[new]
    fn new(presentation: Vec<Vec<BigInt>>) -> PyResult<Self> {
        Ok(Self(FgAbelianGroup::from_presentation(matrix(
            presentation,
            0,
        )?)))
    }

    /// `Z^free_rank + Z/o_1 + ... + Z/o_k`.
    #[staticmethod]
    #[pyo3(signature = (free_rank, orders=Vec::new()))]
    fn cyclic(free_rank: usize, orders: Vec<BigInt>) -> PyResult<Self> {
        FgAbelianGroup::from_cyclic_orders(free_rank, &orders)
            .map(Self)
            .map_err(value_err)
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.0.free_rank()
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<BigInt> {
        self.0.invariant_factors().to_vec()
    }

    #[getter]
    fn ambient_rank(&self) -> usize {
        self.0.ambient_rank()
    }

    /// `None` for infinite groups.
    #[getter]
    fn order(&self) -> Option<BigInt> {
        self.0.order()
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn element_eq(&self, a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<bool> {
        abelian::element_eq(&self.0, &a, &b).map_err(value_err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup<{}>", self.0)
    }
}

/// Homomorphism given by a matrix on ambient coordinates.
#[pyclass(name = "GroupHom", frozen, module = "coxcomb")]
struct PyHom(GroupHom);

#[pymethods]
impl PyHom {
    #[new]
    fn new(source: &PyGroup, target: &PyGroup, matrix_rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let m = matrix(matrix_rows, source.0.ambient_rank())?;
        GroupHom::new(source.0.clone(), target.0.clone(), m)
            .map(Self)
            .map_err(value_err)
    }

    #[getter]
    fn source(&self) -> PyGroup {
        PyGroup(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> PyGroup {
        PyGroup(self.0.target().clone())
    }
}

/// Returns `(u, d, v)` with `u * m * v == d`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn smith_normal_form(
    m: Vec<Vec<BigInt>>,
) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let s = abelian::smith_normal_form(&matrix(m, 0)?);
    Ok((s.u.to_rows(), s.d.to_rows(), s.v.to_rows()))
}

#[pyfunction]
fn cokernel(m: Vec<Vec<BigInt>>) -> PyResult<PyGroup> {
    Ok(PyGroup(abelian::cokernel(&matrix(m, 0)?)))
}

#[pyfunction]
fn hom_group(a: &PyGroup, b: &PyGroup) -> PyGroup {
    PyGroup(abelian::hom_group(&a.0, &b.0))
}

#[pyfunction]
fn localize(group: &PyGroup, removed: Vec<Vec<BigInt>>) -> PyResult<PyGroup> {
    abelian::localize(&group.0, &removed)
        .map(PyGroup)
        .map_err(value_err)
}

#[pyfunction]
fn check_exact(f: &PyHom, g: &PyHom) -> PyResult<bool> {
    abelian::check_exact(&f.0, &g.0).map_err(value_err)
}

#[pyfunction]
fn forget_grading(class_group: &PyGroup, gamma: &PyHom) -> PyResult<PyGroup> {
    abelian::forget_grading(&class_group.0, &gamma.0)
        .map(PyGroup)
        .map_err(value_err)
}

fn exponent_data(vectors: Vec<Vec<u64>>, m: usize) -> PyResult<ExponentData> {
    ExponentData::new(vectors, m).map_err(value_err)
}

type Triple = (usize, usize, usize);

/// The graded trinomial algebra for points `A` and exponent vectors.
#[pyclass(name = "Ring", frozen, module = "coxcomb")]
struct PyRing(RingData);

#[pymethods]
impl PyRing {
    /// Points are `(alpha, beta)` pairs of ints or `Fraction`s.
    #[new]
    #[pyo3(signature = (points, exponent_vectors, m=0))]
    fn new(
        points: Vec<(BigRational, BigRational)>,
        exponent_vectors: Vec<Vec<u64>>,
        m: usize,
    ) -> PyResult<Self> {
        let points = points
            .into_iter()
            .map(|(a, b)| ProjectivePoint::new(a, b))
            .collect::<Result<Vec<_>, _>>()
            .map_err(value_err)?;
        RingData::build(points, exponent_data(exponent_vectors, m)?)
            .map(Self)
            .map_err(value_err)
    }

    #[getter]
    fn r(&self) -> usize {
        self.0.r()
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.0.points().iter().map(|p| p.to_string()).collect()
    }

    #[getter]
    fn k0(&self) -> PyGroup {
        PyGroup(self.0.k0().clone())
    }

    /// Generator name to its degree in ambient coordinates of `k0`.
    fn degrees(&self) -> BTreeMap<String, Vec<BigInt>> {
        self.0
            .degrees()
            .iter()
            .map(|(v, d)| (v.to_string(), d.clone()))
            .collect()
    }

    fn alpha(&self, i: usize, j: usize) -> PyResult<BigRational> {
        self.0.alpha(i, j).map_err(value_err)
    }

    fn trinomial(&self, i: usize, j: usize, k: usize) -> PyResult<String> {
        self.0
            .trinomial([i, j, k])
            .map(|t| t.polynomial.to_string())
            .map_err(value_err)
    }

    fn trinomials(&self) -> PyResult<Vec<(Triple, String)>> {
        self.0
            .triples()
            .into_iter()
            .map(|[i, j, k]| Ok(((i, j, k), self.trinomial(i, j, k)?)))
            .collect()
    }

    /// Coefficients `c_i` with `g_(i,j,k) = sum c_i * g_(0,1,i)`.
    fn expand(&self, i: usize, j: usize, k: usize) -> PyResult<BTreeMap<usize, BigRational>> {
        self.0
            .expand_in_generating_set([i, j, k])
            .map(|c| c.coefficients().clone())
            .map_err(value_err)
    }

    fn is_homogeneous(&self) -> bool {
        self.0.verify_homogeneous()
    }
}

#[pyfunction]
fn is_platonic_tuple(t: Vec<u64>) -> PyResult<bool> {
    platonic::is_platonic_tuple(&t).map_err(value_err)
}

/// Returns `(platonic, witness)`; the witness is a non-Platonic choice.
#[pyfunction]
#[pyo3(signature = (exponent_vectors, m=0))]
fn is_platonic_ring(
    exponent_vectors: Vec<Vec<u64>>,
    m: usize,
) -> PyResult<(bool, Option<Vec<u64>>)> {
    let v = platonic::is_platonic_ring(&exponent_data(exponent_vectors, m)?);
    Ok((v.platonic, v.witness.map(|w| w.0)))
}

#[pyclass(name = "LogTerminalReport", frozen, get_all, module = "coxcomb")]
struct PyLogTerminal {
    verdict: bool,
    basis: String,
    fano_type: Option<bool>,
    platonic: Option<bool>,
    witness: Option<Vec<u64>>,
}

#[pyfunction]
#[pyo3(signature = (
    exponent_vectors=None,
    *,
    almost_homogeneous=false,
    complexity_one=false,
    units_constant=false,
    spherical=false,
    q_factorial_projective=false,
))]
fn log_terminal(
    exponent_vectors: Option<Vec<Vec<u64>>>,
    almost_homogeneous: bool,
    complexity_one: bool,
    units_constant: bool,
    spherical: bool,
    q_factorial_projective: bool,
) -> PyResult<PyLogTerminal> {
    let exponents = exponent_vectors.map(|v| exponent_data(v, 0)).transpose()?;
    let flags = GeometryFlags {
        almost_homogeneous,
        complexity_one,
        units_constant,
        spherical,
        q_factorial_projective,
        ..GeometryFlags::default()
    };
    let report = platonic::log_terminal(exponents.as_ref(), &flags).map_err(|e| match e {
        PlatonicError::HypothesesNotMet(_) => HypothesesNotMet::new_err(e.to_string()),
        other => value_err(other),
    })?;
    let (platonic, witness) = match report.platonic {
        Some(v) => (Some(v.platonic), v.witness.map(|w| w.0)),
        None => (None, None),
    };
    Ok(PyLogTerminal {
        verdict: report.verdict,
        basis: report.basis,
        fano_type: report.fano_type,
        platonic,
        witness,
    })
}

#[pyclass(name = "IterationTrace", frozen, get_all, module = "coxcomb")]
struct PyTrace {
    /// Each configuration as `(class, vector)` pairs.
    configs: Vec<Vec<(String, Vec<u64>)>>,
    u_sequence: Vec<usize>,
    /// `"all_primitive"`, `"exhausted"` or `"invalid_profile"`.
    status: String,
    error: Option<String>,
}

type ProfileArg = (u64, BTreeMap<usize, (u64, Vec<u64>)>);

/// Profiles are `(degree, {point: (fiber_size, multiplicities)})`; unlisted
/// points are unramified.
#[pyfunction]
#[pyo3(signature = (vectors, profiles=Vec::new(), classes=None, max_steps=iteration::DEFAULT_MAX_STEPS))]
fn iterate(
    vectors: Vec<Vec<u64>>,
    profiles: Vec<ProfileArg>,
    classes: Option<Vec<String>>,
    max_steps: usize,
) -> PyResult<PyTrace> {
    let config = match classes {
        None => ExponentConfig::from_vectors(vectors),
        Some(classes) if classes.len() == vectors.len() => ExponentConfig::new(
            classes
                .into_iter()
                .zip(vectors)
                .map(|(class_id, vector)| ConfigPoint { class_id, vector })
                .collect(),
        ),
        Some(_) => return Err(PyValueError::new_err("one class per vector")),
    }
    .map_err(value_err)?;
    let profiles = profiles
        .into_iter()
        .map(|(degree, fibers)| {
            let per_point = fibers
                .into_iter()
                .map(|(i, (fiber_size, multiplicities))| {
                    (
                        i,
                        FiberData {
                            fiber_size,
                            multiplicities,
                        },
                    )
                })
                .collect();
            RamificationProfile::new(degree, per_point)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(value_err)?;
    let trace = iteration::run(&config, &profiles, max_steps);
    let (status, error) = match &trace.status {
        TraceStatus::AllPrimitive => ("all_primitive", None),
        TraceStatus::Exhausted => ("exhausted", None),
        TraceStatus::InvalidProfile { step, error } => {
            ("invalid_profile", Some(format!("step {step}: {error}")))
        }
    };
    Ok(PyTrace {
        configs: trace
            .configs
            .iter()
            .map(|c| {
                c.points()
                    .iter()
                    .map(|p| (p.class_id.clone(), p.vector.clone()))
                    .collect()
            })
            .collect(),
        u_sequence: trace.u_sequence,
        status: status.to_string(),
        error,
    })
}

#[pymodule]
fn coxcomb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HypothesesNotMet", m.py().get_type::<HypothesesNotMet>())?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyHom>()?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyLogTerminal>()?;
    m.add_class::<PyTrace>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(cokernel, m)?)?;
    m.add_function(wrap_pyfunction!(hom_group, m)?)?;
    m.add_function(wrap_pyfunction!(localize, m)?)?;
    m.add_function(wrap_pyfunction!(check_exact, m)?)?;
    m.add_function(wrap_pyfunction!(forget_grading, m)?)?;
    m.add_function(wrap_pyfunction!(is_platonic_tuple, m)?)?;
    m.add_function(wrap_pyfunction!(is_platonic_ring, m)?)?;
    m.add_function(wrap_pyfunction!(log_terminal, m)?)?;
    m.add_function(wrap_pyfunction!(iterate, m)?)?;
    Ok(())
}
