//! Python module `circle_hall_py`.
//!
//! Elements are exposed as classes that print in the same notation as the Rust
//! `Display` impls and convert to and from the JSON used by the `circle-hall` CLI.
//! Reports and tables are returned as JSON strings.

use circle_hall::circle_quantum::{
    apply_expr, embed_generators, instances_for_pair, parse_word, relation_instances, straighten, verify_instance,
    EmbeddingKind, GeneratorExpr, RelationFamily, RepVariant, RepVector,
};
use circle_hall::intervals_ktheory::stack_invariants;
use circle_hall::mirror::{compare_with_quiver, dtype_hom_ext, object_hom_ext, DtypeCase, MirrorObject};
use circle_hall::quiver_hall::{self as qh, default_dim_bound, hubery_element, HallContext, HuberyKind, TorsionObject};
use circle_hall::rational::{format_rational, parse_rational};
use circle_hall::shuffle::{self as sh, parse_rank_one, zeta_series, LabelMode, SeriesKind, Varpi, ZetaData};
use circle_hall::{Arc, KClass, StepFunction};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;
use serde_json::json;

create_exception!(circle_hall_py, BoundExceededError, PyRuntimeError, "An enumeration bound was exceeded.");

fn to_py(err: circle_hall::Error) -> PyErr {
    match err {
        circle_hall::Error::BoundExceeded { .. } => BoundExceededError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn json_error(err: serde_json::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn to_json<T: Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(json_error)
}

fn arcs(text: &str) -> PyResult<Vec<Arc>> {
    text.split('+').map(|part| Arc::parse(part.trim()).map_err(to_py)).collect()
}

/// Element of the twisted Hall algebra of the cyclic quiver with `n` vertices.
#[pyclass(module = "circle_hall_py")]
pub struct HallElement {
    inner: qh::HallElement,
}

#[pymethods]
impl HallElement {
    /// Basis vector of the direct sum of arcs such as `"0,1/3+1/3,2/3"`.
    #[staticmethod]
    fn basis(n: u64, arcs_text: &str, q: u64) -> PyResult<Self> {
        let obj = TorsionObject::from_arcs(n, &arcs(arcs_text)?).map_err(to_py)?;
        Ok(Self { inner: qh::HallElement::basis(&obj, q) })
    }

    #[staticmethod]
    fn one(n: u64, q: u64) -> Self {
        Self { inner: qh::HallElement::one(n, q) }
    }

    #[staticmethod]
    fn zero(n: u64, q: u64) -> Self {
        Self { inner: qh::HallElement::zero(n, q) }
    }

    /// The group-like element `k_alpha`.
    #[staticmethod]
    fn k(n: u64, alpha: Vec<i64>, q: u64) -> Self {
        Self { inner: qh::HallElement::k_element(n, alpha, q) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: serde_json::from_str(text).map_err(json_error)? })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.add(&other.inner).map_err(to_py)? })
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.sub(&other.inner).map_err(to_py)? })
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HallElement({})", self.inner)
    }
}

/// Element of the tensor square, as produced by the coproduct.
#[pyclass(module = "circle_hall_py")]
pub struct TensorElement {
    inner: qh::TensorElement,
}

#[pymethods]
impl TensorElement {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: serde_json::from_str(text).map_err(json_error)? })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TensorElement({})", self.inner)
    }
}

/// Hall algebra over the field with `q` elements, with a dimension bound on enumeration.
#[pyclass(module = "circle_hall_py")]
pub struct HallAlgebra {
    ctx: HallContext,
}

impl HallAlgebra {
    fn check(&self, x: &qh::HallElement) -> PyResult<()> {
        if x.q() != self.ctx.q() {
            return Err(PyValueError::new_err(format!("element is over q = {} but the algebra is over q = {}", x.q(), self.ctx.q())));
        }
        Ok(())
    }
}

#[pymethods]
impl HallAlgebra {
    #[new]
    #[pyo3(signature = (q, bound=None))]
    fn new(q: u64, bound: Option<usize>) -> PyResult<Self> {
        circle_hall::coefficients::check_prime_power(q).map_err(to_py)?;
        let ctx = HallContext::with_bound(q, bound.unwrap_or_else(|| default_dim_bound(q))).map_err(to_py)?;
        Ok(Self { ctx })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.ctx.q()
    }

    fn product(&self, py: Python<'_>, x: PyRef<'_, HallElement>, y: PyRef<'_, HallElement>) -> PyResult<HallElement> {
        self.check(&x.inner)?;
        let (a, b) = (x.inner.clone(), y.inner.clone());
        let inner = py.detach(|| self.ctx.product(&a, &b)).map_err(to_py)?;
        Ok(HallElement { inner })
    }

    /// Full coproduct, or only the component of bidegree `(alpha, beta)`.
    #[pyo3(signature = (x, alpha=None, beta=None))]
    fn coproduct(
        &self,
        x: PyRef<'_, HallElement>,
        alpha: Option<Vec<i64>>,
        beta: Option<Vec<i64>>,
    ) -> PyResult<TensorElement> {
        self.check(&x.inner)?;
        let inner = match (alpha, beta) {
            (Some(a), Some(b)) => self.ctx.coproduct_component(&x.inner, &a, &b),
            (None, None) => self.ctx.coproduct(&x.inner),
            _ => return Err(PyValueError::new_err("alpha and beta must be given together")),
        }
        .map_err(to_py)?;
        Ok(TensorElement { inner })
    }

    /// Green pairing; the result is printed in the coefficient ring notation.
    fn pairing(&self, x: PyRef<'_, HallElement>, y: PyRef<'_, HallElement>) -> PyResult<String> {
        self.check(&x.inner)?;
        Ok(self.ctx.green_pairing(&x.inner, &y.inner).map_err(to_py)?.to_string())
    }

    fn tensor_pairing(&self, x: PyRef<'_, TensorElement>, y: PyRef<'_, TensorElement>) -> PyResult<String> {
        Ok(self.ctx.tensor_pairing(&x.inner, &y.inner).map_err(to_py)?.to_string())
    }

    /// Hubery element of kind `"c"` or `"z"`.
    fn hubery(&self, kind: &str, r: u64, n: u64) -> PyResult<HallElement> {
        let kind = match kind {
            "c" => HuberyKind::C,
            "z" => HuberyKind::Z,
            other => return Err(PyValueError::new_err(format!("unknown Hubery kind '{other}', expected c or z"))),
        };
        Ok(HallElement { inner: hubery_element(&self.ctx, kind, r, n).map_err(to_py)? })
    }

    /// `None` when `x` commutes with every basis vector below `dims`, otherwise a witness.
    fn central_witness(&self, x: PyRef<'_, HallElement>, dims: Vec<i64>) -> PyResult<Option<String>> {
        self.check(&x.inner)?;
        let witness = self.ctx.is_central(&x.inner, &dims).map_err(to_py)?;
        witness.map(|w| to_json(&w)).transpose()
    }

    /// Checks a relation family by brute force; returns the certificates as JSON.
    #[pyo3(signature = (family, n, j1=None, j2=None))]
    fn verify(&self, py: Python<'_>, family: &str, n: u64, j1: Option<&str>, j2: Option<&str>) -> PyResult<String> {
        let family: RelationFamily = family.parse().map_err(to_py)?;
        let q = self.ctx.q();
        let instances = match (j1, j2) {
            (Some(a), Some(b)) => {
                instances_for_pair(family, &Arc::parse(a).map_err(to_py)?, &Arc::parse(b).map_err(to_py)?, q)
            }
            (None, None) => relation_instances(family, n, q),
            _ => return Err(PyValueError::new_err("j1 and j2 must be given together")),
        };
        let certificates = py
            .detach(|| instances.iter().map(|inst| verify_instance(&self.ctx, inst, n)).collect::<circle_hall::Result<Vec<_>>>())
            .map_err(to_py)?;
        to_json(&json!({
            "holds": certificates.iter().all(|c| c.holds),
            "family": family,
            "n": n,
            "q": q,
            "certificates": certificates,
        }))
    }

    /// Compares the mirror Hall algebra with the quiver model at denominator `n`.
    fn mirror_compare(&self, py: Python<'_>, n: u64) -> PyResult<String> {
        let report = py.detach(|| compare_with_quiver(&self.ctx, n)).map_err(to_py)?;
        to_json(&report)
    }
}

/// Element of the shuffle algebra, with labels on `Z/n` or on the rationals.
#[pyclass(module = "circle_hall_py")]
pub struct ShuffleElement {
    inner: sh::ShuffleElement,
}

#[pymethods]
impl ShuffleElement {
    /// Rank-one term such as `"x^1 v:1/2"`; labels are cyclic when `n` is given.
    #[staticmethod]
    #[pyo3(signature = (q, term, n=None))]
    fn rank_one(q: u64, term: &str, n: Option<u64>) -> PyResult<Self> {
        let mode = match n {
            Some(n) => LabelMode::Cyclic { n },
            None => LabelMode::Rational,
        };
        Ok(Self { inner: parse_rank_one(q, mode, term).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: serde_json::from_str(text).map_err(json_error)? })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.add(&other.inner).map_err(to_py)? })
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ShuffleElement({})", self.inner)
    }
}

/// Curve over the field with `q` elements given by its genus and Weil numerator.
#[pyclass(module = "circle_hall_py")]
pub struct Curve {
    data: ZetaData,
}

#[pymethods]
impl Curve {
    #[new]
    #[pyo3(signature = (q, g=0, numerator=None))]
    fn new(q: u64, g: u32, numerator: Option<Vec<i64>>) -> PyResult<Self> {
        let numerator = numerator.unwrap_or_else(|| vec![1]);
        Ok(Self { data: ZetaData::new(g, q, numerator).map_err(to_py)? })
    }

    #[staticmethod]
    fn elliptic(q: u64, trace: i64) -> PyResult<Self> {
        Ok(Self { data: ZetaData::elliptic(q, trace).map_err(to_py)? })
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.data.genus()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.data.q()
    }

    /// Coefficients of `zeta`, `xi`, `xi-circ` or `kernel-h` up to `order`, printed.
    fn series(&self, kind: &str, order: usize) -> PyResult<Vec<String>> {
        let kind = SeriesKind::parse(kind).map_err(to_py)?;
        let s = zeta_series(&self.data, kind, order).map_err(to_py)?;
        Ok(s.coefficients().iter().map(ToString::to_string).collect())
    }

    /// Shuffle product with this curve's kernel, truncated at `order`.
    #[pyo3(signature = (x, y, order=3))]
    fn shuffle_product(&self, x: PyRef<'_, ShuffleElement>, y: PyRef<'_, ShuffleElement>, order: u32) -> PyResult<ShuffleElement> {
        let varpi = Varpi::for_curve(&self.data, order).map_err(to_py)?;
        Ok(ShuffleElement { inner: varpi.shuffle_product(&x.inner, &y.inner).map_err(to_py)? })
    }
}

/// Normal form of an interval word such as `"F[0,1/2) E[0,1/2)"` at denominator `n`, as JSON.
#[pyfunction]
fn straighten_word(word: &str, n: u64, q: u64) -> PyResult<String> {
    let expr = GeneratorExpr::word(q, parse_word(word).map_err(to_py)?);
    to_json(&straighten(&expr, n).map_err(to_py)?)
}

/// Applies an interval word to the basis vector `u_y` of a fundamental representation.
#[pyfunction]
#[pyo3(signature = (word, y, q, variant="twisted-circle", n=None))]
fn fundrep_apply(word: &str, y: &str, q: u64, variant: &str, n: Option<u64>) -> PyResult<String> {
    let level = || n.ok_or_else(|| PyValueError::new_err(format!("variant '{variant}' needs n")));
    let variant = match variant {
        "circle" => RepVariant::Circle,
        "twisted-circle" => RepVariant::TwistedCircle,
        "heisenberg" => RepVariant::Heisenberg,
        "affine" => RepVariant::Affine(level()?),
        "twisted-affine" => RepVariant::TwistedAffine(level()?),
        other => return Err(PyValueError::new_err(format!("unknown representation '{other}'"))),
    };
    let v = RepVector::basis(q, parse_rational(y).map_err(to_py)?);
    let out = apply_expr(variant, &GeneratorExpr::word(q, parse_word(word).map_err(to_py)?), &v).map_err(to_py)?;
    to_json(&out)
}

/// Generator images of an embedding from denominator `n`, as JSON.
#[pyfunction]
#[pyo3(signature = (kind, n, factor=2))]
fn embed(kind: &str, n: u64, factor: u64) -> PyResult<String> {
    let kind = match kind {
        "subdivision" => EmbeddingKind::Subdivision { factor },
        "plus-infinity" => EmbeddingKind::PlusInfinity,
        "two-sided" => EmbeddingKind::TwoSided,
        "add-one-vertex" => EmbeddingKind::AddOneVertex,
        "add-two-vertices" => EmbeddingKind::AddTwoVertices,
        other => return Err(PyValueError::new_err(format!("unknown embedding '{other}'"))),
    };
    to_json(&embed_generators(kind, n).map_err(to_py)?)
}

/// `(hom, ext1)` between '+'-separated sums of open-closed intervals.
#[pyfunction]
fn mirror_hom_ext(a: &str, b: &str) -> PyResult<(u64, u64)> {
    let source = MirrorObject::parse(a).map_err(to_py)?;
    let target = MirrorObject::parse(b).map_err(to_py)?;
    let dims = object_hom_ext(&source, &target);
    Ok((dims.hom as u64, dims.ext1 as u64))
}

/// Graded Hom table of a D-shaped configuration, as JSON.
#[pyfunction]
#[pyo3(signature = (case, a=None, b=None))]
fn dtype_table(case: &str, a: Option<&str>, b: Option<&str>) -> PyResult<String> {
    let case: DtypeCase = case.parse().map_err(to_py)?;
    let a = a.map(parse_rational).transpose().map_err(to_py)?;
    let b = b.map(parse_rational).transpose().map_err(to_py)?;
    to_json(&dtype_hom_ext(case, a.as_ref(), b.as_ref()).map_err(to_py)?)
}

/// Degree, slope, Euler characteristic and virtual genus of the class with the
/// given rank and cell dimensions, as printed rationals.
#[pyfunction]
#[pyo3(signature = (n, rank, dims, g=0))]
fn invariants(n: u64, rank: i64, dims: Vec<i64>, g: u64) -> PyResult<(String, Option<String>, String, String)> {
    let dim = if dims.is_empty() {
        StepFunction::zero()
    } else {
        StepFunction::new(dims.len() as u64, dims).map_err(to_py)?
    };
    let inv = stack_invariants(n, g, &KClass::new(rank, dim)).map_err(to_py)?;
    Ok((
        format_rational(&inv.deg_n),
        inv.slope.as_ref().map(format_rational),
        format_rational(&inv.chi_n),
        format_rational(&inv.virtual_genus),
    ))
}

/// Runs the acceptance suite and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (q=2))]
fn run_suite(py: Python<'_>, q: u64) -> PyResult<String> {
    Ok(py.detach(|| circle_hall::suite::run_suite(q)).map_err(to_py)?.to_json())
}

#[pymodule]
fn circle_hall_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BoundExceededError", m.py().get_type::<BoundExceededError>())?;
    m.add_class::<HallElement>()?;
    m.add_class::<TensorElement>()?;
    m.add_class::<HallAlgebra>()?;
    m.add_class::<ShuffleElement>()?;
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(straighten_word, m)?)?;
    m.add_function(wrap_pyfunction!(fundrep_apply, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_hom_ext, m)?)?;
    m.add_function(wrap_pyfunction!(dtype_table, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
