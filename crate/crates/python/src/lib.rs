//! Python bindings for `opq_core`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use opq_core::error::Error;
use opq_core::export::{growth_csv, ladder_export, lattice_export, parse_direction};
use opq_core::gkmod::{generating_threshold, gk_invariants, irreducible};
use opq_core::harmonics::{dim_harm, kernel_rank};
use opq_core::liealg::{self, BasisLabel, CasimirKind};
use opq_core::module::ExtremalSpec;
use opq_core::report::RunConfig;
use opq_core::{verify, Ambient, Block};

fn err(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::AmbientMismatch(..) | Error::Domain(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn block(name: &str) -> PyResult<Block> {
    match name {
        "x" | "X" => Ok(Block::X),
        "y" | "Y" => Ok(Block::Y),
        other => Err(PyValueError::new_err(format!("block must be 'x' or 'y', got {other:?}"))),
    }
}

fn label(text: &str, p: usize, q: usize) -> PyResult<BasisLabel> {
    let l: BasisLabel = text.parse().map_err(err)?;
    l.validate(p, q).map_err(err)?;
    Ok(l)
}

/// Polynomial with Gaussian-rational coefficients in `x_1..x_p, y_1..y_q`.
#[pyclass(frozen, eq, skip_from_py_object, module = "opq")]
#[derive(Clone, PartialEq)]
struct Polynomial(opq_core::Polynomial);

#[pymethods]
impl Polynomial {
    /// Coordinate variable `v` (0-based over `x` then `y`).
    #[staticmethod]
    fn var(p: usize, q: usize, v: usize) -> PyResult<Self> {
        if v >= p + q {
            return Err(PyValueError::new_err("variable index out of range"));
        }
        Ok(Polynomial(opq_core::Polynomial::var(Ambient::new(p, q), v)))
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        opq_core::Polynomial::from_text(text).map(Polynomial).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn derivative(&self, v: usize) -> Self {
        Polynomial(self.0.derivative(v))
    }

    fn laplacian(&self, which: &str) -> PyResult<Self> {
        Ok(Polynomial(self.0.laplacian(block(which)?)))
    }

    fn __add__(&self, other: &Polynomial) -> PyResult<Self> {
        self.0.try_add(&other.0).map(Polynomial).map_err(err)
    }

    fn __sub__(&self, other: &Polynomial) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(Polynomial).map_err(err)
    }

    fn __mul__(&self, other: &Polynomial) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(Polynomial).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.0)
    }
}

/// Element of the Weyl algebra in normal order.
#[pyclass(frozen, eq, skip_from_py_object, module = "opq")]
#[derive(Clone, PartialEq)]
struct WeylOperator(opq_core::WeylOperator);

#[pymethods]
impl WeylOperator {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        opq_core::WeylOperator::from_text(text).map(WeylOperator).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The scalar `c` if the operator is `c·id`, as `"num/den+num/den·i"`.
    fn as_scalar(&self) -> Option<String> {
        self.0.as_scalar().map(|s| s.to_string())
    }

    fn compose(&self, other: &WeylOperator) -> PyResult<Self> {
        self.0.compose(&other.0).map(WeylOperator).map_err(err)
    }

    fn commutator(&self, other: &WeylOperator) -> PyResult<Self> {
        self.0.commutator(&other.0).map(WeylOperator).map_err(err)
    }

    fn apply(&self, f: &Polynomial) -> PyResult<Polynomial> {
        self.0.apply(&f.0).map(Polynomial).map_err(err)
    }

    fn __add__(&self, other: &WeylOperator) -> PyResult<Self> {
        self.0.try_add(&other.0).map(WeylOperator).map_err(err)
    }

    fn __sub__(&self, other: &WeylOperator) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(WeylOperator).map_err(err)
    }

    fn __mul__(&self, other: &WeylOperator) -> PyResult<Self> {
        self.compose(other)
    }

    fn __repr__(&self) -> String {
        format!("WeylOperator({:?})", self.0)
    }
}

/// Formal sum `Σ P_α·ψ_α`.
#[pyclass(frozen, skip_from_py_object, module = "opq")]
#[derive(Clone)]
struct ModuleElement(opq_core::module::ModuleElement);

#[pymethods]
impl ModuleElement {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        opq_core::module::ModuleElement::from_text(text).map(ModuleElement).map_err(err)
    }

    /// `h₁h₂ρ_y^μψ_{κ₊}` using the first harmonic basis vectors of degrees `k`, `l`.
    #[staticmethod]
    fn highest_weight_vector(p: usize, q: usize, k: u32, l: u32, mu: u32) -> PyResult<Self> {
        opq_core::module::extremal_vector(&ExtremalSpec::highest(p, q, k, l, mu))
            .map(ModuleElement)
            .map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn simplify(&self) -> Self {
        ModuleElement(self.0.simplify())
    }

    /// Power series truncated at total degree `n`.
    fn series(&self, n: u32) -> Polynomial {
        Polynomial(self.0.to_series(n))
    }

    fn act(&self, op: &WeylOperator) -> PyResult<Self> {
        opq_core::module::weyl_act(&op.0, &self.0).map(ModuleElement).map_err(err)
    }

    fn __sub__(&self, other: &ModuleElement) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(ModuleElement).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("ModuleElement({:?})", self.0)
    }
}

/// Basis labels of o(p,q), e.g. `X+[1,2]`, `X+[1',2']`, `X-[1,2']`.
#[pyfunction]
fn basis_labels(p: usize, q: usize) -> Vec<String> {
    BasisLabel::basis(p, q).iter().map(ToString::to_string).collect()
}

#[pyfunction]
fn pi(label_text: &str, p: usize, q: usize) -> PyResult<WeylOperator> {
    liealg::pi(label(label_text, p, q)?, p, q).map(WeylOperator).map_err(err)
}

#[pyfunction]
fn pi_sharp(label_text: &str, p: usize, q: usize) -> PyResult<WeylOperator> {
    liealg::pi_sharp(label(label_text, p, q)?, p, q).map(WeylOperator).map_err(err)
}

#[pyfunction]
fn partial_fourier(op: &WeylOperator) -> WeylOperator {
    WeylOperator(liealg::partial_fourier(&op.0))
}

/// `(H, X⁺, X⁻)`.
#[pyfunction]
fn sl2_triple(p: usize, q: usize) -> (WeylOperator, WeylOperator, WeylOperator) {
    let t = liealg::sl2_triple(p, q);
    (WeylOperator(t.h), WeylOperator(t.x_plus), WeylOperator(t.x_minus))
}

/// Casimir image for `kind` in `{"g", "k", "sl2"}`.
#[pyfunction]
fn casimir(kind: &str, p: usize, q: usize) -> PyResult<WeylOperator> {
    let k = match kind {
        "g" => CasimirKind::G,
        "k" => CasimirKind::K,
        "sl2" => CasimirKind::Sl2,
        other => return Err(PyValueError::new_err(format!("unknown Casimir {other:?}"))),
    };
    liealg::casimir(k, p, q).map(WeylOperator).map_err(err)
}

#[pyfunction]
fn harmonic_dimension(n: usize, d: u32) -> u128 {
    dim_harm(n, d)
}

#[pyfunction]
fn harmonic_kernel_rank(n: usize, d: u32) -> usize {
    kernel_rank(n, d)
}

/// Runs verification suites; keyword arguments are `RunConfig` settings, e.g.
/// `run_verify(p=3, q=3, suite="gkmod")`. Returns the JSON report.
#[pyfunction]
#[pyo3(signature = (**settings))]
fn run_verify(settings: Option<&Bound<'_, PyDict>>) -> PyResult<String> {
    let mut cfg = RunConfig::default();
    if let Some(d) = settings {
        for (k, v) in d.iter() {
            cfg.set(&k.str()?.to_cow()?, &v.str()?.to_cow()?).map_err(err)?;
        }
    }
    verify::run(&cfg).map(|r| r.to_json()).map_err(err)
}

/// K-type lattice as JSON, CSV or figure text.
#[pyfunction]
#[pyo3(signature = (p, q, m, window=None, format="json"))]
fn ktypes(p: usize, q: usize, m: u32, window: Option<u32>, format: &str) -> PyResult<String> {
    let e = lattice_export(p, q, m, window).map_err(err)?;
    match format {
        "json" => Ok(e.to_json()),
        "csv" => Ok(e.to_csv()),
        "figure" => Ok(e.to_figure()),
        other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
    }
}

/// `(gk_dimension, bernstein_degree, csv_table)`.
#[pyfunction]
fn gkdim(p: usize, q: usize, m: u32) -> PyResult<(u32, String, String)> {
    let g = gk_invariants(p, q, m).map_err(err)?;
    Ok((g.gk_dimension, g.bernstein_degree.clone(), growth_csv(&g)))
}

#[pyfunction]
#[pyo3(signature = (p, q, m, window=None))]
fn is_irreducible(p: usize, q: usize, m: u32, window: Option<u32>) -> PyResult<bool> {
    irreducible(p, q, m, window).map(|r| r.irreducible && r.window_invariant).map_err(err)
}

#[pyfunction]
fn threshold(p: usize, q: usize, m: u32) -> PyResult<u32> {
    generating_threshold(p, q, m, None).map_err(err)
}

/// Ladder report as text; `direction` is `"down"` or `"up"`.
#[pyfunction]
#[pyo3(signature = (p, q, k, l, mu, nu, direction="down"))]
fn ladder(p: usize, q: usize, k: u32, l: u32, mu: u32, nu: u32, direction: &str) -> PyResult<(bool, String)> {
    let spec = ExtremalSpec {
        kind: parse_direction(direction).map_err(err)?,
        ..ExtremalSpec::highest(p, q, k, l, mu)
    };
    let e = ladder_export(&spec, nu).map_err(err)?;
    Ok((e.agrees, e.to_text()))
}

#[pymodule]
fn opq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polynomial>()?;
    m.add_class::<WeylOperator>()?;
    m.add_class::<ModuleElement>()?;
    m.add_function(wrap_pyfunction!(basis_labels, m)?)?;
    m.add_function(wrap_pyfunction!(pi, m)?)?;
    m.add_function(wrap_pyfunction!(pi_sharp, m)?)?;
    m.add_function(wrap_pyfunction!(partial_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(sl2_triple, m)?)?;
    m.add_function(wrap_pyfunction!(casimir, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_kernel_rank, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(ktypes, m)?)?;
    m.add_function(wrap_pyfunction!(gkdim, m)?)?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    m.add_function(wrap_pyfunction!(ladder, m)?)?;
    Ok(())
}
