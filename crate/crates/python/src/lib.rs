//! Python bindings. Rationals cross the boundary as text (`"3/2"`, `"-1e40"`)
//! or anything whose `str()` parses as one, such as `int` and
//! `fractions.Fraction`; results expose exact values as strings.

use euler_esa::esa::{self, Endpoint};
use euler_esa::exact::rational::{parse_rational, to_exact_string};
use euler_esa::frobenius::{self, SolutionDescriptor};
use euler_esa::{roots, stability, Config, Error, IndicialSpec, Rational};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ParseRational(_) | Error::InvalidSpec(_) | Error::ResonantParameter(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(x.str()?.to_str()?).map_err(py_err)
}

fn to_json<T: Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn config(max_precision_bits: Option<u32>) -> Config {
    let mut c = Config::default();
    if let Some(bits) = max_precision_bits {
        c.max_precision_bits = bits;
    }
    c
}

/// Certified decision for one radial operator.
#[pyclass(name = "EsaVerdict", frozen)]
struct PyEsaVerdict(esa::EsaVerdict);

#[pymethods]
impl PyEsaVerdict {
    /// "ESA" or "NotESA".
    #[getter]
    fn verdict(&self) -> &'static str {
        match self.0.verdict {
            esa::Verdict::Esa => "ESA",
            esa::Verdict::NotEsa => "NotESA",
        }
    }

    #[getter]
    fn is_esa(&self) -> bool {
        self.0.verdict == esa::Verdict::Esa
    }

    /// (left, axis, right) root counts relative to Re z = −1/2.
    #[getter]
    fn count(&self) -> (usize, usize, usize) {
        let h = &self.0.count;
        (h.left, h.axis, h.right)
    }

    #[getter]
    fn hurwitz_det(&self) -> String {
        self.0.certificate.hurwitz_det.clone()
    }

    #[getter]
    fn precision_bits(&self) -> u32 {
        self.0.certificate.precision_bits
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }

    fn __bool__(&self) -> bool {
        self.is_esa()
    }

    fn __repr__(&self) -> String {
        let s = &self.0.spec;
        format!("EsaVerdict({} for m={}, n={}, l={}, c={})", self.verdict(), s.m, s.n, s.l, to_exact_string(&s.c))
    }
}

fn endpoint(e: &Endpoint) -> Option<String> {
    e.finite().map(|x| x.exact_string().unwrap_or_else(|| x.to_decimal(17)))
}

/// ESA region in the coupling c, a union of closed pieces with algebraic
/// endpoints.
#[pyclass(name = "EsaRegion", frozen)]
struct PyEsaRegion(esa::EsaRegion);

#[pymethods]
impl PyEsaRegion {
    /// Exact membership test.
    fn contains(&self, c: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.contains(&rational(c)?))
    }

    fn __contains__(&self, c: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.contains(c)
    }

    /// (lo, hi) per piece: exact text for rational endpoints, 17 significant
    /// digits otherwise, None for ∓∞.
    #[getter]
    fn pieces(&self) -> Vec<(Option<String>, Option<String>)> {
        self.0.pieces.iter().map(|p| (endpoint(&p.lo), endpoint(&p.hi))).collect()
    }

    /// Real roots of det H(c), increasing, as floats.
    #[getter]
    fn boundary_candidates(&self) -> Vec<f64> {
        self.0.boundary_candidates.iter().map(|x| x.to_f64()).collect()
    }

    #[getter]
    fn isolated_candidates(&self) -> Vec<f64> {
        self.0.isolated_candidates.iter().map(|x| x.to_f64()).collect()
    }

    #[pyo3(signature = (digits = 5))]
    fn render(&self, digits: u32) -> String {
        self.0.render(digits)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("EsaRegion({})", self.0.render(5))
    }
}

/// Fundamental system of τ₂(c₁, c₂)y = λy selected by resonance case.
#[pyclass(name = "BasisSelection", frozen)]
struct PyBasisSelection(frobenius::BasisSelection);

#[pymethods]
impl PyBasisSelection {
    #[getter]
    fn case_tag(&self) -> String {
        format!("{:?}", self.0.case_tag)
    }

    #[getter]
    fn exponents(&self) -> Vec<Complex64> {
        self.0.exponents.to_vec()
    }

    /// (kind, exponent, parameters, argument_sign) per member.
    #[getter]
    fn solutions(&self) -> Vec<(String, Complex64, Vec<Complex64>, i8)> {
        self.0
            .solutions
            .iter()
            .map(|s| (format!("{:?}", s.kind), s.exponent, s.parameters.clone(), s.argument_sign))
            .collect()
    }

    /// |τ₂y − λy| at r for series member `index` (0-based).
    #[pyo3(signature = (index, c1, c2, r, tol = 1e-15))]
    fn residual(&self, index: usize, c1: &Bound<'_, PyAny>, c2: &Bound<'_, PyAny>, r: f64, tol: f64) -> PyResult<f64> {
        let sol: &SolutionDescriptor =
            self.0.solutions.get(index).ok_or_else(|| PyValueError::new_err("solution index out of range"))?;
        frobenius::ode_residual(sol, &rational(c1)?, &rational(c2)?, self.0.lambda, r, tol).map_err(py_err)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("BasisSelection({}, {} solutions)", self.case_tag(), self.0.solutions.len())
    }
}

/// Decide ESA of the radial operator with indicial polynomial D_{m,n,ℓ}(c; ·).
#[pyfunction]
#[pyo3(signature = (m, n, c, l = 0, max_precision_bits = None))]
fn decide(
    py: Python<'_>,
    m: u32,
    n: u32,
    c: &Bound<'_, PyAny>,
    l: u32,
    max_precision_bits: Option<u32>,
) -> PyResult<PyEsaVerdict> {
    let spec = IndicialSpec::new(m, n, l, rational(c)?).map_err(py_err)?;
    let cfg = config(max_precision_bits);
    py.detach(|| esa::esa_decide_radial_with(&spec, &cfg)).map(PyEsaVerdict).map_err(py_err)
}

/// ESA region of one radial operator.
#[pyfunction]
#[pyo3(signature = (m, n, l = 0))]
fn region(py: Python<'_>, m: u32, n: u32, l: u32) -> PyResult<PyEsaRegion> {
    py.detach(|| esa::esa_region_radial(m, n, l)).map(PyEsaRegion).map_err(py_err)
}

/// ESA region of the full operator, intersected over 0 ≤ ℓ ≤ l_max.
#[pyfunction]
#[pyo3(signature = (m, n, l_max = 50))]
fn full_region(py: Python<'_>, m: u32, n: u32, l_max: u32) -> PyResult<PyEsaRegion> {
    py.detach(|| esa::esa_region_full(m, n, l_max)).map(PyEsaRegion).map_err(py_err)
}

/// γ_{m,n,ℓ} as (exact text or None, float).
#[pyfunction]
#[pyo3(signature = (m, n, l = 0))]
fn gamma_threshold(py: Python<'_>, m: u32, n: u32, l: u32) -> PyResult<(Option<String>, f64)> {
    let t = py.detach(|| esa::gamma_threshold(m, n, l)).map_err(py_err)?;
    Ok((t.value.exact_string(), t.value.to_f64()))
}

/// (left, axis, right) counts of D_{m,n,ℓ}(c; ·) relative to Re z = −1/2.
#[pyfunction]
#[pyo3(signature = (m, n, c, l = 0))]
fn halfplane_count(m: u32, n: u32, c: &Bound<'_, PyAny>, l: u32) -> PyResult<(usize, usize, usize)> {
    let spec = IndicialSpec::new(m, n, l, rational(c)?).map_err(py_err)?;
    let h = stability::halfplane_count(&euler_esa::build_indicial(&spec)).map_err(py_err)?;
    Ok((h.left, h.axis, h.right))
}

/// Certified roots as (re, im, radius, multiplicity), ordered by real part.
#[pyfunction]
#[pyo3(signature = (m, n, c, l = 0, precision_bits = 128))]
fn certified_roots(m: u32, n: u32, c: &Bound<'_, PyAny>, l: u32, precision_bits: u32) -> PyResult<Vec<(f64, f64, f64, usize)>> {
    let spec = IndicialSpec::new(m, n, l, rational(c)?).map_err(py_err)?;
    let set = roots::certified_roots(&euler_esa::build_indicial(&spec), precision_bits).map_err(py_err)?;
    Ok(set.roots.iter().map(|r| (r.re_f64(), r.im_f64(), r.radius_f64(), r.multiplicity)).collect())
}

/// (line k's, parabola k's) containing (c₁, c₂).
#[pyfunction]
fn classify_resonance(c1: &Bound<'_, PyAny>, c2: &Bound<'_, PyAny>) -> PyResult<(Vec<u64>, Vec<u64>)> {
    let r = frobenius::classify_resonance(&rational(c1)?, &rational(c2)?);
    Ok((r.line_memberships, r.parabola_memberships))
}

#[pyfunction]
#[pyo3(signature = (c1, c2, lam = Complex64::new(1.0, 0.0)))]
fn select_fundamental_system(c1: &Bound<'_, PyAny>, c2: &Bound<'_, PyAny>, lam: Complex64) -> PyResult<PyBasisSelection> {
    Ok(PyBasisSelection(frobenius::select_fundamental_system(&rational(c1)?, &rational(c2)?, lam)))
}

/// ₀F₃(;b₁,b₂,b₃;z) with a certified tail below `tol`.
#[pyfunction]
#[pyo3(signature = (b, z, tol = 1e-15))]
fn eval_0f3(b: [Complex64; 3], z: Complex64, tol: f64) -> PyResult<Complex64> {
    frobenius::eval_0f3(b, z, tol).map_err(py_err)
}

#[pymodule(name = "euler_esa")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEsaVerdict>()?;
    m.add_class::<PyEsaRegion>()?;
    m.add_class::<PyBasisSelection>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(region, m)?)?;
    m.add_function(wrap_pyfunction!(full_region, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(halfplane_count, m)?)?;
    m.add_function(wrap_pyfunction!(certified_roots, m)?)?;
    m.add_function(wrap_pyfunction!(classify_resonance, m)?)?;
    m.add_function(wrap_pyfunction!(select_fundamental_system, m)?)?;
    m.add_function(wrap_pyfunction!(eval_0f3, m)?)?;
    Ok(())
}
