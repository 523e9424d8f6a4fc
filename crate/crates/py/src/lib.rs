//! Python bindings: the exact operator kernel (polynomials, differential
//! operators, graded spaces), the gl(2)/sextic constructions, the classical
//! certificates, the 1D eigensolver, and the Calogero-Sutherland suites.
//!
//! Exact scalars cross the boundary as `"p/q"` strings; reports come back as
//! plain Python structures.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::str::FromStr;

use piqes_core::classmech;
use piqes_core::diffop::DiffOp;
use piqes_core::gl2qes;
use piqes_core::graded::GradedSpace;
use piqes_core::jsonio;
use piqes_core::multipoly::MultiPoly;
use piqes_core::scalar::Rational;
use piqes_core::schrodnum;
use piqes_core::weylcs;

fn parse_rational(s: &str) -> PyResult<Rational> {
    Rational::from_str(s).map_err(|e| PyValueError::new_err(format!("bad rational '{s}': {e}")))
}

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Sparse multivariate polynomial with exact Gaussian-rational coefficients.
#[pyclass(name = "MultiPoly", skip_from_py_object)]
#[derive(Clone)]
struct PyMultiPoly {
    inner: MultiPoly,
}

#[pymethods]
impl PyMultiPoly {
    /// Builds from the JSON schema {variables, terms:[{mon, re, im}]}.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: jsonio::PolyJson = serde_json::from_str(text).map_err(value_err)?;
        Ok(PyMultiPoly {
            inner: jsonio::multipoly_from_json(&j).map_err(value_err)?,
        })
    }

    /// Single monomial c * prod vars[i]^exp[i], with c = "p/q".
    #[staticmethod]
    fn monomial(vars: Vec<String>, exp: Vec<u32>, coeff: &str) -> PyResult<Self> {
        let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let c = piqes_core::scalar::CScalar::from_rational(parse_rational(coeff)?);
        Ok(PyMultiPoly {
            inner: MultiPoly::monomial(&refs, &exp, c),
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&jsonio::multipoly_to_json(&self.inner)).unwrap()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> u32 {
        self.inner.total_degree()
    }

    fn __add__(&self, other: &PyMultiPoly) -> PyResult<Self> {
        if !self.inner.same_vars(&other.inner) {
            return Err(PyValueError::new_err("variable-list mismatch"));
        }
        Ok(PyMultiPoly {
            inner: &self.inner + &other.inner,
        })
    }

    fn __mul__(&self, other: &PyMultiPoly) -> PyResult<Self> {
        if !self.inner.same_vars(&other.inner) {
            return Err(PyValueError::new_err("variable-list mismatch"));
        }
        Ok(PyMultiPoly {
            inner: &self.inner * &other.inner,
        })
    }

    fn __eq__(&self, other: &PyMultiPoly) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }
}

/// Normal-ordered differential operator with polynomial coefficients.
#[pyclass(name = "DiffOp", skip_from_py_object)]
#[derive(Clone)]
struct PyDiffOp {
    inner: DiffOp,
}

#[pymethods]
impl PyDiffOp {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: jsonio::PolyJson = serde_json::from_str(text).map_err(value_err)?;
        Ok(PyDiffOp {
            inner: jsonio::diffop_from_json(&j).map_err(value_err)?,
        })
    }

    /// The derivative d/d(vars[index]).
    #[staticmethod]
    fn derivative(vars: Vec<String>, index: usize) -> PyResult<Self> {
        if index >= vars.len() {
            return Err(PyValueError::new_err("variable index out of range"));
        }
        let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        Ok(PyDiffOp {
            inner: DiffOp::derivative(&refs, index),
        })
    }

    /// Multiplication operator by a polynomial.
    #[staticmethod]
    fn mul_by(p: &PyMultiPoly) -> Self {
        PyDiffOp {
            inner: DiffOp::mul_by(&p.inner),
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&jsonio::diffop_to_json(&self.inner)).unwrap()
    }

    fn order(&self) -> u32 {
        self.inner.order()
    }

    fn compose(&self, other: &PyDiffOp) -> PyResult<Self> {
        Ok(PyDiffOp {
            inner: self.inner.compose(&other.inner).map_err(value_err)?,
        })
    }

    fn commutator(&self, other: &PyDiffOp) -> PyResult<Self> {
        Ok(PyDiffOp {
            inner: self.inner.commutator(&other.inner).map_err(value_err)?,
        })
    }

    fn apply(&self, p: &PyMultiPoly) -> PyResult<PyMultiPoly> {
        Ok(PyMultiPoly {
            inner: self.inner.apply(&p.inner).map_err(value_err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// True iff the operator maps every basis monomial of the weighted
    /// space {t^p : f.p <= n} to exactly zero.
    fn annihilates(&self, n: u32, weights: Vec<u32>) -> PyResult<bool> {
        if weights.len() != self.inner.vars().len() {
            return Err(PyValueError::new_err("weight vector arity mismatch"));
        }
        let refs = self.inner.var_refs();
        Ok(GradedSpace::new(&refs, n, &weights).annihilated_by(&self.inner))
    }

    fn __eq__(&self, other: &PyDiffOp) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &PyDiffOp) -> PyResult<Self> {
        if self.inner.vars() != other.inner.vars() {
            return Err(PyValueError::new_err("variable-list mismatch"));
        }
        Ok(PyDiffOp {
            inner: &self.inner + &other.inner,
        })
    }

    fn __sub__(&self, other: &PyDiffOp) -> PyResult<Self> {
        if self.inner.vars() != other.inner.vars() {
            return Err(PyValueError::new_err("variable-list mismatch"));
        }
        Ok(PyDiffOp {
            inner: &self.inner - &other.inner,
        })
    }

    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }
}

/// The four gl(2) generators at representation label n, as (jm, j0, jp, t0).
#[pyfunction]
fn gl2_generators(n: u32) -> (PyDiffOp, PyDiffOp, PyDiffOp, PyDiffOp) {
    let g = gl2qes::Gl2Generators::new(n);
    (
        PyDiffOp { inner: g.jm },
        PyDiffOp { inner: g.j0 },
        PyDiffOp { inner: g.jp },
        PyDiffOp { inner: g.t0 },
    )
}

/// Particular integral i_n^(k) in the t representation, k in [-1, n].
#[pyfunction]
fn pi_integral_gl2(n: u32, k: i64) -> PyResult<PyDiffOp> {
    Ok(PyDiffOp {
        inner: gl2qes::pi_integral_gl2(n, k).map_err(value_err)?,
    })
}

/// Sextic model data: returns a dict with the algebraic operator, the
/// Hamiltonian in x, the particular integral in x, and potential
/// coefficients as exact strings.
#[pyfunction]
fn sextic_model<'py>(
    py: Python<'py>,
    n: u32,
    q: u8,
    a: &str,
    b: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let m = gl2qes::SexticModel::new(n, q, parse_rational(a)?, parse_rational(b)?)
        .map_err(value_err)?;
    let i = gl2qes::sextic_pi_integral_quantum(&m);
    let d = PyDict::new(py);
    d.set_item("n", n)?;
    d.set_item("q", q)?;
    d.set_item(
        "h2p",
        PyDiffOp {
            inner: m.h2p.clone(),
        },
    )?;
    d.set_item(
        "hamiltonian_x",
        PyDiffOp {
            inner: m.hamiltonian_x(),
        },
    )?;
    d.set_item("pi_integral_x", PyDiffOp { inner: i.expanded })?;
    d.set_item(
        "v6",
        (
            m.v6.0.to_string(),
            m.v6.1.to_string(),
            m.v6.2.to_string(),
            m.v6.3.to_string(),
        ),
    )?;
    Ok(d)
}

/// Exact block spectrum of an operator restricted to P_n: returns
/// (eigenvalues as (re, im) pairs, characteristic polynomial strings,
/// max residual).
#[pyfunction]
fn qes_block_spectrum<'py>(py: Python<'py>, h: &PyDiffOp, n: u32) -> PyResult<Bound<'py, PyDict>> {
    let s = gl2qes::qes_block_spectrum(&h.inner, n).map_err(value_err)?;
    let d = PyDict::new(py);
    let evs: Vec<(f64, f64)> = s.eigenvalues.iter().map(|z| (z.re, z.im)).collect();
    d.set_item("eigenvalues", evs)?;
    d.set_item(
        "char_poly",
        s.char_poly
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
    )?;
    d.set_item(
        "max_residual",
        s.residuals.iter().cloned().fold(0.0f64, f64::max),
    )?;
    Ok(d)
}

/// Exact commutant check of [h, i] on P_n (weights all 1).
#[pyfunction]
fn verify_commutant<'py>(
    py: Python<'py>,
    h: &PyDiffOp,
    i: &PyDiffOp,
    n: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let var = h.inner.vars()[0].clone();
    let space = GradedSpace::poly_space(&var, n);
    let rep = gl2qes::verify_commutant(&h.inner, &i.inner, &space).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("exact_zero", rep.exact_zero)?;
    d.set_item("checked", rep.checked)?;
    Ok(d)
}

/// Lowest eigenvalues of -d^2/dx^2 + V6 in the parity sector of the model.
#[pyfunction]
fn sextic_spectrum_numeric(n: u32, q: u8, a: &str, b: &str, count: usize) -> PyResult<Vec<f64>> {
    let m = gl2qes::SexticModel::new(n, q, parse_rational(a)?, parse_rational(b)?)
        .map_err(value_err)?;
    let l = schrodnum::sextic_half_width(&m);
    let parity = if q == 0 {
        schrodnum::Parity::Even
    } else {
        schrodnum::Parity::Odd
    };
    let grid = schrodnum::GridSpec::new(l, 1500, parity).map_err(value_err)?;
    schrodnum::eigen_1d(&schrodnum::PotentialSpec::Sextic(m), &grid, count).map_err(value_err)
}

/// Classical data: bracket certificate, special points, value of the
/// integral at the origin, and drift diagnostics of a trajectory.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn classical_report<'py>(
    py: Python<'py>,
    n: u32,
    q: u8,
    a: &str,
    b: &str,
    x0: f64,
    p0: f64,
    t_max: f64,
    dt: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let m = gl2qes::SexticModel::new(n, q, parse_rational(a)?, parse_rational(b)?)
        .map_err(value_err)?;
    let cm = classmech::classical_functions(&m);
    let cert = classmech::bracket_vanishing_certificate(&cm).map_err(value_err)?;
    let pts = classmech::special_points(&cm);
    let traj = classmech::integrate(&cm, x0, p0, t_max, dt, 1000);
    let d = PyDict::new(py);
    d.set_item("certificate_holds", cert.holds())?;
    d.set_item("integral_at_origin", cm.integral_at_origin().to_string())?;
    d.set_item(
        "special_points",
        pts.iter().map(|p| p.x).collect::<Vec<f64>>(),
    )?;
    d.set_item("max_h_drift", traj.max_h_drift)?;
    d.set_item("max_i_drift", traj.max_i_drift)?;
    d.set_item("blew_up", traj.blew_up)?;
    Ok(d)
}

/// Rational Calogero-Sutherland suite for the A family.
#[pyfunction]
fn cs_rational_report<'py>(
    py: Python<'py>,
    rank: usize,
    nu: &str,
    omega: &str,
    n_max: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let rs = weylcs::RootSystemModel::new_a(rank, parse_rational(nu)?, parse_rational(omega)?)
        .map_err(value_err)?;
    let chart = weylcs::invariants_rational(&rs);
    let op = weylcs::gauge_rotate(&rs, &chart).map_err(value_err)?;
    let f = weylcs::detect_characteristic_vector(&op.h, n_max, 4).map_err(value_err)?;
    let t_refs: Vec<&str> = chart.t_vars.iter().map(|s| s.as_str()).collect();
    let cap = if rank >= 2 { n_max.min(3) } else { n_max };
    let commutant_ok = (0..=cap).all(|n| {
        let space = GradedSpace::new(&t_refs, n, &f);
        weylcs::verify_cs_commutant(&op.h, &space)
            .map(|r| r.exact_zero)
            .unwrap_or(false)
    });
    let d = PyDict::new(py);
    d.set_item("e0", op.e0.to_string())?;
    d.set_item("characteristic_vector", f)?;
    d.set_item("algebraic", op.algebraicity_witness)?;
    d.set_item("commutant_exact_zero", commutant_ok)?;
    d.set_item("h", PyDiffOp { inner: op.h })?;
    Ok(d)
}

/// Rank-1 trigonometric suite.
#[pyfunction]
fn sutherland_a1_report<'py>(
    py: Python<'py>,
    beta: &str,
    mu: &str,
    n_max: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let model = weylcs::trig::sutherland_a1_model(&parse_rational(beta)?, &parse_rational(mu)?)
        .map_err(value_err)?;
    let flags = model.verify_flag(n_max).map_err(value_err)?;
    let all_ok = flags.iter().all(|(_, p, r)| *p && r.exact_zero);
    let d = PyDict::new(py);
    d.set_item("e0", model.e0.to_string())?;
    d.set_item("algebraic", model.algebraicity_witness)?;
    d.set_item("flag_exact_zero", all_ok)?;
    d.set_item("h", PyDiffOp { inner: model.h })?;
    Ok(d)
}

/// Poisson bracket of two phase-plane polynomials given as JSON (variables
/// must be ["x", "p"]).
#[pyfunction]
fn poisson_bracket(f: &PyMultiPoly, g: &PyMultiPoly) -> PyResult<PyMultiPoly> {
    let to_phase = |p: &MultiPoly| -> PyResult<piqes_core::phase::PhaseFunction> {
        if p.vars() != ["x", "p"] {
            return Err(PyValueError::new_err("phase functions live in (x, p)"));
        }
        Ok(piqes_core::phase::PhaseFunction::from_poly(p.clone()))
    };
    let bracket = piqes_core::phase::poisson_bracket(&to_phase(&f.inner)?, &to_phase(&g.inner)?);
    Ok(PyMultiPoly {
        inner: bracket.poly().clone(),
    })
}

#[pymodule]
fn piqes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultiPoly>()?;
    m.add_class::<PyDiffOp>()?;
    m.add_function(wrap_pyfunction!(gl2_generators, m)?)?;
    m.add_function(wrap_pyfunction!(pi_integral_gl2, m)?)?;
    m.add_function(wrap_pyfunction!(sextic_model, m)?)?;
    m.add_function(wrap_pyfunction!(qes_block_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_commutant, m)?)?;
    m.add_function(wrap_pyfunction!(sextic_spectrum_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(classical_report, m)?)?;
    m.add_function(wrap_pyfunction!(cs_rational_report, m)?)?;
    m.add_function(wrap_pyfunction!(sutherland_a1_report, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_bracket, m)?)?;
    Ok(())
}
