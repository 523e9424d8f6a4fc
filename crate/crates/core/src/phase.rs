//! Phase-space functions: polynomials in (x, p) with the canonical Poisson
//! bracket `{f, g} = df/dx dg/dp - df/dp dg/dx`.

use crate::multipoly::MultiPoly;
use crate::scalar::CScalar;
use std::ops::{Add, Mul, Neg, Sub};

pub const PHASE_VARS: [&str; 2] = ["x", "p"];
const X: usize = 0;
const P: usize = 1;

/// Polynomial function on the (x, p) phase plane over Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhaseFunction(MultiPoly);

impl PhaseFunction {
    pub fn zero() -> Self {
        PhaseFunction(MultiPoly::zero(&PHASE_VARS))
    }

    pub fn constant(c: CScalar) -> Self {
        PhaseFunction(MultiPoly::constant(&PHASE_VARS, c))
    }

    pub fn x() -> Self {
        PhaseFunction(MultiPoly::var(&PHASE_VARS, X))
    }

    pub fn p() -> Self {
        PhaseFunction(MultiPoly::var(&PHASE_VARS, P))
    }

    /// Single term `c * x^i p^j`.
    pub fn term(i: u32, j: u32, c: CScalar) -> Self {
        PhaseFunction(MultiPoly::monomial(&PHASE_VARS, &[i, j], c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        assert_eq!(p.vars(), &PHASE_VARS);
        PhaseFunction(p)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn deriv_x(&self) -> Self {
        PhaseFunction(self.0.deriv(X))
    }

    pub fn deriv_p(&self) -> Self {
        PhaseFunction(self.0.deriv(P))
    }

    pub fn degree_x(&self) -> u32 {
        self.0.degree_in(X)
    }

    pub fn degree_p(&self) -> u32 {
        self.0.degree_in(P)
    }

    /// Restriction to the zero-momentum axis.
    pub fn at_p_zero(&self) -> Self {
        PhaseFunction(self.0.set_var_zero(P))
    }

    pub fn scale(&self, c: &CScalar) -> Self {
        PhaseFunction(self.0.scale(c))
    }

    pub fn eval_f64(&self, x: f64, p: f64) -> (f64, f64) {
        self.0.eval_f64(&[(x, 0.0), (p, 0.0)])
    }

    pub fn eval_exact(&self, x: &CScalar, p: &CScalar) -> CScalar {
        self.0.eval_exact(&[x.clone(), p.clone()])
    }
}

/// Canonical Poisson bracket, exact.
pub fn poisson_bracket(f: &PhaseFunction, g: &PhaseFunction) -> PhaseFunction {
    let fx = f.0.deriv(X);
    let fp = f.0.deriv(P);
    let gx = g.0.deriv(X);
    let gp = g.0.deriv(P);
    PhaseFunction(&(&fx * &gp) - &(&fp * &gx))
}

impl Add for &PhaseFunction {
    type Output = PhaseFunction;
    fn add(self, rhs: &PhaseFunction) -> PhaseFunction {
        PhaseFunction(&self.0 + &rhs.0)
    }
}

impl Sub for &PhaseFunction {
    type Output = PhaseFunction;
    fn sub(self, rhs: &PhaseFunction) -> PhaseFunction {
        PhaseFunction(&self.0 - &rhs.0)
    }
}

impl Mul for &PhaseFunction {
    type Output = PhaseFunction;
    fn mul(self, rhs: &PhaseFunction) -> PhaseFunction {
        PhaseFunction(&self.0 * &rhs.0)
    }
}

impl Neg for &PhaseFunction {
    type Output = PhaseFunction;
    fn neg(self) -> PhaseFunction {
        PhaseFunction(-&self.0)
    }
}
