//! The quasi-exactly-solvable sextic anharmonic oscillator.
//!
//! Model data (n, q, a, b) with q in {0, 1} and a > 0 (any b) or a >= 0 with
//! b > 0. The algebraic operator acts on polynomials in `t = x^2`; the
//! Schroedinger Hamiltonian `-d^2/dx^2 + V6(x)` has `(n+1)` eigenfunctions
//! of the form `x^q p(x^2) exp(-a x^4/4 - b x^2/2)`, and its particular
//! integral is a product of `n+1` commuting first-order factors in `x`.

use super::gl2::T_VAR;
use super::heun::HeunCoeffs;
use crate::diffop::DiffOp;
use crate::error::QesError;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::scalar::{CScalar, Rational};
use num_traits::{Signed, Zero};

pub const X_VAR: [&str; 1] = ["x"];

#[derive(Clone, Debug)]
pub struct SexticModel {
    pub n: u32,
    pub q: u8,
    pub a: Rational,
    pub b: Rational,
    /// Algebraic operator `-4t d^2 + 2(2at^2 + 2bt - 1 - 2q) d - 4ant` in t.
    pub h2p: DiffOp,
    /// Potential coefficients `(v6_6, v6_4, v6_2, v6_0)` of
    /// `V6 = v6_6 x^6 + v6_4 x^4 + v6_2 x^2 + v6_0`.
    pub v6: (Rational, Rational, Rational, Rational),
    /// Gauge phase data `(a/4, b/2, -q/2)` for `A = a t^2/4 + b t/2 - (q/2) ln t`.
    pub gauge: (Rational, Rational, Rational),
}

impl SexticModel {
    pub fn new(n: u32, q: u8, a: Rational, b: Rational) -> Result<Self, QesError> {
        if q > 1 {
            return Err(QesError::InvalidParity { q: q as i64 });
        }
        let a_pos = a.is_positive();
        let a_nonneg = !a.is_negative();
        let b_pos = b.is_positive();
        if !(a_pos || (a_nonneg && b_pos)) {
            return Err(QesError::InvalidSexticDomain {
                a: a.to_string(),
                b: b.to_string(),
            });
        }

        let rc = |r: &Rational| CScalar::from_rational(r.clone());
        let int = |k: i64| Rational::from_integer(k.into());

        let mut h2p = DiffOp::zero(&T_VAR);
        h2p.add_term(
            MultiIndex(vec![1]),
            MultiIndex(vec![2]),
            CScalar::from_int(-4),
        );
        h2p.add_term(MultiIndex(vec![2]), MultiIndex(vec![1]), rc(&(int(4) * &a)));
        h2p.add_term(MultiIndex(vec![1]), MultiIndex(vec![1]), rc(&(int(4) * &b)));
        h2p.add_term(
            MultiIndex(vec![0]),
            MultiIndex(vec![1]),
            CScalar::from_int(-2 - 4 * q as i64),
        );
        h2p.add_term(
            MultiIndex(vec![1]),
            MultiIndex(vec![0]),
            rc(&(int(-4 * n as i64) * &a)),
        );

        let coef2 = &b * &b - int(4 * n as i64 + 3 + 2 * q as i64) * &a;
        let v6 = (
            &a * &a,
            int(2) * &a * &b,
            coef2,
            int(-(1 + 2 * q as i64)) * &b,
        );
        let gauge = (
            &a / int(4),
            &b / int(2),
            Rational::new((-(q as i64)).into(), 2.into()),
        );
        Ok(SexticModel {
            n,
            q,
            a,
            b,
            h2p,
            v6,
            gauge,
        })
    }

    /// Quadratic-combination coefficients reproducing `h2p` through the gl(2)
    /// generators at label n: `-4 J0 J- + 4a J+ + 4b J0 - 2(2n+1+2q) J- + 4bn`.
    pub fn heun_coeffs(&self) -> HeunCoeffs {
        let int = |k: i64| Rational::from_integer(k.into());
        let mut c = HeunCoeffs::zero();
        c.c_0m = int(-4);
        c.c_p = int(4) * &self.a;
        c.c_0 = int(4) * &self.b;
        c.c_m = int(-2 * (2 * self.n as i64 + 1 + 2 * self.q as i64));
        c.c = int(4 * self.n as i64) * &self.b;
        c
    }

    /// `V6` as an exact polynomial in x.
    pub fn potential_poly(&self) -> MultiPoly {
        let mut v = MultiPoly::zero(&X_VAR);
        let (c6, c4, c2, c0) = &self.v6;
        v.add_term(MultiIndex(vec![6]), CScalar::from_rational(c6.clone()));
        v.add_term(MultiIndex(vec![4]), CScalar::from_rational(c4.clone()));
        v.add_term(MultiIndex(vec![2]), CScalar::from_rational(c2.clone()));
        v.add_term(MultiIndex(vec![0]), CScalar::from_rational(c0.clone()));
        v
    }

    /// Schroedinger operator `-d^2/dx^2 + V6(x)` as an exact operator in x.
    pub fn hamiltonian_x(&self) -> DiffOp {
        let d2 = DiffOp::derivative(&X_VAR, 0).pow(2).unwrap();
        &DiffOp::mul_by(&self.potential_poly()) - &d2
    }

    /// Potential value at a float point.
    pub fn potential_at(&self, x: f64) -> f64 {
        let (re, _) = self.potential_poly().eval_f64(&[(x, 0.0)]);
        re
    }
}

/// The particular integral of the sextic model in the x representation:
/// `(1/2^(n+1)) prod_{j=0}^{n} (x d/dx + a x^4 + b x^2 - q - 2n + 2j)`.
/// The factors commute pairwise; both the factored list and the expanded
/// normal form are returned.
#[derive(Clone, Debug)]
pub struct QuantumPiIntegral {
    pub factors: Vec<DiffOp>,
    pub prefactor: Rational,
    pub expanded: DiffOp,
}

pub fn sextic_pi_integral_quantum(m: &SexticModel) -> QuantumPiIntegral {
    let rc = |r: Rational| CScalar::from_rational(r);
    let int = |k: i64| Rational::from_integer(k.into());
    let mut factors = Vec::new();
    for j in 0..=m.n {
        let mut f = DiffOp::term(&X_VAR, &[1], &[1], CScalar::one());
        f.add_term(MultiIndex(vec![4]), MultiIndex(vec![0]), rc(m.a.clone()));
        f.add_term(MultiIndex(vec![2]), MultiIndex(vec![0]), rc(m.b.clone()));
        let shift = int(-(m.q as i64) - 2 * m.n as i64 + 2 * j as i64);
        f.add_term(MultiIndex(vec![0]), MultiIndex(vec![0]), rc(shift));
        factors.push(f);
    }
    let mut expanded = DiffOp::identity(&X_VAR);
    for f in &factors {
        expanded = expanded.compose(f).unwrap();
    }
    let prefactor = Rational::new(1.into(), num_bigint::BigInt::from(1) << (m.n + 1));
    expanded = expanded.scale(&CScalar::from_rational(prefactor.clone()));
    QuantumPiIntegral {
        factors,
        prefactor,
        expanded,
    }
}

impl QuantumPiIntegral {
    /// Recomposes the factored form; must equal `expanded`.
    pub fn compose_factors(&self) -> DiffOp {
        let mut acc = DiffOp::identity(&X_VAR);
        for f in &self.factors {
            acc = acc.compose(f).unwrap();
        }
        acc.scale(&CScalar::from_rational(self.prefactor.clone()))
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn rational_int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

pub fn is_zero_rational(r: &Rational) -> bool {
    r.is_zero()
}
