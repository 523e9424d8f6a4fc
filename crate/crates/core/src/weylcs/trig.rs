//! Rank-1 trigonometric model: relative-coordinate Hamiltonian
//! `-d^2/dr^2 + (beta^2/4) mu(mu-1) / sin^2(beta r / 2)`, gauge-rotated with
//! the ground factor `sin^mu(beta r/2)` and pushed into the single
//! trigonometric invariant `tau = 2 cos(beta r / 2)`.
//!
//! All symbolic work happens in the ring of Laurent elements
//! `(E(c) + O(c) s) / s^k` over `c = cos(beta r/2)`, `s = sin(beta r/2)`
//! with the relation `s^2 = 1 - c^2`. Pole cancellation is then literal:
//! a gauged image is algebraic iff its normal form has `k = 0` and no odd
//! part.

use super::{cs_pi_integral, verify_cs_commutant};
use crate::diffop::DiffOp;
use crate::error::CsError;
use crate::gl2qes::verify::CommutantReport;
use crate::graded::GradedSpace;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::scalar::{CScalar, Rational};

const C_VAR: [&str; 1] = ["c"];
pub const TAU_VAR: [&str; 1] = ["tau"];

/// `(even(c) + odd(c) * s) / s^pow` with `s^2 = 1 - c^2`, kept in the normal
/// form of minimal `pow`.
#[derive(Clone, Debug, PartialEq)]
struct TrigLaurent {
    even: MultiPoly,
    odd: MultiPoly,
    pow: u32,
}

fn one_minus_c2() -> MultiPoly {
    let mut p = MultiPoly::one(&C_VAR);
    p.add_term(MultiIndex(vec![2]), CScalar::from_int(-1));
    p
}

impl TrigLaurent {
    fn from_c_poly(p: MultiPoly) -> Self {
        TrigLaurent {
            even: p,
            odd: MultiPoly::zero(&C_VAR),
            pow: 0,
        }
        .normalized()
    }

    fn with_pole(even: MultiPoly, odd: MultiPoly, pow: u32) -> Self {
        TrigLaurent { even, odd, pow }.normalized()
    }

    fn normalized(mut self) -> Self {
        let rel = one_minus_c2();
        while self.pow >= 1 {
            match self.even.div_exact(&rel) {
                Ok(q) => {
                    let new_even = self.odd.clone();
                    self.even = new_even;
                    self.odd = q;
                    self.pow -= 1;
                }
                Err(_) => break,
            }
        }
        self
    }

    /// Raises the pole order by one (multiplies numerator by s).
    fn raised(&self) -> Self {
        TrigLaurent {
            even: &self.odd * &one_minus_c2(),
            odd: self.even.clone(),
            pow: self.pow + 1,
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while a.pow < b.pow {
            a = a.raised();
        }
        while b.pow < a.pow {
            b = b.raised();
        }
        TrigLaurent {
            even: &a.even + &b.even,
            odd: &a.odd + &b.odd,
            pow: a.pow,
        }
        .normalized()
    }

    fn mul(&self, other: &Self) -> Self {
        let rel = one_minus_c2();
        let even = &(&self.even * &other.even) + &(&(&self.odd * &other.odd) * &rel);
        let odd = &(&self.even * &other.odd) + &(&self.odd * &other.even);
        TrigLaurent {
            even,
            odd,
            pow: self.pow + other.pow,
        }
        .normalized()
    }

    fn scale(&self, k: &CScalar) -> Self {
        TrigLaurent {
            even: self.even.scale(k),
            odd: self.odd.scale(k),
            pow: self.pow,
        }
    }

    fn neg(&self) -> Self {
        self.scale(&CScalar::from_int(-1))
    }

    /// d/dr with `c' = -(beta/2) s`, `s' = (beta/2) c`.
    fn deriv_r(&self, half_beta: &CScalar) -> Self {
        let rel = one_minus_c2();
        let c = MultiPoly::var(&C_VAR, 0);
        // numerator derivative
        let mut even = (&self.odd.deriv(0) * &rel).scale(&-half_beta.clone());
        even = &even + &(&c * &self.odd).scale(half_beta);
        let odd = self.even.deriv(0).scale(&-half_beta.clone());
        let num_part = TrigLaurent {
            even,
            odd,
            pow: self.pow,
        };
        if self.pow == 0 {
            return num_part.normalized();
        }
        // pole derivative: -(pow) (beta/2) c (E + O s) / s^{pow+1}
        let factor = &CScalar::from_int(-(self.pow as i64)) * half_beta;
        let pole_part = TrigLaurent {
            even: (&c * &self.even).scale(&factor),
            odd: (&c * &self.odd).scale(&factor),
            pow: self.pow + 1,
        };
        num_part.add(&pole_part)
    }

    fn is_c_polynomial(&self) -> bool {
        self.pow == 0 && self.odd.is_zero()
    }

    /// Converts to a polynomial in `tau = 2c`.
    fn to_tau_poly(&self) -> Option<MultiPoly> {
        if !self.is_c_polynomial() {
            return None;
        }
        let mut out = MultiPoly::zero(&TAU_VAR);
        for (m, coef) in self.even.terms() {
            let e = m.0[0];
            // c^e = tau^e / 2^e
            let scale =
                CScalar::from_rational(Rational::new(1.into(), num_bigint::BigInt::from(1) << e));
            out.add_term(MultiIndex(vec![e]), coef * &scale);
        }
        Some(out)
    }
}

/// The assembled rank-1 trigonometric model in the invariant variable.
#[derive(Clone, Debug)]
pub struct SutherlandA1 {
    pub beta: Rational,
    pub mu: Rational,
    /// Algebraic operator in `tau`, with `h . 1 = 0`.
    pub h: DiffOp,
    /// Ground energy `mu^2 beta^2 / 4`, found from the constant probe.
    pub e0: Rational,
    pub algebraicity_witness: bool,
}

struct TrigGauge {
    half_beta: CScalar,
    log_deriv: TrigLaurent,
    zero_order: TrigLaurent,
}

impl TrigGauge {
    fn new(beta: &Rational, mu: &Rational) -> Self {
        let half_beta = CScalar::from_rational(beta / Rational::from_integer(2.into()));
        let mu_c = CScalar::from_rational(mu.clone());
        let c = MultiPoly::var(&C_VAR, 0);
        // L' = mu (beta/2) c / s
        let log_deriv =
            TrigLaurent::with_pole(c.scale(&(&mu_c * &half_beta)), MultiPoly::zero(&C_VAR), 1);
        // L'' = -mu (beta/2)^2 / s^2
        let quarter_beta_sq = &half_beta * &half_beta;
        let l2 = TrigLaurent::with_pole(
            MultiPoly::constant(&C_VAR, &(&mu_c * &quarter_beta_sq) * &CScalar::from_int(-1)),
            MultiPoly::zero(&C_VAR),
            2,
        );
        // V = (beta^2/4) mu (mu - 1) / s^2
        let coupling = &(&mu_c * &mu_c) - &mu_c;
        let v = TrigLaurent::with_pole(
            MultiPoly::constant(&C_VAR, &coupling * &quarter_beta_sq),
            MultiPoly::zero(&C_VAR),
            2,
        );
        // zero-order block: V - L'' - L'^2
        let zero_order = v.add(&l2.neg()).add(&log_deriv.mul(&log_deriv).neg());
        TrigGauge {
            half_beta,
            log_deriv,
            zero_order,
        }
    }

    /// Applies `Psi0^{-1} H Psi0` to a polynomial in tau, exactly.
    fn apply_dressed(&self, phi_tau: &MultiPoly) -> Result<TrigLaurent, CsError> {
        // tau = 2c
        let mut phi_c = MultiPoly::zero(&C_VAR);
        for (m, coef) in phi_tau.terms() {
            let e = m.0[0];
            let scale =
                CScalar::from_rational(Rational::from_integer(num_bigint::BigInt::from(1) << e));
            phi_c.add_term(MultiIndex(vec![e]), coef * &scale);
        }
        let phi = TrigLaurent::from_c_poly(phi_c);
        let phi_r = phi.deriv_r(&self.half_beta);
        let phi_rr = phi_r.deriv_r(&self.half_beta);
        // -phi'' - 2 L' phi' + (V - L'' - L'^2) phi
        let mut out = phi_rr.neg();
        out = out.add(&self.log_deriv.mul(&phi_r).scale(&CScalar::from_int(-2)));
        out = out.add(&self.zero_order.mul(&phi));
        Ok(out)
    }
}

/// Builds the gauge-rotated rank-1 trigonometric model by monomial probes in
/// the invariant variable, with held-out validation, the same mechanism the
/// rational construction uses.
pub fn sutherland_a1_model(beta: &Rational, mu: &Rational) -> Result<SutherlandA1, CsError> {
    let gauge = TrigGauge::new(beta, mu);
    let probe = |e: u32| -> Result<MultiPoly, CsError> {
        let phi = MultiPoly::monomial(&TAU_VAR, &[e], CScalar::one());
        let img = gauge.apply_dressed(&phi)?;
        img.to_tau_poly()
            .ok_or_else(|| CsError::NonPolynomialCoefficient {
                witness: format!(
                    "image of tau^{e} keeps a sin-pole of order {} (odd part {})",
                    img.pow, img.odd
                ),
            })
    };

    // constant probe fixes E0
    let h_one = probe(0)?;
    let e0_poly = h_one;
    let e0 = e0_poly
        .as_rational_constant()
        .ok_or_else(|| CsError::NonConstantGroundTerm(e0_poly.to_string()))?;

    let minus_e0 = CScalar::from_rational(-e0.clone());
    let gauged = |e: u32| -> Result<MultiPoly, CsError> {
        let img = probe(e)?;
        let phi = MultiPoly::monomial(&TAU_VAR, &[e], CScalar::one());
        Ok(&img + &phi.scale(&minus_e0))
    };

    // h = A(tau) d^2 + B(tau) d reconstructed from probes tau, tau^2
    let b_poly = gauged(1)?;
    let tau = MultiPoly::var(&TAU_VAR, 0);
    let h_tau2 = gauged(2)?;
    let a_poly =
        (&h_tau2 - &(&tau * &b_poly).scale(&CScalar::from_int(2))).scale(&CScalar::from_frac(1, 2));

    let mut h = DiffOp::zero(&TAU_VAR);
    for (m, c) in a_poly.terms() {
        h.add_term(m.clone(), MultiIndex(vec![2]), c.clone());
    }
    for (m, c) in b_poly.terms() {
        h.add_term(m.clone(), MultiIndex(vec![1]), c.clone());
    }

    // held-out validation on tau^3, tau^4
    let mut witness = true;
    for e in [3u32, 4] {
        let direct = gauged(e)?;
        let via_op = h
            .apply(&MultiPoly::monomial(&TAU_VAR, &[e], CScalar::one()))
            .expect("same variable list");
        if direct != via_op {
            witness = false;
        }
    }
    if !witness {
        return Err(CsError::NonPolynomialCoefficient {
            witness: "held-out probe mismatch in the trigonometric gauge".into(),
        });
    }

    Ok(SutherlandA1 {
        beta: beta.clone(),
        mu: mu.clone(),
        h,
        e0,
        algebraicity_witness: witness,
    })
}

impl SutherlandA1 {
    /// Flag-preservation and exact commutant reports for `n <= n_max`.
    pub fn verify_flag(&self, n_max: u32) -> Result<Vec<(u32, bool, CommutantReport)>, CsError> {
        let mut out = Vec::new();
        for n in 0..=n_max {
            let space = GradedSpace::new(&TAU_VAR, n, &[1]);
            let preserves = space.restrict_matrix(&self.h).preserves_space();
            let rep = verify_cs_commutant(&self.h, &space)?;
            out.push((n, preserves, rep));
        }
        Ok(out)
    }

    /// The particular integral in tau for the degree-n space.
    pub fn pi_integral(&self, n: u32) -> DiffOp {
        cs_pi_integral(&GradedSpace::new(&TAU_VAR, n, &[1]))
    }
}
