//! Classical limit of the sextic model: phase-space Hamiltonian and
//! particular constant of motion, the exact Poisson-bracket divisibility
//! certificate, special equilibrium points, and symplectic trajectory
//! integration with conservation diagnostics.

use crate::error::PolyError;
use crate::gl2qes::sextic::SexticModel;
use crate::phase::{poisson_bracket, PhaseFunction};
use crate::scalar::{rational_to_f64, CScalar, Rational};
use num_traits::Zero;
use serde::Serialize;

/// The sextic model moved to the (x, p) phase plane:
/// `H6 = p^2 + V6(x)` and the complex product
/// `I_n = (1/2^(n+1)) prod_{j=0}^{n} (i x p + a x^4 + b x^2 - q - 2n + 2j)`.
#[derive(Clone, Debug)]
pub struct ClassicalModel {
    pub model: SexticModel,
    pub h6: PhaseFunction,
    pub i_n: PhaseFunction,
}

pub fn classical_functions(m: &SexticModel) -> ClassicalModel {
    let rc = |r: &Rational| CScalar::from_rational(r.clone());
    let (c6, c4, c2, c0) = &m.v6;
    let mut h6 = PhaseFunction::term(0, 2, CScalar::one());
    h6 = &h6 + &PhaseFunction::term(6, 0, rc(c6));
    h6 = &h6 + &PhaseFunction::term(4, 0, rc(c4));
    h6 = &h6 + &PhaseFunction::term(2, 0, rc(c2));
    h6 = &h6 + &PhaseFunction::constant(rc(c0));

    let mut i_n = PhaseFunction::constant(CScalar::one());
    for j in 0..=m.n {
        let mut f = PhaseFunction::term(1, 1, CScalar::i());
        f = &f + &PhaseFunction::term(4, 0, rc(&m.a));
        f = &f + &PhaseFunction::term(2, 0, rc(&m.b));
        let shift = -(m.q as i64) - 2 * m.n as i64 + 2 * j as i64;
        f = &f + &PhaseFunction::constant(CScalar::from_int(shift));
        i_n = &i_n * &f;
    }
    let prefactor = Rational::new(1.into(), num_bigint::BigInt::from(1) << (m.n + 1));
    i_n = i_n.scale(&CScalar::from_rational(prefactor));
    ClassicalModel {
        model: m.clone(),
        h6,
        i_n,
    }
}

impl ClassicalModel {
    /// `V6'` as a phase function (no p dependence).
    pub fn potential_derivative(&self) -> PhaseFunction {
        self.h6.at_p_zero().deriv_x()
    }

    /// Value `I_n(0, 0)`, exact.
    pub fn integral_at_origin(&self) -> CScalar {
        self.i_n.eval_exact(&CScalar::zero(), &CScalar::zero())
    }
}

// ---------------------------------------------------------------------------
// Special points
// ---------------------------------------------------------------------------

/// Exact value `rational + coeff * sqrt(radicand)` over the rationals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadRoot {
    pub rational: String,
    pub coeff: String,
    pub radicand: String,
    #[serde(skip)]
    pub parts: (Rational, Rational, Rational),
}

impl QuadRoot {
    fn new(rational: Rational, coeff: Rational, radicand: Rational) -> Self {
        QuadRoot {
            rational: rational.to_string(),
            coeff: coeff.to_string(),
            radicand: radicand.to_string(),
            parts: (rational, coeff, radicand),
        }
    }

    fn rational_only(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero())
    }

    pub fn to_f64(&self) -> f64 {
        let (r, c, d) = &self.parts;
        rational_to_f64(r) + rational_to_f64(c) * rational_to_f64(d).sqrt()
    }
}

/// An equilibrium of the flow: `p = 0`, `V6'(x) = 0`. The square of the
/// position is kept exact; the float `x` defers the square root.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialPoint {
    pub x: f64,
    /// Exact `x^2`.
    pub u: QuadRoot,
}

/// All real equilibria: `x = 0` always, plus `x = ±sqrt(u)` for the positive
/// root `u` of `6 a^2 u^2 + 8 a b u + 2(b^2 - (4n+3+2q) a) = 0` when `a > 0`.
pub fn special_points(m: &ClassicalModel) -> Vec<SpecialPoint> {
    let model = &m.model;
    let mut points = vec![SpecialPoint {
        x: 0.0,
        u: QuadRoot::rational_only(Rational::zero()),
    }];
    if model.a.is_zero() {
        // V6' = 2 b^2 x with b > 0: only the origin
        return points;
    }
    let k = Rational::from_integer((4 * model.n as i64 + 3 + 2 * model.q as i64).into());
    let three = Rational::from_integer(3.into());
    let two = Rational::from_integer(2.into());
    // u = (-2b + sqrt(b^2 + 3 K a)) / (3a); the minus branch is negative
    let radicand = &model.b * &model.b + &three * &k * &model.a;
    let denom = &three * &model.a;
    let rational = -(&two * &model.b) / &denom;
    let coeff = Rational::from_integer(1.into()) / denom;
    let u = QuadRoot::new(rational, coeff, radicand);
    let x = u.to_f64();
    debug_assert!(x >= 0.0, "positive-branch root must be non-negative");
    let xs = x.sqrt();
    points.push(SpecialPoint {
        x: xs,
        u: u.clone(),
    });
    points.push(SpecialPoint { x: -xs, u });
    points
}

/// Exact evaluation of an even polynomial in x (a polynomial in u = x^2)
/// at `u` in the quadratic extension, as `alpha + beta sqrt(radicand)`.
pub fn eval_even_poly_at_u(poly: &PhaseFunction, u: &QuadRoot) -> Option<(CScalar, CScalar)> {
    let p0 = poly.at_p_zero();
    let (r, c, d) = &u.parts;
    let base_r = CScalar::from_rational(r.clone());
    let base_c = CScalar::from_rational(c.clone());
    let rad = CScalar::from_rational(d.clone());
    let mut alpha = CScalar::zero();
    let mut beta = CScalar::zero();
    for (mono, coef) in p0.poly().terms() {
        let e = mono.0[0];
        if e % 2 != 0 {
            return None;
        }
        // (base_r + base_c sqrt(d))^(e/2)
        let mut vr = CScalar::one();
        let mut vc = CScalar::zero();
        for _ in 0..(e / 2) {
            let nr = &(&vr * &base_r) + &(&(&vc * &base_c) * &rad);
            let nc = &(&vr * &base_c) + &(&vc * &base_r);
            vr = nr;
            vc = nc;
        }
        alpha += &(coef * &vr);
        beta += &(coef * &vc);
    }
    Some((alpha, beta))
}

// ---------------------------------------------------------------------------
// Bracket-vanishing certificate
// ---------------------------------------------------------------------------

/// Witnesses the identity `{H6, I_n} + 2p dI_n/dx = -x V6'(x) Q(p, x)` with
/// polynomial `Q`, by exact division. On the `p = 0` axis this reduces to
/// `{H6, I_n}|_{p=0} = -x V6'(x) Q(0, x)`, which vanishes at every special
/// point.
#[derive(Clone, Debug)]
pub struct BracketCertificate {
    pub q_poly: PhaseFunction,
    /// Division remainder; identically zero when the certificate holds.
    pub residual: PhaseFunction,
    /// The p-free cross-check: quotient of the restricted bracket agrees
    /// with `Q(0, x)` and its remainder vanishes.
    pub p_free_consistent: bool,
}

pub fn bracket_vanishing_certificate(m: &ClassicalModel) -> Result<BracketCertificate, PolyError> {
    bracket_certificate_for(&m.h6, &m.i_n)
}

/// Certificate for a general Hamiltonian of the form `p^2 + V(x)` and a
/// phase-space integral candidate.
pub fn bracket_certificate_for(
    h: &PhaseFunction,
    integral: &PhaseFunction,
) -> Result<BracketCertificate, PolyError> {
    let bracket = poisson_bracket(h, integral);
    let v_prime = h.at_p_zero().deriv_x();
    let x = PhaseFunction::x();
    let divisor = -&(&x * &v_prime);
    // {H, I} + 2p dI/dx = V' dI/dp must equal divisor * Q
    let two_p = PhaseFunction::term(0, 1, CScalar::from_int(2));
    let lhs = &bracket + &(&two_p * &integral.deriv_x());
    let (q_poly, residual) = lhs.poly().div_rem(divisor.poly())?;
    let q_poly = PhaseFunction::from_poly(q_poly);
    let residual = PhaseFunction::from_poly(residual);
    // p-free reduction checked independently
    let (q0, rem0) = bracket.at_p_zero().poly().div_rem(divisor.poly())?;
    let p_free_consistent = rem0.is_zero() && q0 == q_poly.at_p_zero().poly().clone();
    Ok(BracketCertificate {
        q_poly,
        residual,
        p_free_consistent,
    })
}

impl BracketCertificate {
    pub fn holds(&self) -> bool {
        self.residual.is_zero() && self.p_free_consistent
    }
}

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Sample {
    pub time: f64,
    pub x: f64,
    pub p: f64,
    pub h: f64,
    pub i_re: f64,
    pub i_im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub dt: f64,
    pub method: &'static str,
    pub samples: Vec<Sample>,
    /// max_t |H(t) - H(0)| over every integration step.
    pub max_h_drift: f64,
    /// max_t |I(t) - I(0)| (complex modulus) over every integration step.
    pub max_i_drift: f64,
    pub blew_up: bool,
}

/// Fixed-step 4th-order symplectic composition (triple-jump coefficients
/// over the velocity-Verlet kernel) for `H = p^2 + V6(x)`:
/// `dx/dt = 2p`, `dp/dt = -V6'(x)`.
pub fn integrate(
    m: &ClassicalModel,
    x0: f64,
    p0: f64,
    t_max: f64,
    dt: f64,
    sample_stride: usize,
) -> Trajectory {
    assert!(t_max > 0.0 && dt > 0.0);
    let stride = sample_stride.max(1);
    let c6 = rational_to_f64(&m.model.v6.0);
    let c4 = rational_to_f64(&m.model.v6.1);
    let c2 = rational_to_f64(&m.model.v6.2);
    let c0 = rational_to_f64(&m.model.v6.3);
    let force = |x: f64| -(6.0 * c6 * x.powi(5) + 4.0 * c4 * x.powi(3) + 2.0 * c2 * x);
    let energy = |x: f64, p: f64| p * p + c6 * x.powi(6) + c4 * x.powi(4) + c2 * x * x + c0;

    let cbrt2 = 2f64.powf(1.0 / 3.0);
    let w1 = 1.0 / (2.0 - cbrt2);
    let w0 = 1.0 - 2.0 * w1;

    let steps = (t_max / dt).round() as usize;
    let mut x = x0;
    let mut p = p0;
    let h0 = energy(x0, p0);
    let (i0_re, i0_im) = m.i_n.eval_f64(x0, p0);
    let mut samples = vec![Sample {
        time: 0.0,
        x,
        p,
        h: h0,
        i_re: i0_re,
        i_im: i0_im,
    }];
    let mut max_h_drift = 0.0f64;
    let mut max_i_drift = 0.0f64;
    let mut blew_up = false;

    let verlet = |x: &mut f64, p: &mut f64, tau: f64| {
        *p += 0.5 * tau * force(*x);
        *x += tau * 2.0 * *p;
        *p += 0.5 * tau * force(*x);
    };

    for step in 1..=steps {
        verlet(&mut x, &mut p, w1 * dt);
        verlet(&mut x, &mut p, w0 * dt);
        verlet(&mut x, &mut p, w1 * dt);
        let h = energy(x, p);
        let (ire, iim) = m.i_n.eval_f64(x, p);
        max_h_drift = max_h_drift.max((h - h0).abs());
        max_i_drift = max_i_drift.max(((ire - i0_re).powi(2) + (iim - i0_im).powi(2)).sqrt());
        if !x.is_finite() || x.abs() > 1e6 {
            blew_up = true;
            samples.push(Sample {
                time: step as f64 * dt,
                x,
                p,
                h,
                i_re: ire,
                i_im: iim,
            });
            break;
        }
        if step % stride == 0 || step == steps {
            samples.push(Sample {
                time: step as f64 * dt,
                x,
                p,
                h,
                i_re: ire,
                i_im: iim,
            });
        }
    }
    Trajectory {
        dt,
        method: "yoshida4",
        samples,
        max_h_drift,
        max_i_drift,
        blew_up,
    }
}

/// Certificate JSON payload: the polynomial Q and the zero-residual flag.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub q_terms: crate::jsonio::PolyJson,
    pub residual_zero: bool,
    pub p_free_consistent: bool,
}

pub fn certificate_json(c: &BracketCertificate) -> CertificateJson {
    CertificateJson {
        q_terms: crate::jsonio::multipoly_to_json(c.q_poly.poly()),
        residual_zero: c.residual.is_zero(),
        p_free_consistent: c.p_free_consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2qes::sextic::{rational, rational_int};
    use crate::multipoly::MultiIndex;

    fn model(n: u32, q: u8, a: i64, b: i64) -> ClassicalModel {
        classical_functions(&SexticModel::new(n, q, rational_int(a), rational_int(b)).unwrap())
    }

    #[test]
    fn single_factor_integral() {
        // n=0, q=1: I_0 = (1/2)(i x p + a x^4 + b x^2 - 1)
        let m = model(0, 1, 2, 3);
        let mut want = PhaseFunction::term(1, 1, CScalar::i());
        want = &want + &PhaseFunction::term(4, 0, CScalar::from_int(2));
        want = &want + &PhaseFunction::term(2, 0, CScalar::from_int(3));
        want = &want + &PhaseFunction::constant(CScalar::from_int(-1));
        want = want.scale(&CScalar::from_frac(1, 2));
        assert_eq!(m.i_n, want);
    }

    #[test]
    fn integral_at_origin_closed_form() {
        // q=0: zero; q=1: (-1)^(n+1) prod_{j=0}^{n} (1/2 + n - j)
        for n in 0..=6u32 {
            let m0 = model(n, 0, 1, 1);
            assert!(m0.integral_at_origin().is_zero(), "q=0 n={n}");
            let m1 = model(n, 1, 1, 1);
            let mut want = Rational::from_integer(if n % 2 == 0 { (-1).into() } else { 1.into() });
            for j in 0..=n {
                want *= Rational::new((1 + 2 * (n - j) as i64).into(), 2.into());
            }
            assert_eq!(
                m1.integral_at_origin(),
                CScalar::from_rational(want),
                "q=1 n={n}"
            );
        }
        // n=0, q=1 is -1/2
        assert_eq!(
            model(0, 1, 1, 0).integral_at_origin(),
            CScalar::from_frac(-1, 2)
        );
    }

    #[test]
    fn integral_degrees() {
        for n in 0..=3u32 {
            let m = model(n, 1, 1, -1);
            assert_eq!(m.i_n.degree_p(), n + 1);
            assert_eq!(m.i_n.degree_x(), 4 * (n + 1));
            // coefficient of (xp)^(n+1) is i^(n+1)/2^(n+1)
            let coef = m.i_n.poly().coeff(&MultiIndex(vec![n + 1, n + 1]));
            let mut want = CScalar::one();
            for _ in 0..=n {
                want = &want * &CScalar::i();
                want = &want * &CScalar::from_frac(1, 2);
            }
            assert_eq!(coef, want);
        }
    }

    #[test]
    fn special_points_of_double_well() {
        // V = x^6 - 7 x^2: equilibria 0, ±(7/3)^(1/4)
        let m = model(1, 0, 1, 0);
        let pts = special_points(&m);
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0].x, 0.0);
        let want = (7.0f64 / 3.0).powf(0.25);
        assert!((pts[1].x - want).abs() < 1e-14);
        assert!((pts[2].x + want).abs() < 1e-14);
        // V'(x*) = 0 numerically
        let vp = m.potential_derivative();
        for pt in &pts {
            let (re, im) = vp.eval_f64(pt.x, 0.0);
            assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
        }
    }

    #[test]
    fn quartic_free_case_has_origin_only() {
        let m = model(2, 0, 0, 1);
        let pts = special_points(&m);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].x, 0.0);
    }

    #[test]
    fn energy_at_origin_is_reported_verbatim() {
        // H6(0,0) = V6(0) = -b(1+2q)
        let m = model(2, 1, 1, 3);
        let h = m.h6.eval_exact(&CScalar::zero(), &CScalar::zero());
        assert_eq!(h, CScalar::from_int(-9));
    }

    #[test]
    fn certificate_one_factor() {
        let m = model(0, 1, 1, 0);
        let c = bracket_vanishing_certificate(&m).unwrap();
        assert!(c.holds());
        assert!(c.residual.is_zero());
    }

    #[test]
    fn certificate_seeded_models() {
        for (n, q) in [(1u32, 0u8), (2, 1), (3, 0)] {
            let m = classical_functions(
                &SexticModel::new(n, q, rational(3, 2), rational(-2, 3)).unwrap(),
            );
            let c = bracket_vanishing_certificate(&m).unwrap();
            assert!(c.holds(), "n={n} q={q}");
        }
    }

    #[test]
    fn certificate_ignores_constant_shift() {
        let m = model(1, 0, 1, 0);
        let shifted = &m.i_n + &PhaseFunction::constant(CScalar::one());
        let c = bracket_certificate_for(&m.h6, &shifted).unwrap();
        assert!(c.residual.is_zero());
        // the bracket itself is unchanged by the shift
        let b1 = poisson_bracket(&m.h6, &m.i_n);
        let b2 = poisson_bracket(&m.h6, &shifted);
        assert_eq!(b1, b2);
    }

    #[test]
    fn bracket_vanishes_exactly_at_special_points() {
        let m = model(1, 0, 1, 0);
        let bracket = poisson_bracket(&m.h6, &m.i_n);
        for pt in special_points(&m) {
            let (alpha, beta) = eval_even_poly_at_u(&bracket.at_p_zero(), &pt.u).unwrap();
            assert!(alpha.is_zero() && beta.is_zero(), "at x = {}", pt.x);
        }
    }

    #[test]
    fn fixed_point_trajectory() {
        let m = model(1, 0, 1, 0);
        let pts = special_points(&m);
        let pt = &pts[1];
        let traj = integrate(&m, pt.x, 0.0, 5.0, 1e-3, 100);
        assert!(!traj.blew_up);
        for s in &traj.samples {
            assert!((s.x - pt.x).abs() < 1e-10, "x drifted to {}", s.x);
            assert!(s.p.abs() < 1e-10);
        }
        assert!(traj.max_i_drift < 1e-9);
    }

    #[test]
    fn generic_orbit_conserves_h_not_i() {
        // documented generic initial condition: (x0, p0) = (1.1, 0) inside
        // the right-hand well of V = x^6 - 7x^2
        let m = model(1, 0, 1, 0);
        let traj = integrate(&m, 1.1, 0.0, 50.0, 1e-3, 1000);
        assert!(!traj.blew_up);
        assert!(traj.max_h_drift < 1e-8, "H drift {}", traj.max_h_drift);
        assert!(traj.max_i_drift > 1e-3, "I drift {}", traj.max_i_drift);
    }

    #[test]
    fn fourth_order_energy_convergence() {
        let m = model(1, 0, 1, 0);
        let coarse = integrate(&m, 0.3, 0.0, 10.0, 0.02, 10_000);
        let fine = integrate(&m, 0.3, 0.0, 10.0, 0.01, 10_000);
        let ratio = coarse.max_h_drift / fine.max_h_drift;
        assert!(
            ratio > 8.0,
            "expected >= 8x reduction, got {ratio} ({} -> {})",
            coarse.max_h_drift,
            fine.max_h_drift
        );
    }
}
