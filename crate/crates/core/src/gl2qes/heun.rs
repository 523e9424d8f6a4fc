//! The nine-parameter quadratic element of the gl(2) enveloping algebra and
//! its printed form `-P4(t) d^2 + P3(t) d + P2(t)` (a Heun-class operator).

use super::gl2::{Gl2Generators, T_VAR};
use crate::diffop::DiffOp;
use crate::multipoly::MultiPoly;
use crate::scalar::{CScalar, Rational};
use rand::Rng;

/// The nine real parameters of the general quadratic combination
/// `c_pp J+J+ + c_p0 J+J0 + c_pm J+J- + c_0m J0J- + c_mm J-J-
///  + c_p J+ + c_0 J0 + c_m J- + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeunCoeffs {
    pub c_pp: Rational,
    pub c_p0: Rational,
    pub c_pm: Rational,
    pub c_0m: Rational,
    pub c_mm: Rational,
    pub c_p: Rational,
    pub c_0: Rational,
    pub c_m: Rational,
    pub c: Rational,
}

impl HeunCoeffs {
    pub fn zero() -> Self {
        let z = Rational::default;
        HeunCoeffs {
            c_pp: z(),
            c_p0: z(),
            c_pm: z(),
            c_0m: z(),
            c_mm: z(),
            c_p: z(),
            c_0: z(),
            c_m: z(),
            c: z(),
        }
    }

    /// Seeded small-integer draw used by the randomized verification suites.
    pub fn random_small<R: Rng>(rng: &mut R) -> Self {
        let mut draw = || Rational::from_integer(rng.gen_range(-3i64..=3).into());
        HeunCoeffs {
            c_pp: draw(),
            c_p0: draw(),
            c_pm: draw(),
            c_0m: draw(),
            c_mm: draw(),
            c_p: draw(),
            c_0: draw(),
            c_m: draw(),
            c: draw(),
        }
    }

    /// Variant without any raising content: such elements preserve the whole
    /// flag P_0 ⊂ P_1 ⊂ ... and stay exactly solvable.
    pub fn random_lower_triangular<R: Rng>(rng: &mut R) -> Self {
        let mut c = Self::random_small(rng);
        c.c_pp = Rational::default();
        c.c_p0 = Rational::default();
        c.c_pm = Rational::default();
        c.c_p = Rational::default();
        c
    }

    pub fn as_list(&self) -> [(&'static str, &Rational); 9] {
        [
            ("c_pp", &self.c_pp),
            ("c_p0", &self.c_p0),
            ("c_pm", &self.c_pm),
            ("c_0m", &self.c_0m),
            ("c_mm", &self.c_mm),
            ("c_p", &self.c_p),
            ("c_0", &self.c_0),
            ("c_m", &self.c_m),
            ("c", &self.c),
        ]
    }
}

/// The assembled operator together with the polynomials of its printed form,
/// satisfying `h = -p4 d^2 + p3 d + p2` exactly.
#[derive(Clone, Debug)]
pub struct HeunData {
    pub n: u32,
    pub coeffs: HeunCoeffs,
    pub h: DiffOp,
    pub p4: MultiPoly,
    pub p3: MultiPoly,
    pub p2: MultiPoly,
}

/// Substitutes the gl(2) generators into the quadratic combination and
/// extracts the printed-form polynomials from the normal ordering.
pub fn heun_operator(coeffs: &HeunCoeffs, n: u32) -> HeunData {
    let g = Gl2Generators::new(n);
    let r = |q: &Rational| CScalar::from_rational(q.clone());
    let mut h = DiffOp::zero(&T_VAR);
    let quad = [
        (&coeffs.c_pp, &g.jp, &g.jp),
        (&coeffs.c_p0, &g.jp, &g.j0),
        (&coeffs.c_pm, &g.jp, &g.jm),
        (&coeffs.c_0m, &g.j0, &g.jm),
        (&coeffs.c_mm, &g.jm, &g.jm),
    ];
    for (c, a, b) in quad {
        if !c.eq(&Rational::default()) {
            h = &h + &a.compose(b).expect("same variable list").scale(&r(c));
        }
    }
    h = &h + &g.jp.scale(&r(&coeffs.c_p));
    h = &h + &g.j0.scale(&r(&coeffs.c_0));
    h = &h + &g.jm.scale(&r(&coeffs.c_m));
    h = &h + &DiffOp::identity(&T_VAR).scale(&r(&coeffs.c));
    let p4 = -&h.coeff_of_derivative(&[2]);
    let p3 = h.coeff_of_derivative(&[1]);
    let p2 = h.coeff_of_derivative(&[0]);
    HeunData {
        n,
        coeffs: coeffs.clone(),
        h,
        p4,
        p3,
        p2,
    }
}

impl HeunData {
    /// Rebuilds the operator from the extracted polynomials; equals `h`.
    pub fn reassemble(&self) -> DiffOp {
        let d = DiffOp::derivative(&T_VAR, 0);
        let d2 = d.pow(2).unwrap();
        let mut op = DiffOp::mul_by(&-&self.p4).compose(&d2).unwrap();
        op = &op + &DiffOp::mul_by(&self.p3).compose(&d).unwrap();
        &op + &DiffOp::mul_by(&self.p2)
    }
}
