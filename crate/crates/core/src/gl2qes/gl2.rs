//! The gl(2) realization by first-order operators on polynomials in `t`, and
//! the particular integrals built from it.
//!
//! In the (n+1)-dimensional realization the generators are
//! `J^- = d/dt`, `J^0 = t d/dt - n`, `J^+ = t J^0`, `T^0 = 1`, and the
//! invariant module is the space P_n of polynomials of degree <= n.

use crate::diffop::DiffOp;
use crate::error::QesError;
use crate::scalar::CScalar;

pub const T_VAR: [&str; 1] = ["t"];

/// The four gl(2) generators at representation label `n`.
#[derive(Clone, Debug)]
pub struct Gl2Generators {
    pub n: u32,
    /// Lowering generator `d/dt` (grading -1).
    pub jm: DiffOp,
    /// Euler generator `t d/dt - n` (grading 0).
    pub j0: DiffOp,
    /// Raising generator `t^2 d/dt - n t` (grading +1).
    pub jp: DiffOp,
    /// Central element `1`.
    pub t0: DiffOp,
}

impl Gl2Generators {
    pub fn new(n: u32) -> Self {
        let jm = DiffOp::derivative(&T_VAR, 0);
        let mut j0 = DiffOp::term(&T_VAR, &[1], &[1], CScalar::one());
        j0 = &j0 - &DiffOp::identity(&T_VAR).scale(&CScalar::from_int(n as i64));
        let mut jp = DiffOp::term(&T_VAR, &[2], &[1], CScalar::one());
        jp = &jp - &DiffOp::term(&T_VAR, &[1], &[0], CScalar::from_int(n as i64));
        Gl2Generators {
            n,
            jm,
            j0,
            jp,
            t0: DiffOp::identity(&T_VAR),
        }
    }
}

/// Particular integral `i_n^(k)` of the gl(2) module: for `k = -1` it is
/// `(J^-)^(n+1)`; for `0 <= k <= n` it is
/// `(J^-)^(n-k) prod_{j=0}^{k} (J^0_n + j)`. Every one of them has P_n as
/// its space of zero modes, so it commutes with any operator preserving P_n
/// when both are restricted there.
pub fn pi_integral_gl2(n: u32, k: i64) -> Result<DiffOp, QesError> {
    if k < -1 || k > n as i64 {
        return Err(QesError::GradingOutOfRange { n: n as i64, k });
    }
    let g = Gl2Generators::new(n);
    if k == -1 {
        return Ok(g.jm.pow(n + 1)?);
    }
    let mut prod = DiffOp::identity(&T_VAR);
    for j in 0..=k {
        let factor = &g.j0 + &DiffOp::identity(&T_VAR).scale(&CScalar::from_int(j));
        prod = prod.compose(&factor)?;
    }
    let lower = g.jm.pow((n as i64 - k) as u32)?;
    Ok(lower.compose(&prod)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::multipoly::MultiPoly;

    #[test]
    fn j0_at_n2() {
        let g = Gl2Generators::new(2);
        let mut want = DiffOp::term(&T_VAR, &[1], &[1], CScalar::one());
        want = &want - &DiffOp::identity(&T_VAR).scale(&CScalar::from_int(2));
        assert_eq!(g.j0, want);
    }

    #[test]
    fn structure_relation_j0_jm() {
        // [j0, jm] = -jm for several n
        for n in 0..=5 {
            let g = Gl2Generators::new(n);
            assert_eq!(g.j0.commutator(&g.jm).unwrap(), -&g.jm);
        }
    }

    #[test]
    fn jp_kills_highest_weight() {
        let n = 4u32;
        let g = Gl2Generators::new(n);
        let tn = MultiPoly::monomial(&T_VAR, &[n], CScalar::one());
        assert!(g.jp.apply(&tn).unwrap().is_zero());
    }

    #[test]
    fn jp_is_t_times_j0() {
        for n in 0..=4 {
            let g = Gl2Generators::new(n);
            let t = DiffOp::mul_by(&MultiPoly::var(&T_VAR, 0));
            assert_eq!(g.jp, t.compose(&g.j0).unwrap());
        }
    }

    #[test]
    fn lowest_pi_integral_is_pure_derivative() {
        // n=2, k=-1 -> d^3/dt^3
        let i = pi_integral_gl2(2, -1).unwrap();
        assert_eq!(i, DiffOp::derivative(&T_VAR, 0).pow(3).unwrap());
    }

    #[test]
    fn k0_n1_normal_form() {
        // n=1, k=0: d (t d - 1) = t d^2
        let i = pi_integral_gl2(1, 0).unwrap();
        assert_eq!(i, DiffOp::term(&T_VAR, &[1], &[2], CScalar::one()));
    }

    #[test]
    fn top_integral_kills_module_generator() {
        // n=1, k=1 applied to t is 0
        let i = pi_integral_gl2(1, 1).unwrap();
        let t = MultiPoly::var(&T_VAR, 0);
        assert!(i.apply(&t).unwrap().is_zero());
    }

    #[test]
    fn out_of_range_k() {
        assert!(pi_integral_gl2(3, 4).is_err());
        assert!(pi_integral_gl2(3, -2).is_err());
    }

    #[test]
    fn raising_generator_restriction_at_own_label() {
        // J^+ at n=1 on P_1: 1 -> -t, t -> 0; no leakage
        let g = Gl2Generators::new(1);
        let space = GradedSpace::poly_space("t", 1);
        let r = space.restrict_matrix(&g.jp);
        assert!(r.preserves_space());
        assert_eq!(r.matrix[0][0], CScalar::zero());
        assert_eq!(r.matrix[1][0], CScalar::from_int(-1));
        assert_eq!(r.matrix[0][1], CScalar::zero());
        assert_eq!(r.matrix[1][1], CScalar::zero());
    }

    #[test]
    fn kernel_property_small() {
        for n in 0..=4u32 {
            let space = GradedSpace::poly_space("t", n);
            for k in -1..=(n as i64) {
                let i = pi_integral_gl2(n, k).unwrap();
                assert!(space.annihilated_by(&i), "n={n} k={k}");
            }
        }
    }
}
