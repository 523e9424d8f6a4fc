//! Exact commutant verification: compute `[h, i]` symbolically and apply it
//! to every basis element of the target space. A report either certifies the
//! exact zero or carries the first nonzero witness.

use super::quasipoly::{apply_to_quasipoly, QuasiPoly};
use crate::diffop::DiffOp;
use crate::error::{PolyError, QesError};
use crate::graded::GradedSpace;
use crate::jsonio::{multipoly_to_json, PolyJson};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CommutantWitness {
    /// Exponents of the basis monomial whose image is nonzero.
    pub basis_monomial: Vec<u32>,
    /// The nonzero image polynomial (prefactor, for quasi-polynomial bases).
    pub image: PolyJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantReport {
    pub exact_zero: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CommutantWitness>,
}

impl CommutantReport {
    fn all_zero(checked: usize) -> Self {
        CommutantReport {
            exact_zero: true,
            checked,
            witness: None,
        }
    }
}

/// Checks `[h, i]` against every basis monomial of a graded space.
pub fn verify_commutant(
    h: &DiffOp,
    i: &DiffOp,
    space: &GradedSpace,
) -> Result<CommutantReport, PolyError> {
    let comm = h.commutator(i)?;
    let basis = space.basis();
    for b in &basis {
        let image = comm.apply(&space.basis_poly(b))?;
        if !image.is_zero() {
            return Ok(CommutantReport {
                exact_zero: false,
                checked: basis.len(),
                witness: Some(CommutantWitness {
                    basis_monomial: b.0.clone(),
                    image: multipoly_to_json(&image),
                }),
            });
        }
    }
    Ok(CommutantReport::all_zero(basis.len()))
}

/// Checks `[h, i]` against a list of quasi-polynomial family members
/// (the x-representation of the invariant module).
pub fn verify_commutant_quasi(
    h: &DiffOp,
    i: &DiffOp,
    family: &[QuasiPoly],
) -> Result<CommutantReport, QesError> {
    let comm = h.commutator(i).map_err(QesError::Poly)?;
    for (idx, f) in family.iter().enumerate() {
        let image = apply_to_quasipoly(&comm, f)?;
        if !image.is_zero() {
            return Ok(CommutantReport {
                exact_zero: false,
                checked: family.len(),
                witness: Some(CommutantWitness {
                    basis_monomial: vec![idx as u32],
                    image: multipoly_to_json(image.prefactor()),
                }),
            });
        }
    }
    Ok(CommutantReport::all_zero(family.len()))
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagEntry {
    pub p: u32,
    pub preserves: bool,
    pub commutant_exact_zero: bool,
    /// First failing (m, k) pair if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<(u32, i64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagReport {
    pub p_max: u32,
    pub entries: Vec<FlagEntry>,
    pub all_pass: bool,
}

/// For each `p <= p_max`: does `h` preserve P_p, and does `[h, i_m^(k)]`
/// annihilate P_p for the sampled labels `m in {p, p+1, p+2}` and every
/// admissible `k`? Operators without raising content pass everywhere.
pub fn flag_preservation_report(h: &DiffOp, p_max: u32) -> Result<FlagReport, QesError> {
    let var = h.vars()[0].clone();
    let mut entries = Vec::new();
    let mut all_pass = true;
    for p in 0..=p_max {
        let space = GradedSpace::poly_space(&var, p);
        let preserves = space.restrict_matrix(h).preserves_space();
        let mut commutant_ok = true;
        let mut failure = None;
        'outer: for m in p..=p + 2 {
            for k in -1..=(m as i64) {
                let i = super::gl2::pi_integral_gl2(m, k)?;
                let rep = verify_commutant(h, &i, &space).map_err(QesError::Poly)?;
                if !rep.exact_zero {
                    commutant_ok = false;
                    failure = Some((m, k));
                    break 'outer;
                }
            }
        }
        all_pass &= preserves && commutant_ok;
        entries.push(FlagEntry {
            p,
            preserves,
            commutant_exact_zero: commutant_ok,
            failure,
        });
    }
    Ok(FlagReport {
        p_max,
        entries,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2qes::gl2::pi_integral_gl2;
    use crate::gl2qes::heun::{heun_operator, HeunCoeffs};
    use crate::scalar::Rational;

    fn rat(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    #[test]
    fn random_quadratic_elements_commute_on_pn() {
        let mut rng = crate::seeded_rng(42);
        for n in 0..=3u32 {
            let space = GradedSpace::poly_space("t", n);
            for _ in 0..5 {
                let h = heun_operator(&HeunCoeffs::random_small(&mut rng), n).h;
                for k in -1..=(n as i64) {
                    let i = pi_integral_gl2(n, k).unwrap();
                    let rep = verify_commutant(&h, &i, &space).unwrap();
                    assert!(rep.exact_zero, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn commutant_fails_beyond_module() {
        // raising content breaks the commutant on P_{n+1}
        let mut c = HeunCoeffs::zero();
        c.c_pp = rat(1);
        let n = 2;
        let h = heun_operator(&c, n).h;
        let i = pi_integral_gl2(n, 0).unwrap();
        let big = GradedSpace::poly_space("t", n + 1);
        let rep = verify_commutant(&h, &i, &big).unwrap();
        assert!(!rep.exact_zero);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn integrals_are_in_involution() {
        for n in 0..=3u32 {
            let space = GradedSpace::poly_space("t", n);
            for k in -1..=(n as i64) {
                for m in -1..=(n as i64) {
                    let a = pi_integral_gl2(n, k).unwrap();
                    let b = pi_integral_gl2(n, m).unwrap();
                    let rep = verify_commutant(&a, &b, &space).unwrap();
                    assert!(rep.exact_zero, "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn lower_triangular_elements_preserve_flag() {
        let mut rng = crate::seeded_rng(7);
        let c = HeunCoeffs::random_lower_triangular(&mut rng);
        let h = heun_operator(&c, 3).h;
        let rep = flag_preservation_report(&h, 4).unwrap();
        assert!(rep.all_pass);
        assert!(rep.entries.iter().all(|e| e.preserves));
    }

    #[test]
    fn raising_content_fails_flag() {
        let mut c = HeunCoeffs::zero();
        c.c_p = rat(1);
        let h = heun_operator(&c, 1).h;
        let rep = flag_preservation_report(&h, 3).unwrap();
        assert!(!rep.all_pass);
    }

    #[test]
    fn flag_report_on_constants_only() {
        let c = HeunCoeffs::zero();
        let h = heun_operator(&c, 0).h;
        let rep = flag_preservation_report(&h, 0).unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert!(rep.all_pass);
    }
}
