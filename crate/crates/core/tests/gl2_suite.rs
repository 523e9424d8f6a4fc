//! gl(2) module suites: structure relations, kernel and involution
//! properties of the particular integrals, grading action, and the
//! t-representation commutant of the sextic operator.

use piqes_core::diffop::DiffOp;
use piqes_core::gl2qes::{pi_integral_gl2, verify_commutant, Gl2Generators, SexticModel};
use piqes_core::graded::GradedSpace;
use piqes_core::multipoly::MultiPoly;
use piqes_core::scalar::{CScalar, Rational};

fn rat(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

#[test]
fn structure_relations_up_to_n10() {
    for n in 0..=10u32 {
        let g = Gl2Generators::new(n);
        assert_eq!(g.j0.commutator(&g.jm).unwrap(), -&g.jm, "[j0,jm] n={n}");
        assert_eq!(g.j0.commutator(&g.jp).unwrap(), g.jp, "[j0,jp] n={n}");
        let want = &g.j0.scale(&CScalar::from_int(2)) + &g.t0.scale(&CScalar::from_int(n as i64));
        assert_eq!(g.jm.commutator(&g.jp).unwrap(), want, "[jm,jp] n={n}");
    }
}

#[test]
fn kernel_property_up_to_n8() {
    for n in 0..=8u32 {
        let space = GradedSpace::poly_space("t", n);
        for k in -1..=(n as i64) {
            let i = pi_integral_gl2(n, k).unwrap();
            assert!(space.annihilated_by(&i), "n={n} k={k}");
        }
    }
}

#[test]
fn involution_up_to_n6() {
    for n in 0..=6u32 {
        let space = GradedSpace::poly_space("t", n);
        let integrals: Vec<DiffOp> = (-1..=(n as i64))
            .map(|k| pi_integral_gl2(n, k).unwrap())
            .collect();
        for a in &integrals {
            for b in &integrals {
                let rep = verify_commutant(a, b, &space).unwrap();
                assert!(rep.exact_zero, "n={n}");
            }
        }
    }
}

#[test]
fn grading_action_on_overflow_monomials() {
    // i_n^(k) t^m for m > n: degree drops by n-k, leading coefficient is
    // prod_{j=0}^{k} (m-n+j) times the falling factorial m!/(m-(n-k))!
    for n in 1..=4u32 {
        for k in 0..=(n as i64) {
            let i = pi_integral_gl2(n, k).unwrap();
            for m in (n + 1)..=(n + 4) {
                let tm = MultiPoly::monomial(&["t"], &[m], CScalar::one());
                let img = i.apply(&tm).unwrap();
                let expected_deg = m - (n - k as u32);
                assert_eq!(img.degree_in(0), expected_deg, "n={n} k={k} m={m}");
                let mut lead = rat(1);
                for j in 0..=k {
                    lead *= rat(m as i64 - n as i64 + j);
                }
                for step in 0..(n as i64 - k) {
                    lead *= rat(m as i64 - step);
                }
                let got = img.coeff(&piqes_core::multipoly::MultiIndex(vec![expected_deg]));
                assert_eq!(got, CScalar::from_rational(lead), "n={n} k={k} m={m}");
            }
        }
    }
}

#[test]
fn sextic_t_representation_commutant() {
    // [h2p, i_n(t)] annihilates P_n, with i_n(t) the k = n integral
    for (n, q) in [(0u32, 0u8), (1, 0), (2, 1), (3, 0), (4, 1)] {
        let m = SexticModel::new(
            n,
            q,
            Rational::new(3.into(), 2.into()),
            Rational::new((-1).into(), 2.into()),
        )
        .unwrap();
        let i_n = pi_integral_gl2(n, n as i64).unwrap();
        let space = GradedSpace::poly_space("t", n);
        let rep = verify_commutant(&m.h2p, &i_n, &space).unwrap();
        assert!(rep.exact_zero, "n={n} q={q}");
    }
}

#[test]
fn polynomial_eigenfunctions_stay_in_module() {
    // the sextic block matrix reproduces h2p exactly on P_n
    let m = SexticModel::new(3, 1, rat(1), rat(2)).unwrap();
    let space = GradedSpace::poly_space("t", 3);
    let r = space.restrict_matrix(&m.h2p);
    assert!(r.preserves_space());
    assert_eq!(r.dim(), 4);
}
