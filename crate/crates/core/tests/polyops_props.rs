//! Property tests for the exact kernel: normal-ordering canonicity, Jacobi
//! identities, restriction consistency, and the Poisson bracket laws.

use proptest::prelude::*;

use piqes_core::diffop::DiffOp;
use piqes_core::graded::GradedSpace;
use piqes_core::jsonio;
use piqes_core::multipoly::{MultiIndex, MultiPoly};
use piqes_core::phase::{poisson_bracket, PhaseFunction};
use piqes_core::scalar::CScalar;

const T: [&str; 1] = ["t"];

fn scalar_strategy() -> impl Strategy<Value = CScalar> {
    (-4i64..=4, -2i64..=2).prop_map(|(re, im)| {
        let re = CScalar::from_int(re);
        let im = &CScalar::from_int(im) * &CScalar::i();
        &re + &im
    })
}

fn diffop_strategy() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(((0u32..=3, 0u32..=2), scalar_strategy()), 1..4).prop_map(|terms| {
        let mut op = DiffOp::zero(&T);
        for ((m, d), c) in terms {
            op.add_term(MultiIndex(vec![m]), MultiIndex(vec![d]), c);
        }
        op
    })
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..=4, scalar_strategy()), 1..4).prop_map(|terms| {
        let mut p = MultiPoly::zero(&T);
        for (m, c) in terms {
            p.add_term(MultiIndex(vec![m]), c);
        }
        p
    })
}

fn phase_strategy() -> impl Strategy<Value = PhaseFunction> {
    prop::collection::vec(((0u32..=3, 0u32..=3), scalar_strategy()), 1..4).prop_map(|terms| {
        let mut p = PhaseFunction::zero();
        for ((i, j), c) in terms {
            p = &p + &PhaseFunction::term(i, j, c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in diffop_strategy(), b in diffop_strategy(), c in diffop_strategy()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_matches_application(a in diffop_strategy(), b in diffop_strategy(), q in poly_strategy()) {
        let via_compose = a.compose(&b).unwrap().apply(&q).unwrap();
        let via_apply = a.apply(&b.apply(&q).unwrap()).unwrap();
        prop_assert_eq!(via_compose, via_apply);
    }

    #[test]
    fn commutator_jacobi_identity(a in diffop_strategy(), b in diffop_strategy(), c in diffop_strategy()) {
        let abc = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let bca = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let cab = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        let total = &(&abc + &bca) + &cab;
        prop_assert!(total.is_zero(), "Jacobi residual: {}", total);
    }

    #[test]
    fn commutator_antisymmetry(a in diffop_strategy(), b in diffop_strategy()) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        prop_assert!((&ab + &ba).is_zero());
    }

    #[test]
    fn restriction_reconstructs_application(op in diffop_strategy(), n in 1u32..=4) {
        let space = GradedSpace::poly_space("t", n);
        let r = space.restrict_matrix(&op);
        prop_assume!(r.preserves_space());
        for (j, b) in r.basis.iter().enumerate() {
            let direct = op.apply(&space.basis_poly(b)).unwrap();
            let mut from_matrix = MultiPoly::zero(&T);
            for (i, bi) in r.basis.iter().enumerate() {
                from_matrix.add_term(bi.clone(), r.matrix[i][j].clone());
            }
            prop_assert_eq!(direct, from_matrix);
        }
    }

    #[test]
    fn poisson_jacobi(f in phase_strategy(), g in phase_strategy(), h in phase_strategy()) {
        let fgh = poisson_bracket(&f, &poisson_bracket(&g, &h));
        let ghf = poisson_bracket(&g, &poisson_bracket(&h, &f));
        let hfg = poisson_bracket(&h, &poisson_bracket(&f, &g));
        let total = &(&fgh + &ghf) + &hfg;
        prop_assert!(total.is_zero());
    }

    #[test]
    fn poisson_leibniz(f in phase_strategy(), g in phase_strategy(), h in phase_strategy()) {
        let left = poisson_bracket(&f, &(&g * &h));
        let right = &(&poisson_bracket(&f, &g) * &h) + &(&g * &poisson_bracket(&f, &h));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn diffop_json_round_trip(op in diffop_strategy()) {
        let j = jsonio::diffop_to_json(&op);
        let text = serde_json::to_string(&j).unwrap();
        let parsed: jsonio::PolyJson = serde_json::from_str(&text).unwrap();
        let back = jsonio::diffop_from_json(&parsed).unwrap();
        prop_assert_eq!(back, op);
    }
}
