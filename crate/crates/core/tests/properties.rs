mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn polynomial_ring_axioms(p in poly(3), q in poly(3), r in poly(3)) {
        ring_axioms((p, q, r))?;
    }

    #[test]
    fn exact_division_undoes_multiplication(p in poly(3), q in poly(3)) {
        divide_exact((p, q))?;
    }

    #[test]
    fn products_of_homogeneous_are_homogeneous(p in poly(3), q in poly(3), dp in 0i32..4, dq in 0i32..4) {
        homogeneity((p, q, dp, dq))?;
    }

    #[test]
    fn substitution_commutes_with_evaluation(p in poly(3), q in poly(3), pt in prop::collection::vec(rational(), 5)) {
        substitute_evaluate((p, q, pt))?;
    }

    #[test]
    fn frobenius_algebra_axioms(v1 in aelem(1), v2 in aelem(2), v3 in aelem(3)) {
        frobenius_axioms((v1, v2, v3))?;
    }

    #[test]
    fn moves_keep_the_potential(m in moves()) {
        potential_invariance(m)?;
    }

    #[test]
    fn gauss_reduce_keeps_euler_and_homology(d in braid()) {
        gauss_reduce_preserves(d)?;
    }

    #[test]
    fn edge_algebra_rewriting_is_confluent(input in web_input()) {
        webalg_confluence(input)?;
    }
}
