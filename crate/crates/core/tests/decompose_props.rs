//! Decomposition round trips, uniqueness, and the degree-two span lemma.

mod common;

use abelab_core::decompose::{common_right_factor, reduce_pair, right_factor};
use abelab_core::poly::{Endpoints, Poly};
use abelab_core::rat::Rat;
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Composing and re-splitting returns exactly the inputs.
    #[test]
    fn right_factor_round_trip(
        (outer, inner) in (2usize..=4, 2usize..=4).prop_flat_map(|(od, id)| {
            (arb_poly_of_degree(od), arb_monic_zero_const(id))
        })
    ) {
        let p = outer.compose(&inner);
        let d = inner.degree().unwrap();
        let found = right_factor(&p, d).unwrap().unwrap();
        prop_assert_eq!(found.inner, inner);
        prop_assert_eq!(found.outer, outer);
    }

    /// Two successful splits at the same inner degree agree (the normal
    /// form kills the degree-one ambiguity).
    #[test]
    fn right_factor_is_unique(
        (outer, inner) in (arb_poly_of_degree(2), arb_monic_zero_const(3))
    ) {
        let p = outer.compose(&inner);
        let first = right_factor(&p, 3).unwrap().unwrap();
        let second = right_factor(&p, 3).unwrap().unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(first.outer.compose(&first.inner), p);
    }

    /// Reducing a reduced pair is the identity.
    #[test]
    fn reduce_pair_idempotent(
        ((outer_p, outer_q), w) in (
            (arb_poly_of_degree(2), arb_poly_of_degree(3)),
            arb_monic_zero_const(2),
        )
    ) {
        let p = outer_p.compose(&w);
        let q = outer_q.compose(&w);
        let (pt, qt, w_found) = reduce_pair(&p, &q);
        prop_assert_eq!(pt.compose(&w_found), p);
        prop_assert_eq!(qt.compose(&w_found), q);
        let (pt2, qt2, w2) = reduce_pair(&pt, &qt);
        prop_assert_eq!(w2, Poly::x());
        prop_assert_eq!(&pt2, &pt);
        prop_assert_eq!(&qt2, &qt);
        prop_assert_eq!(common_right_factor(&pt, &qt), None);
    }

    /// Two quadratics agreeing at two distinct points span each other
    /// affinely: `w₂ = λ₁ w₁ + λ₂`, with the λ's solved exactly.
    #[test]
    fn quadratics_with_shared_endpoint_values_are_affinely_related(
        (a, delta, lead1, lead2, c1, c2) in (
            arb_rat(),
            arb_nonzero_rat(),
            arb_nonzero_rat(),
            arb_nonzero_rat(),
            arb_rat(),
            arb_rat(),
        )
    ) {
        let b = &a + &delta;
        let e = Endpoints::new(a.clone(), b.clone()).unwrap();
        let sum = &a + &b;
        let make = |lead: &Rat, constant: &Rat| {
            Poly::from_coeffs(vec![constant.clone(), -(lead * &sum), lead.clone()])
        };
        let w1 = make(&lead1, &c1);
        let w2 = make(&lead2, &c2);
        prop_assert_eq!(w1.eval(e.a()), w1.eval(e.b()));
        prop_assert_eq!(w2.eval(e.a()), w2.eval(e.b()));
        // solve the 2x2 system from the x² and x coefficients
        let lambda1 = w2.coeff(2) / w1.coeff(2);
        prop_assert_eq!(w2.coeff(1), &lambda1 * &w1.coeff(1));
        let lambda2 = w2.coeff(0) - &lambda1 * &w1.coeff(0);
        let rebuilt = &w1.scale(&lambda1) + &Poly::constant(lambda2);
        prop_assert_eq!(rebuilt, w2);
    }
}
