//! Property tests for the exact polynomial algebra.

mod common;

use abelab_core::poly::Poly;
use abelab_core::rat::{rat_int, Rat};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in (arb_poly(4), arb_poly(4), arb_poly(4))) {
        prop_assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
        prop_assert_eq!(&(&a * &b), &(&b * &a));
        prop_assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
        prop_assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
        prop_assert_eq!(&(&a - &a), &Poly::zero());
    }

    #[test]
    fn compose_is_associative((a, b, c) in (arb_poly(3), arb_poly(3), arb_poly(3))) {
        prop_assert_eq!(
            a.compose(&b.compose(&c)),
            a.compose(&b).compose(&c)
        );
    }

    #[test]
    fn compose_degree_multiplies((a, b) in (arb_poly_of_degree(3), arb_poly_of_degree(2))) {
        prop_assert_eq!(a.compose(&b).degree(), Some(6));
    }

    #[test]
    fn calculus_round_trips(p in arb_poly(5)) {
        prop_assert_eq!(p.antiderivative().derivative(), p.clone());
        let back = p.derivative().antiderivative();
        prop_assert_eq!(back, &p - &Poly::constant(p.coeff(0)));
    }

    #[test]
    fn eval_is_a_ring_map((a, b, x) in (arb_poly(4), arb_poly(4), arb_rat())) {
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    /// Top coefficients of a composition only see the leading term of
    /// the outer factor: with equal degrees and equal leading
    /// coefficients, the first `deg T` coefficients agree.
    #[test]
    fn top_coefficients_ignore_outer_tails(
        (s1_body, s2_body, lead, t) in (
            proptest::collection::vec(arb_rat(), 3),
            proptest::collection::vec(arb_rat(), 3),
            arb_nonzero_rat(),
            arb_poly_of_degree(3),
        )
    ) {
        let mut c1 = s1_body;
        c1.push(lead.clone());
        let s1 = Poly::from_coeffs(c1);
        let mut c2 = s2_body;
        c2.push(lead.clone());
        let s2 = Poly::from_coeffs(c2);
        let monomial = Poly::monomial(lead, 3);
        let d = t.degree().unwrap();
        let f1 = s1.compose(&t);
        let f2 = s2.compose(&t);
        let fm = monomial.compose(&t);
        for i in 0..d {
            prop_assert_eq!(f1.coeff_from_top(i), f2.coeff_from_top(i));
            prop_assert_eq!(f1.coeff_from_top(i), fm.coeff_from_top(i));
        }
    }

    /// With the subleading coefficient of the inner factor zero, the
    /// composed subleading coefficient vanishes exactly when the linear
    /// tail has no shift.
    #[test]
    fn subleading_detects_shift(
        (u, t_body, alpha, beta) in (
            arb_poly_of_degree(2),
            proptest::collection::vec(arb_rat(), 2),
            arb_nonzero_rat(),
            arb_rat(),
        )
    ) {
        // T = x³ + (ignored subleading = 0) + lower terms
        let mut coeffs = t_body;
        coeffs.push(Rat::zero());
        coeffs.push(rat_int(1));
        let t = Poly::from_coeffs(coeffs);
        prop_assert_eq!(t.coeff_from_top(1), Some(Rat::zero()));
        let tail = Poly::from_coeffs(vec![beta.clone(), alpha]);
        let composed = u.compose(&t).compose(&tail);
        let c1 = composed.coeff_from_top(1).unwrap();
        prop_assert_eq!(c1.is_zero(), beta.is_zero());
    }
}
