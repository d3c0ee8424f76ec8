//! Chebyshev identities and the coefficient-support lemmas.

mod common;

use abelab_core::cheb::{cheb_t, cheb_t_explicit, cheb_u, from_cheb, to_cheb};
use abelab_core::poly::Poly;
use abelab_core::rat::{rat_int, Rat};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn semigroup_property() {
    for n in 1..=12 {
        for m in 1..=12 {
            assert_eq!(cheb_t(n).compose(&cheb_t(m)), cheb_t(n * m), "{} {}", n, m);
            assert_eq!(cheb_t(m).compose(&cheb_t(n)), cheb_t(n * m));
        }
    }
}

#[test]
fn parity_and_endpoint_values() {
    for n in 0..=30 {
        let t = cheb_t(n);
        let reflected = t.stretch(&rat_int(-1));
        let expected = if n % 2 == 0 { t.clone() } else { (-&t).clone() };
        assert_eq!(reflected, expected, "parity of T_{}", n);
        assert_eq!(t.eval(&rat_int(1)), rat_int(1), "T_{}(1)", n);
        assert_eq!(
            t.eval(&rat_int(-1)),
            rat_int(if n % 2 == 0 { 1 } else { -1 }),
            "T_{}(-1)",
            n
        );
    }
}

#[test]
fn closed_form_matches_term_by_term() {
    for n in 0..=20 {
        assert_eq!(cheb_t(n), cheb_t_explicit(n), "T_{}", n);
    }
}

#[test]
fn derivative_identity() {
    for n in 1..=20 {
        assert_eq!(
            cheb_t(n).derivative(),
            cheb_u(n - 1).scale(&rat_int(n as i64)),
            "T_{}'",
            n
        );
    }
}

/// Coprime two-modulus sums and their forced coefficient gaps.
fn coprime_pairs() -> Vec<(usize, usize)> {
    vec![(3, 4), (3, 5), (4, 5), (3, 7), (5, 7), (4, 7), (5, 6)]
}

fn gap_instance(
    m1: usize,
    m2: usize,
    v1: &Poly,
    v2: &Poly,
) -> Option<abelab_core::cheb::ChebSeries> {
    let q = &v1.compose(&cheb_t(m1)) + &v2.compose(&cheb_t(m2));
    let series = to_cheb(&q);
    series.top_index()?;
    Some(series)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficient_gap_implications(
        (idx, v1, v2) in (0usize..7, arb_poly_of_degree(2), arb_poly_of_degree(2))
    ) {
        let (m1, m2) = coprime_pairs()[idx];
        let series = match gap_instance(m1, m2, &v1, &v2) {
            Some(s) => s,
            None => return Ok(()),
        };
        prop_assert!(abelab_core::cheb::support_pattern_check(&series, &[m1, m2]));
        let n = series.top_index().unwrap();
        if n < 6 {
            return Ok(());
        }
        let ch = |i: usize| series.ch(i).unwrap_or_else(Rat::zero);
        // a nonzero first coefficient forces the second to vanish
        if !ch(1).is_zero() {
            prop_assert!(ch(2).is_zero());
            // and a nonzero third pins the smaller modulus to 3
            if !ch(3).is_zero() {
                prop_assert!(m1 == 3 || m2 == 3);
                prop_assert!(ch(4).is_zero());
            }
        }
        // one of the even-index coefficients always vanishes
        prop_assert!(
            ch(2).is_zero() || ch(4).is_zero() || ch(6).is_zero(),
            "no even gap for ({}, {})", m1, m2
        );
    }

    #[test]
    fn conversion_round_trip(p in arb_poly(8)) {
        prop_assert_eq!(from_cheb(&to_cheb(&p)), p);
    }

    #[test]
    fn series_of_composition_is_supported_on_multiples(
        (v, m) in (arb_poly_of_degree(2), 2usize..=5)
    ) {
        let series = to_cheb(&v.compose(&cheb_t(m)));
        prop_assert!(abelab_core::cheb::support_pattern_check(&series, &[m]));
    }
}
