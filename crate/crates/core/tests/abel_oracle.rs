//! Return-map series against the independent fixed-step integrator, and
//! the center verdicts on constructed instances.

mod common;

use abelab_core::abel::{center_verdict, epsilon_linear_obstructions, numeric_flow, return_map};
use abelab_core::moment::{find_composition_condition, mixed_moments};
use abelab_core::poly::{Endpoints, Poly};
use abelab_core::rat::{rat, rat_int, Rat};
use common::*;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

/// Halve the coefficient scale until the series tail at orders 9 and 10
/// is small enough for the `1e-12` agreement budget at `y0 = 1e-2`.
fn tame(mut p: Poly, mut q: Poly, e: &Endpoints) -> (Poly, Poly) {
    let half = rat(1, 2);
    for _ in 0..12 {
        let probe = return_map(&p, &q, e, 10);
        let tail: f64 = probe
            .nonzero_coeffs()
            .iter()
            .filter(|(k, _, _)| *k >= 9)
            .map(|(_, _, w)| w.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum();
        if tail <= 1e4 {
            break;
        }
        p = p.scale(&half);
        q = q.scale(&half);
    }
    (p, q)
}

fn small_endpoints() -> impl Strategy<Value = Endpoints> {
    (-2i64..=1, 1i64..=2, 1i64..=2).prop_map(|(an, ad, d)| {
        let a = rat(an, 2 * ad);
        let b = &a + &rat(d, 2);
        Endpoints::new(a, b).expect("distinct")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The truncated series at order 8 agrees with the integrator to
    /// `1e-12` at `y0 = 1e-2` on tame instances.
    #[test]
    fn series_agrees_with_integrator(
        (p0, q0, e, eps_pick) in (arb_poly(2), arb_poly(2), small_endpoints(), 0usize..3)
    ) {
        let (p, q) = tame(p0, q0, &e);
        let eps = [-1.0, 0.0, 1.0][eps_pick];
        let rm = return_map(&p, &q, &e, 8);
        let series = rm.eval_series(1e-2, eps);
        let numeric = numeric_flow(&p, &q, &e, eps, 1e-2, 4096).unwrap();
        prop_assert!(
            (series - numeric).abs() < 1e-12,
            "series {} vs numeric {} (diff {:.3e})",
            series,
            numeric,
            (series - numeric).abs()
        );
    }

    /// Composition-condition pairs are parametric centers up to order 8.
    #[test]
    fn composition_pairs_are_centers(
        (p_tilde, q_tilde, w, e) in arb_composition_instance()
    ) {
        let p_cap = p_tilde.compose(&w);
        let q_cap = q_tilde.compose(&w);
        let p = p_cap.derivative();
        let q = q_cap.derivative();
        let rm = return_map(&p, &q, &e, 8);
        let verdict = center_verdict(&rm, &[rat_int(0), rat_int(1), rat_int(-1)]);
        prop_assert!(verdict.is_parametric_center, "{:?}", verdict.first_obstruction);
        prop_assert!(verdict.is_center_at.iter().all(|(_, ok)| *ok));
        // the ε-linear column vanishes along with everything else
        prop_assert!(epsilon_linear_obstructions(&rm).iter().all(Rat::is_zero));
    }

    /// Pairs whose antiderivatives differ at the endpoints obstruct
    /// immediately at `(2, 0)`; witness-free pairs with matching
    /// endpoint values are reported (not asserted) since no order bound
    /// is available.
    #[test]
    fn obstructions_appear_for_non_composition_pairs(
        (p, q, e) in (arb_poly_of_degree(2), arb_poly_of_degree(3), small_endpoints())
    ) {
        let p_cap = p.antiderivative();
        let q_cap = q.antiderivative();
        let delta_p = p_cap.eval(e.b()) - p_cap.eval(e.a());
        let rm = return_map(&p, &q, &e, 8);
        let verdict = center_verdict(&rm, &[]);
        if !delta_p.is_zero() {
            prop_assert_eq!(verdict.first_obstruction, Some((2, 0, delta_p)));
        } else if find_composition_condition(&p_cap, &q_cap, &e).is_none()
            && verdict.is_parametric_center
        {
            // desk-scale evidence only: log the unresolved case
            eprintln!(
                "no witness and no obstruction up to order 8: p = {}, q = {}",
                p, q
            );
        }
    }

    /// When the endpoint values of `P` match and all mixed moments up to
    /// the default bound vanish, the `ε⁰` and `ε¹` columns vanish.
    #[test]
    fn moment_vanishing_controls_low_eps_columns(
        (p_tilde, q_tilde, w, e) in arb_composition_instance()
    ) {
        let p_cap = p_tilde.compose(&w);
        let q_cap = q_tilde.compose(&w);
        if p_cap.degree().map_or(true, |d| d < 1) || q_cap.degree().map_or(true, |d| d < 1) {
            return Ok(());
        }
        let bound = abelab_core::moment::default_bound(&p_cap, &q_cap).min(12);
        let (pdq, qdp) = mixed_moments(&p_cap, &q_cap, &e, bound);
        prop_assert!(pdq.all_zero && qdp.all_zero);
        prop_assert_eq!(p_cap.eval(e.a()), p_cap.eval(e.b()));
        let rm = return_map(&p_cap.derivative(), &q_cap.derivative(), &e, 8);
        for k in 2..=8 {
            prop_assert_eq!(rm.coeff(k, 0), Rat::zero());
            prop_assert_eq!(rm.coeff(k, 1), Rat::zero());
        }
    }
}

#[test]
fn epsilon_column_on_type1_instance() {
    // single-direction moment vanishing also empties the ε-linear column
    let p_cap = Poly::from_ints(&[0, 0, 1, 0, -2, 0, 1]);
    let q_cap = Poly::from_ints(&[0, -1, 1, 1]);
    let e = Endpoints::new(rat_int(-1), rat_int(1)).unwrap();
    let (pdq, _) = mixed_moments(&p_cap, &q_cap, &e, 20);
    assert!(pdq.all_zero);
    let rm = return_map(&p_cap.derivative(), &q_cap.derivative(), &e, 8);
    for value in epsilon_linear_obstructions(&rm) {
        assert_eq!(value, Rat::zero());
    }
}

#[test]
fn negative_control_obstruction() {
    let p = Poly::from_ints(&[0, 2]);
    let q = Poly::from_ints(&[0, 0, 3]);
    let e = Endpoints::new(rat_int(-1), rat_int(1)).unwrap();
    let rm = return_map(&p, &q, &e, 8);
    let verdict = center_verdict(&rm, &[rat_int(1)]);
    assert_eq!(verdict.first_obstruction, Some((3, 1, rat_int(2))));
}
