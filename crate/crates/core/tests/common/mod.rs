//! Shared generators for the property-test suites.
#![allow(dead_code)] // each test target uses its own subset

use abelab_core::poly::{Endpoints, Poly};
use abelab_core::rat::{rat, rat_int, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Small rationals with denominators 1..=3.
pub fn arb_rat() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn arb_nonzero_rat() -> impl Strategy<Value = Rat> {
    arb_rat().prop_filter("nonzero", |r| !r.is_zero())
}

/// Polynomials of degree at most `max_deg` (possibly zero).
pub fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(arb_rat(), 0..=(max_deg + 1)).prop_map(Poly::from_coeffs)
}

/// Polynomials of exact degree `deg`.
pub fn arb_poly_of_degree(deg: usize) -> impl Strategy<Value = Poly> {
    (proptest::collection::vec(arb_rat(), deg), arb_nonzero_rat()).prop_map(|(mut coeffs, lead)| {
        coeffs.push(lead);
        Poly::from_coeffs(coeffs)
    })
}

/// Monic polynomials with zero constant term of exact degree `deg ≥ 1`.
pub fn arb_monic_zero_const(deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(arb_rat(), deg - 1).prop_map(move |body| {
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(body);
        coeffs.push(Rat::one());
        Poly::from_coeffs(coeffs)
    })
}

/// An instance of the composition condition: `(p̃, q̃, w, endpoints)`
/// with `w(a) = w(b)`, `a ≠ b`, all degrees ≤ 3 and small rational
/// coefficients. Degree-2 inners get their middle coefficient solved
/// from the endpoints; degree-3 inners are antiderivatives of a
/// quadratic whose integral over `[a, b]` vanishes.
pub fn arb_composition_instance() -> impl Strategy<Value = (Poly, Poly, Poly, Endpoints)> {
    let endpoints = (-4i64..=4, 1i64..=2, 1i64..=4, 1i64..=2).prop_map(|(an, ad, dn, dd)| {
        let a = rat(an, 2 * ad);
        let b = &a + &rat(dn, dd);
        (a, b)
    });
    let tilde = (arb_poly(3), arb_poly(3));
    let inner_choice = prop_oneof![
        // degree 2: w₂x² + w₁x + w₀ with w₁ = -w₂(a+b)
        (arb_nonzero_rat(), arb_rat()).prop_map(|(w2, w0)| (2usize, w2, w0)),
        // degree 3 via the vanishing-integral construction, keyed by u
        (arb_nonzero_rat(), arb_rat()).prop_map(|(lead, u)| (3usize, lead, u)),
    ];
    (endpoints, tilde, inner_choice).prop_filter_map(
        "degree-3 construction needs u off-center",
        |((a, b), (p_tilde, q_tilde), (deg, c0, c1))| {
            let e = Endpoints::new(a.clone(), b.clone())?;
            let sum = &a + &b;
            let w = if deg == 2 {
                let w1 = -(&c0 * &sum);
                Poly::from_coeffs(vec![c1, w1, c0])
            } else {
                // w' = lead·(x - u)(x - v) with ∫_a^b w' = 0
                let u = c1;
                let half_sum = &sum / rat_int(2);
                if u == half_sum {
                    return None;
                }
                let sym = (&a * &a + &a * &b + &b * &b) / rat_int(3);
                let v = (&(&sum * &u) / rat_int(2) - &sym) / (&u - &half_sum);
                let w_prime = Poly::from_coeffs(vec![&u * &v, -(&u + &v), Rat::one()]).scale(&c0);
                w_prime.antiderivative()
            };
            if w.eval(e.a()) != w.eval(e.b()) {
                return None;
            }
            Some((p_tilde, q_tilde, w, e))
        },
    )
}
