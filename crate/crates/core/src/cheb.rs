//! Chebyshev polynomials and the Chebyshev coefficient basis.
//!
//! `cheb_t` and `cheb_u` build the first- and second-kind polynomials by
//! their three-term recurrences; `cheb_t_explicit` is an independent
//! closed-form route used to cross-check the recurrence. `ChebSeries`
//! is a polynomial expressed in the `T_i` basis; conversion both ways is
//! an exact triangular basis change.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::poly::{Endpoints, Poly};
use crate::rat::{rat, rat_int, Rat};

/// First-kind Chebyshev polynomial `T_n` via `T_k = 2x T_{k-1} - T_{k-2}`.
pub fn cheb_t(n: usize) -> Poly {
    match n {
        0 => Poly::one(),
        1 => Poly::x(),
        _ => {
            let two_x = Poly::from_ints(&[0, 2]);
            let mut prev = Poly::one();
            let mut cur = Poly::x();
            for _ in 2..=n {
                let next = &(&two_x * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Second-kind Chebyshev polynomial `U_n`; satisfies `T_n' = n U_{n-1}`.
pub fn cheb_u(n: usize) -> Poly {
    match n {
        0 => Poly::one(),
        1 => Poly::from_ints(&[0, 2]),
        _ => {
            let two_x = Poly::from_ints(&[0, 2]);
            let mut prev = Poly::one();
            let mut cur = Poly::from_ints(&[0, 2]);
            for _ in 2..=n {
                let next = &(&two_x * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Closed-form coefficients of `T_n`:
/// `(n/2) Σ_k (-1)^k ((n-k-1)!/(k!(n-2k)!)) (2x)^(n-2k)`.
///
/// Independent of the recurrence; kept as a second route for tests.
pub fn cheb_t_explicit(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let mut coeffs = vec![Rat::zero(); n + 1];
    let mut factorials = vec![BigInt::one()];
    for k in 1..=n {
        let next = factorials[k - 1].clone() * BigInt::from(k);
        factorials.push(next);
    }
    for k in 0..=n / 2 {
        // (n/2) * (-1)^k * (n-k-1)! / (k! (n-2k)!) * 2^(n-2k)
        let numer =
            &factorials[n - k - 1] * BigInt::from(2u32).pow((n - 2 * k) as u32) * BigInt::from(n);
        let denom = &factorials[k] * &factorials[n - 2 * k] * BigInt::from(2);
        let mut term = Rat::new(numer, denom);
        if k % 2 == 1 {
            term = -term;
        }
        coeffs[n - 2 * k] = term;
    }
    Poly::from_coeffs(coeffs)
}

/// Closed-form `U_n = Σ_k (-1)^k C(n-k, k) (2x)^(n-2k)`.
pub fn cheb_u_explicit(n: usize) -> Poly {
    let mut coeffs = vec![Rat::zero(); n + 1];
    for k in 0..=n / 2 {
        let binom = binomial(BigInt::from(n - k), BigInt::from(k));
        let mut term = Rat::from_integer(binom * BigInt::from(2u32).pow((n - 2 * k) as u32));
        if k % 2 == 1 {
            term = -term;
        }
        coeffs[n - 2 * k] = term;
    }
    Poly::from_coeffs(coeffs)
}

/// The rescaled polynomial `2 T_s(x/2)`: monic of degree `s`, with
/// initial terms `x^s - s x^(s-2) + (s(s-3)/2) x^(s-4) - ...`.
pub fn cheb_star(s: usize) -> Poly {
    cheb_t(s).stretch(&rat(1, 2)).scale(&rat_int(2))
}

/// A polynomial written in the Chebyshev basis: `d[i]` multiplies `T_i`.
///
/// Canonical form trims trailing zeros, so the top index always carries
/// a nonzero coefficient (empty for the zero polynomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebSeries {
    d: Vec<Rat>,
}

impl ChebSeries {
    pub fn from_coeffs(mut d: Vec<Rat>) -> Self {
        while d.last().map_or(false, |c| c.is_zero()) {
            d.pop();
        }
        ChebSeries { d }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.d
    }

    /// Top index `n` with `d[n] ≠ 0`; `None` for the zero series.
    pub fn top_index(&self) -> Option<usize> {
        self.d.len().checked_sub(1)
    }

    /// Coefficient counted from the top: `ch(i) = d[n-i]`.
    pub fn ch(&self, i: usize) -> Option<Rat> {
        let n = self.top_index()?;
        if i > n {
            return None;
        }
        Some(self.d[n - i].clone())
    }
}

/// Exact change of basis from monomials to the Chebyshev basis, by
/// back-substitution against the triangular system of `T_n` leading
/// coefficients.
pub fn to_cheb(p: &Poly) -> ChebSeries {
    let mut rest = p.clone();
    let n = match rest.degree() {
        None => return ChebSeries { d: Vec::new() },
        Some(n) => n,
    };
    let mut d = vec![Rat::zero(); n + 1];
    while let Some(k) = rest.degree() {
        let tk = cheb_t(k);
        let coeff = rest.leading().expect("nonzero") / tk.leading().expect("nonzero");
        rest = &rest - &tk.scale(&coeff);
        if let Some(deg_after) = rest.degree() {
            debug_assert!(deg_after < k);
        }
        d[k] = coeff;
    }
    ChebSeries::from_coeffs(d)
}

/// Inverse of [`to_cheb`]: assemble `Σ d[i] T_i` in the monomial basis.
pub fn from_cheb(series: &ChebSeries) -> Poly {
    let mut acc = Poly::zero();
    for (i, c) in series.d.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &cheb_t(i).scale(c);
        }
    }
    acc
}

/// Whether `T_m(a) = T_m(b)` exactly.
pub fn endpoint_relation(m: usize, e: &Endpoints) -> bool {
    let t = cheb_t(m);
    t.eval(e.a()) == t.eval(e.b())
}

/// Whether every nonzero `d[i]` with `i ≥ 1` has `i` divisible by at
/// least one of `divisors`.
pub fn support_pattern_check(series: &ChebSeries, divisors: &[usize]) -> bool {
    series
        .d
        .iter()
        .enumerate()
        .skip(1)
        .all(|(i, c)| c.is_zero() || divisors.iter().any(|&m| m != 0 && i % m == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases_and_small_values() {
        assert_eq!(cheb_t(0), Poly::one());
        assert_eq!(cheb_t(1), Poly::x());
        assert_eq!(cheb_t(3), Poly::from_ints(&[0, -3, 0, 4]));
        assert_eq!(cheb_t(6), Poly::from_ints(&[-1, 0, 18, 0, -48, 0, 32]));
        assert_eq!(cheb_u(1), Poly::from_ints(&[0, 2]));
        assert_eq!(cheb_u(2), Poly::from_ints(&[-1, 0, 4]));
    }

    #[test]
    fn t6_is_t2_of_t3() {
        assert_eq!(cheb_t(2).compose(&cheb_t(3)), cheb_t(6));
    }

    #[test]
    fn derivative_matches_second_kind() {
        assert_eq!(cheb_t(6).derivative(), cheb_u(5).scale(&rat_int(6)));
    }

    #[test]
    fn explicit_forms_match_recurrences() {
        for n in 0..=20 {
            assert_eq!(cheb_t_explicit(n), cheb_t(n), "T_{}", n);
            assert_eq!(cheb_u_explicit(n), cheb_u(n), "U_{}", n);
        }
    }

    #[test]
    fn star_polynomials() {
        assert_eq!(cheb_star(1), Poly::x());
        assert_eq!(cheb_star(2), Poly::from_ints(&[-2, 0, 1]));
        let s6 = cheb_star(6);
        assert_eq!(s6, Poly::from_ints(&[-2, 0, 9, 0, -6, 0, 1]));
        assert!(s6.is_monic());
        // initial terms x^s - s x^(s-2) + (s(s-3)/2) x^(s-4)
        for s in 4..=12 {
            let p = cheb_star(s);
            assert_eq!(p.coeff_from_top(0), Some(rat_int(1)));
            assert_eq!(p.coeff_from_top(1), Some(rat_int(0)));
            assert_eq!(p.coeff_from_top(2), Some(rat_int(-(s as i64))));
            assert_eq!(p.coeff_from_top(3), Some(rat_int(0)));
            assert_eq!(p.coeff_from_top(4), Some(rat(s as i64 * (s as i64 - 3), 2)));
        }
    }

    #[test]
    fn basis_conversion_examples() {
        let s = to_cheb(&Poly::from_ints(&[0, 0, 1]));
        assert_eq!(s.coeffs(), &[rat(1, 2), rat_int(0), rat(1, 2)]);
        assert_eq!(s.ch(2), Some(rat(1, 2)));

        let s3 = to_cheb(&Poly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(s3.coeffs(), &[rat_int(0), rat(3, 4), rat_int(0), rat(1, 4)]);

        let t5 = to_cheb(&cheb_t(5));
        assert_eq!(t5.top_index(), Some(5));
        assert_eq!(t5.ch(0), Some(rat_int(1)));
        for i in 1..=5 {
            assert_eq!(t5.ch(i), Some(rat_int(0)));
        }

        let mixed = to_cheb(&(&cheb_t(6) + &cheb_t(3).scale(&rat_int(5))));
        assert_eq!(mixed.ch(3), Some(rat_int(5)));
        assert_eq!(mixed.ch(0), Some(rat_int(1)));
    }

    #[test]
    fn basis_conversion_roundtrip() {
        let p = Poly::from_coeffs(vec![
            rat(1, 3),
            rat_int(-2),
            rat(5, 2),
            rat_int(0),
            rat_int(7),
        ]);
        assert_eq!(from_cheb(&to_cheb(&p)), p);
        assert_eq!(to_cheb(&Poly::zero()).top_index(), None);
    }

    #[test]
    fn endpoint_relations() {
        let e = Endpoints::new(rat(1, 2), rat(-1, 2)).unwrap();
        assert!(endpoint_relation(2, &e));
        assert!(!endpoint_relation(3, &e)); // T_3(1/2) = -1, T_3(-1/2) = 1
    }

    #[test]
    fn support_patterns() {
        let q = to_cheb(&(&cheb_t(6) + &(&cheb_t(10) + &cheb_t(15))));
        assert!(support_pattern_check(&q, &[6, 10, 15]));
        assert!(!support_pattern_check(&to_cheb(&cheb_t(7)), &[3, 5]));
        // constant term is exempt
        let with_const = to_cheb(&(&cheb_t(6) + &Poly::constant(rat_int(4))));
        assert!(support_pattern_check(&with_const, &[3]));
    }
}
