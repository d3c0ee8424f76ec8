//! Dense univariate polynomials over exact rationals.
//!
//! `Poly` stores coefficients in ascending degree order as a `Vec<Rat>`.
//! Invariant: the vector is either empty (the zero polynomial) or its
//! last element is nonzero, so the representation is canonical and
//! `degree()` is `None` exactly for zero — no integer sentinel ever
//! leaks into arithmetic. All values are immutable after construction
//! and every operation is a pure function.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rat::{rat_int, Rat};

/// A dense univariate polynomial with exact rational coefficients,
/// ascending degree order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    fn normalized(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The zero polynomial (empty coefficient sequence).
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    /// A constant polynomial (zero polynomial when `c` is zero).
    pub fn constant(c: Rat) -> Self {
        Poly::normalized(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        Poly::normalized(coeffs)
    }

    /// Convenience constructor from small integers, ascending order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::normalized(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading coefficient, `None` for zero.
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Coefficient counted from the top: for degree `n`, index `i`
    /// addresses the coefficient of `x^(n-i)`. `None` when `i` exceeds
    /// the degree or the polynomial is zero.
    pub fn coeff_from_top(&self, i: usize) -> Option<Rat> {
        let n = self.degree()?;
        if i > n {
            return None;
        }
        Some(self.coeffs[n - i].clone())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitute `c*x` for `x`: coefficient `a_k` becomes `a_k * c^k`.
    pub fn stretch(&self, c: &Rat) -> Poly {
        let mut power = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a * &power;
                power = &power * c;
                out
            })
            .collect();
        Poly::normalized(coeffs)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating evaluation for the numeric oracles.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Composition `self(inner(x))`, exact, constants allowed.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_int(k as i64))
            .collect();
        Poly::normalized(coeffs)
    }

    /// `k`-th formal derivative.
    pub fn derivative_n(&self, k: usize) -> Poly {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.derivative();
        }
        out
    }

    /// The antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rat_int((k + 1) as i64));
        }
        Poly::normalized(coeffs)
    }

    /// Exact definite integral over `[a, b]`.
    pub fn definite_integral(&self, e: &Endpoints) -> Rat {
        let f = self.antiderivative();
        f.eval(e.b()) - f.eval(e.a())
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// `None` when `div` is zero.
    pub fn divrem(&self, div: &Poly) -> Option<(Poly, Poly)> {
        let d = div.degree()?;
        let lead = div.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1;
            let factor = &rem[k] / lead;
            if !factor.is_zero() {
                let shift = k - d;
                for (j, c) in div.coeffs.iter().enumerate() {
                    let t = c * &factor;
                    rem[shift + j] = &rem[shift + j] - &t;
                }
                quot[shift] = factor;
            }
            rem.pop();
        }
        Some((Poly::normalized(quot), Poly::normalized(rem)))
    }

    /// Exact quotient; `None` when the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(div)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Whether every exponent with a nonzero coefficient is even.
    pub fn is_even_poly(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// Whether every exponent with a nonzero coefficient is odd.
    pub fn is_odd_poly(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 1 || c.is_zero())
    }

    /// Split into (even part, odd part).
    pub fn parity_split(&self) -> (Poly, Poly) {
        let mut even = vec![Rat::zero(); self.coeffs.len()];
        let mut odd = vec![Rat::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                even[k] = c.clone();
            } else {
                odd[k] = c.clone();
            }
        }
        (Poly::normalized(even), Poly::normalized(odd))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// True when nonzero with leading coefficient 1.
    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    /// Monic inner normal form for decomposition work: returns
    /// `(w, lead, constant)` with `self = lead * w + constant`, where
    /// `w` is monic with zero constant term. `None` for degree < 1.
    pub fn normalized_inner(&self) -> Option<(Poly, Rat, Rat)> {
        if self.degree()? < 1 {
            return None;
        }
        let lead = self.leading().expect("nonconstant").clone();
        let constant = self.coeff(0);
        let mut coeffs: Vec<Rat> = self.coeffs.iter().map(|c| c / &lead).collect();
        coeffs[0] = Rat::zero();
        Some((Poly::normalized(coeffs), lead, constant))
    }

    /// Coefficients converted to `f64` for the numeric oracles.
    pub fn f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            if k == 0 || !unit_mag {
                write!(f, "{}", mag)?;
            }
            if k > 0 {
                if !unit_mag {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            coeffs.push(a + b);
        }
        Poly::normalized(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            coeffs.push(a - b);
        }
        Poly::normalized(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // convolve over cleared integers; one reduction per output
        // coefficient instead of one per coefficient product
        let clear = |p: &Poly| -> (Vec<BigInt>, BigInt) {
            let mut lcm = BigInt::from(1);
            for c in &p.coeffs {
                lcm = lcm.lcm(c.denom());
            }
            let ints = p
                .coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect();
            (ints, lcm)
        };
        let (a_ints, da) = clear(self);
        let (b_ints, db) = clear(rhs);
        let mut conv = vec![BigInt::from(0); a_ints.len() + b_ints.len() - 1];
        for (i, a) in a_ints.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in b_ints.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let den = da * db;
        Poly::normalized(conv.into_iter().map(|c| Rat::new(c, den.clone())).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// An invertible degree-one map `x ↦ alpha*x + beta` (`alpha ≠ 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    alpha: Rat,
    beta: Rat,
}

impl LinearMap {
    /// `None` when `alpha` is zero.
    pub fn new(alpha: Rat, beta: Rat) -> Option<Self> {
        if alpha.is_zero() {
            None
        } else {
            Some(LinearMap { alpha, beta })
        }
    }

    pub fn identity() -> Self {
        LinearMap {
            alpha: Rat::one(),
            beta: Rat::zero(),
        }
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        &self.alpha * x + &self.beta
    }

    /// The map `x ↦ (x - beta)/alpha` with `inverse ∘ self = identity`.
    pub fn inverse(&self) -> LinearMap {
        let alpha = Rat::one() / &self.alpha;
        let beta = -(&self.beta / &self.alpha);
        LinearMap { alpha, beta }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            alpha: &self.alpha * &other.alpha,
            beta: &self.alpha * &other.beta + &self.beta,
        }
    }

    /// The map as a degree-one polynomial.
    pub fn as_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.beta.clone(), self.alpha.clone()])
    }
}

/// A segment `[a, b]` with distinct rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoints {
    a: Rat,
    b: Rat,
}

impl Endpoints {
    /// `None` when `a == b`.
    pub fn new(a: Rat, b: Rat) -> Option<Self> {
        if a == b {
            None
        } else {
            Some(Endpoints { a, b })
        }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn e(a: i64, b: i64) -> Endpoints {
        Endpoints::new(rat_int(a), rat_int(b)).unwrap()
    }

    #[test]
    fn canonical_zero() {
        let p = Poly::from_ints(&[0, 0, 0]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p.coeffs().len(), 0);
    }

    #[test]
    fn compose_monomial_substitution() {
        let outer = Poly::from_ints(&[1, 0, 1]); // x^2 + 1
        let inner = Poly::from_ints(&[0, 0, 0, 1]); // x^3
        let expect = Poly::from_ints(&[1, 0, 0, 0, 0, 0, 1]); // x^6 + 1
        assert_eq!(outer.compose(&inner), expect);
    }

    #[test]
    fn compose_chebyshev_pair() {
        // (2x^2 - 1) ∘ (4x^3 - 3x) = 32x^6 - 48x^4 + 18x^2 - 1
        let outer = Poly::from_ints(&[-1, 0, 2]);
        let inner = Poly::from_ints(&[0, -3, 0, 4]);
        let expect = Poly::from_ints(&[-1, 0, 18, 0, -48, 0, 32]);
        assert_eq!(outer.compose(&inner), expect);
    }

    #[test]
    fn compose_identity_and_constants() {
        let p = Poly::from_ints(&[3, -1, 0, 5]);
        assert_eq!(p.compose(&Poly::x()), p);
        let c = Poly::constant(rat_int(7));
        assert_eq!(c.compose(&p), c);
        assert_eq!(p.compose(&c), Poly::constant(p.eval(&rat_int(7))));
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(
            Poly::from_ints(&[0, 2]).antiderivative(),
            Poly::from_ints(&[0, 0, 1])
        );
        assert_eq!(Poly::zero().antiderivative(), Poly::zero());
        assert_eq!(
            Poly::from_ints(&[1, 0, 3]).antiderivative(),
            Poly::from_ints(&[0, 1, 0, 1])
        );
    }

    #[test]
    fn derivative_and_eval() {
        assert_eq!(
            Poly::from_ints(&[0, 1, 0, 1]).derivative(),
            Poly::from_ints(&[1, 0, 3])
        );
        // T_2(1) = 1 and T_2(-1) = 1
        let t2 = Poly::from_ints(&[-1, 0, 2]);
        assert_eq!(t2.eval(&rat_int(1)), rat_int(1));
        assert_eq!(t2.eval(&rat_int(-1)), rat_int(1));
        assert_eq!(Poly::zero().eval(&rat_int(5)), rat_int(0));
    }

    #[test]
    fn coeff_from_top_indices() {
        let p = Poly::from_ints(&[0, -3, 0, 4]); // 4x^3 - 3x
        assert_eq!(p.coeff_from_top(0), Some(rat_int(4)));
        assert_eq!(p.coeff_from_top(1), Some(rat_int(0)));
        assert_eq!(p.coeff_from_top(2), Some(rat_int(-3)));
        assert_eq!(p.coeff_from_top(4), None);
        let t6 = Poly::from_ints(&[-1, 0, 18, 0, -48, 0, 32]);
        assert_eq!(t6.coeff_from_top(2), Some(rat_int(-48)));
        assert_eq!(Poly::zero().coeff_from_top(0), None);
    }

    #[test]
    fn definite_integrals() {
        assert_eq!(
            Poly::from_ints(&[0, 2]).definite_integral(&e(-1, 1)),
            rat_int(0)
        );
        assert_eq!(
            Poly::from_ints(&[0, 0, 3]).definite_integral(&e(0, 2)),
            rat_int(8)
        );
        assert_eq!(
            Poly::from_ints(&[0, 0, 2]).definite_integral(&e(-1, 1)),
            rat(4, 3)
        );
    }

    #[test]
    fn divrem_roundtrip() {
        let p = Poly::from_ints(&[1, 2, 0, 1, 3]);
        let d = Poly::from_ints(&[-1, 0, 2]);
        let (q, r) = p.divrem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree().map_or(true, |k| k < 2));
        assert!(p.divrem(&Poly::zero()).is_none());
    }

    #[test]
    fn linear_map_inverse_composes_to_identity() {
        let m = LinearMap::new(rat(2, 3), rat_int(-4)).unwrap();
        assert_eq!(m.inverse().compose(&m), LinearMap::identity());
        assert!(LinearMap::new(rat_int(0), rat_int(1)).is_none());
    }

    #[test]
    fn endpoints_reject_equal() {
        assert!(Endpoints::new(rat_int(2), rat_int(2)).is_none());
        assert!(Endpoints::new(rat(1, 2), rat(-1, 2)).is_some());
    }

    #[test]
    fn normalized_inner_form() {
        // T_3 = 4x^3 - 3x normalizes to x^3 - (3/4)x
        let t3 = Poly::from_ints(&[0, -3, 0, 4]);
        let (w, lead, constant) = t3.normalized_inner().unwrap();
        assert_eq!(
            w,
            Poly::from_coeffs(vec![rat_int(0), rat(-3, 4), rat_int(0), rat_int(1)])
        );
        assert_eq!(lead, rat_int(4));
        assert_eq!(constant, rat_int(0));
        assert_eq!(&w.scale(&lead) + &Poly::constant(constant), t3);
    }

    #[test]
    fn display_is_readable() {
        let p = Poly::from_coeffs(vec![rat_int(-2), rat(3, 4), rat_int(0), rat_int(1)]);
        assert_eq!(alloc::format!("{}", p), "x^3 + 3/4*x - 2");
        assert_eq!(alloc::format!("{}", Poly::zero()), "0");
    }
}
