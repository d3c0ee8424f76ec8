//! Moment functionals, composition certificates, and the solution
//! classifier for the mixed moment problem.
//!
//! The moment of order `i` of a pair `(P, Q)` over `[a, b]` is the exact
//! integral `∫ P^i Q' dx`. A `CompositionWitness` certifies the vanishing
//! of every moment at once: if `P` and `Q` are both polynomials in a
//! common `W` with `W(a) = W(b)`, every integrand has an antiderivative
//! that is itself a polynomial in `W`, so each integral collapses to 0.
//! `classify` sorts a vanishing pair into the known solution shapes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::gcd;
use num_traits::{One, Zero};

use crate::cheb::{cheb_t, support_pattern_check, to_cheb};
use crate::decompose::{
    detect_cheb_conjugate, detect_shift_even, poly_sqrt, right_factor, DecompositionPair,
};
use crate::poly::{Endpoints, LinearMap, Poly};
use crate::rat::{rat_int, Rat};

/// Which of the two mixed directions a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Moments `∫ P^i dQ`.
    PdQ,
    /// Moments `∫ Q^i dP`.
    QdP,
}

/// The values `m_i` for `0 ≤ i ≤ bound` in one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub direction: Direction,
    pub bound: usize,
    pub values: Vec<(usize, Rat)>,
    pub all_zero: bool,
}

/// A certificate for the composition condition: `P = P̃ ∘ W`,
/// `Q = Q̃ ∘ W` with `W(a) = W(b)` and `deg W ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionWitness {
    pub w: Poly,
    pub p_tilde: Poly,
    pub q_tilde: Poly,
    pub endpoints: Endpoints,
}

impl CompositionWitness {
    /// Exact check of all stored equalities.
    pub fn is_valid(&self, p: &Poly, q: &Poly) -> bool {
        self.p_tilde.compose(&self.w) == *p
            && self.q_tilde.compose(&self.w) == *q
            && self.w.eval(self.endpoints.a()) == self.w.eval(self.endpoints.b())
            && self.w.degree().map_or(false, |d| d >= 2)
    }
}

/// The classifier's verdict, with enough shape data to rebuild `P` and
/// the endpoint-collapsing inner maps exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentSolutionClass {
    /// The composition condition itself holds.
    Reducible(CompositionWitness),
    /// `P = U ∘ xR²(x) ∘ x² ∘ (x - δ)` with `W₁ = (x-δ)²` and
    /// `W₂ = (x-δ)R((x-δ)²)` both agreeing at the endpoints.
    Type1 {
        delta: Rat,
        r: Poly,
        u: Poly,
    },
    /// `P = U ∘ T_(m₁m₂) ∘ μ` with `T_(mᵢ) ∘ μ` agreeing at the endpoints.
    Type2 {
        m1: usize,
        m2: usize,
        u: Poly,
        mu: LinearMap,
    },
    /// `P = U ∘ (xR(x²))² ∘ T_(m₁m₂) ∘ μ` with `T_(2mᵢ) ∘ μ` and
    /// `xR(x²) ∘ T_(m₁m₂) ∘ μ` agreeing at the endpoints.
    Type3 {
        m1: usize,
        m2: usize,
        r: Poly,
        u: Poly,
        mu: LinearMap,
    },
    Unclassified {
        reason: String,
    },
}

impl MomentSolutionClass {
    /// Exact check that the stored shape parameters rebuild `p` (and for
    /// a witness also `q`) and that every stored inner map takes equal
    /// values at the endpoints. `Unclassified` never fabricates, so it
    /// verifies trivially.
    pub fn reproduces(&self, p: &Poly, q: &Poly, e: &Endpoints) -> bool {
        let agree = |w: &Poly| w.eval(e.a()) == w.eval(e.b());
        match self {
            MomentSolutionClass::Reducible(witness) => witness.is_valid(p, q),
            MomentSolutionClass::Type1 { delta, r, u } => {
                let unshift = Poly::from_coeffs(alloc::vec![-delta, Rat::one()]);
                let x2 = Poly::from_ints(&[0, 0, 1]);
                let inner = &Poly::x() * &(r * r);
                let rebuilt = u.compose(&inner).compose(&x2).compose(&unshift);
                let w1 = x2.compose(&unshift);
                let w2 = &unshift * &r.compose(&(&unshift * &unshift));
                rebuilt == *p && agree(&w1) && agree(&w2)
            }
            MomentSolutionClass::Type2 { m1, m2, u, mu } => {
                let mu_poly = mu.as_poly();
                let rebuilt = u.compose(&cheb_t(m1 * m2).compose(&mu_poly));
                let w1 = cheb_t(*m1).compose(&mu_poly);
                let w2 = cheb_t(*m2).compose(&mu_poly);
                rebuilt == *p && agree(&w1) && agree(&w2)
            }
            MomentSolutionClass::Type3 { m1, m2, r, u, mu } => {
                let mu_poly = mu.as_poly();
                let odd = &Poly::x() * &r.compose(&Poly::from_ints(&[0, 0, 1]));
                let core = &odd * &odd;
                let rebuilt = u.compose(&core).compose(&cheb_t(m1 * m2).compose(&mu_poly));
                let w1 = cheb_t(2 * m1).compose(&mu_poly);
                let w2 = cheb_t(2 * m2).compose(&mu_poly);
                let w3 = odd.compose(&cheb_t(m1 * m2).compose(&mu_poly));
                rebuilt == *p && agree(&w1) && agree(&w2) && agree(&w3)
            }
            MomentSolutionClass::Unclassified { .. } => true,
        }
    }
}

/// The exact moment `∫_a^b P(x)^i Q'(x) dx`, computed through the
/// antiderivative. This is the definitional route; the batch
/// computations below use the integer-cleared [`MomentStream`] and are
/// cross-checked against it.
pub fn moment(p: &Poly, q: &Poly, e: &Endpoints, i: usize) -> Rat {
    let integrand = &p.pow(i) * &q.derivative();
    integrand.definite_integral(e)
}

/// Incremental evaluator of the moments `∫ P^i dQ` for `i = 0, 1, …`.
///
/// The segment is rescaled to integer endpoints (`x = u/D` leaves every
/// moment unchanged), both polynomials are cleared to integer
/// coefficients, and the weight vector `n_k = L·∫ u^k dQ₃` is
/// precomputed over a common denominator `L`. Each moment is then a
/// single integer dot product with the running integer power of `P₃`,
/// divided back by the collected scale factors — exact throughout, but
/// without per-step rational reductions.
pub struct MomentStream {
    p_ints: Vec<BigIntCoeff>,
    power: Vec<BigIntCoeff>,
    weights: Vec<BigIntCoeff>,
    weight_den: Rat,
    p_scale: Rat,
    scale_acc: Rat,
    index: usize,
    bound: usize,
}

type BigIntCoeff = num_bigint::BigInt;

fn clear_to_integers(p: &Poly) -> (Vec<BigIntCoeff>, Rat) {
    use num_integer::Integer;
    let mut lcm = BigIntCoeff::from(1);
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    (ints, Rat::from_integer(lcm))
}

fn int_mul(a: &[BigIntCoeff], b: &[BigIntCoeff]) -> Vec<BigIntCoeff> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![BigIntCoeff::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

impl MomentStream {
    pub fn new(p: &Poly, q: &Poly, e: &Endpoints, bound: usize) -> Self {
        use num_integer::Integer;
        // substitute x = u/D so the endpoints become integers
        let d_scale = Rat::from_integer(e.a().denom().lcm(e.b().denom()));
        let inv = Rat::one() / &d_scale;
        let p2 = p.stretch(&inv);
        let q2 = q.stretch(&inv);
        let a_int = (e.a() * &d_scale).to_integer();
        let b_int = (e.b() * &d_scale).to_integer();

        let (p_ints, p_scale) = clear_to_integers(&p2);
        let (q_ints, q_scale) = clear_to_integers(&q2);
        // derivative of the integer-cleared Q₃
        let q3_prime: Vec<BigIntCoeff> = q_ints
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigIntCoeff::from(k))
            .collect();

        let dp = p_ints.len().saturating_sub(1);
        let max_deg = dp * bound + q3_prime.len().saturating_sub(1).max(0);
        // endpoint power tables and the common denominator L = lcm(1..=max+1)
        let mut lcm = BigIntCoeff::from(1);
        for k in 1..=(max_deg + 1) {
            lcm = lcm.lcm(&BigIntCoeff::from(k));
        }
        let mut pow_a = BigIntCoeff::from(1);
        let mut pow_b = BigIntCoeff::from(1);
        let mut integrals = Vec::with_capacity(max_deg + 1);
        for k in 0..=max_deg {
            pow_a *= &a_int;
            pow_b *= &b_int;
            // L·∫ u^k du = (b^(k+1) - a^(k+1))·L/(k+1)
            integrals.push((&pow_b - &pow_a) * (&lcm / BigIntCoeff::from(k + 1)));
        }
        // weights against the running power: n_k = Σ_j q₃'_j · L·∫ u^(k+j)
        let weight_len = dp * bound + 1;
        let mut weights = alloc::vec![BigIntCoeff::from(0); weight_len];
        for (k, slot) in weights.iter_mut().enumerate() {
            for (j, c) in q3_prime.iter().enumerate() {
                if !c.is_zero() {
                    *slot += c * &integrals[k + j];
                }
            }
        }
        MomentStream {
            p_ints,
            power: alloc::vec![BigIntCoeff::from(1)],
            weights,
            weight_den: Rat::from_integer(lcm) * q_scale,
            p_scale,
            scale_acc: Rat::one(),
            index: 0,
            bound,
        }
    }

    /// The moment at the current order, advancing the stream.
    pub fn next_value(&mut self) -> Option<Rat> {
        if self.index > self.bound {
            return None;
        }
        let mut dot = BigIntCoeff::from(0);
        for (k, c) in self.power.iter().enumerate() {
            if !c.is_zero() && k < self.weights.len() {
                dot += c * &self.weights[k];
            }
        }
        let value = Rat::from_integer(dot) / (&self.weight_den * &self.scale_acc);
        self.index += 1;
        if self.index <= self.bound {
            self.power = int_mul(&self.power, &self.p_ints);
            self.scale_acc = &self.scale_acc * &self.p_scale;
        }
        Some(value)
    }
}

fn report(p: &Poly, q: &Poly, e: &Endpoints, bound: usize, direction: Direction) -> MomentReport {
    let mut stream = MomentStream::new(p, q, e, bound);
    let mut values = Vec::with_capacity(bound + 1);
    let mut all_zero = true;
    for i in 0..=bound {
        let value = stream.next_value().expect("within bound");
        if !value.is_zero() {
            all_zero = false;
        }
        values.push((i, value));
    }
    MomentReport {
        direction,
        bound,
        values,
        all_zero,
    }
}

/// Both moment directions evaluated for `0 ≤ i ≤ bound`.
pub fn mixed_moments(
    p: &Poly,
    q: &Poly,
    e: &Endpoints,
    bound: usize,
) -> (MomentReport, MomentReport) {
    (
        report(p, q, e, bound, Direction::PdQ),
        report(q, p, e, bound, Direction::QdP),
    )
}

/// Default truncation for desk-scale necessity checks:
/// `deg P · deg Q + deg P + deg Q`.
pub fn default_bound(p: &Poly, q: &Poly) -> usize {
    let dp = p.degree().unwrap_or(0);
    let dq = q.degree().unwrap_or(0);
    dp * dq + dp + dq
}

/// Index of the first nonzero moment `∫ P^i dQ` with `i ≤ bound`, or
/// `None` when all of them vanish. Stops at the first hit.
pub fn first_nonvanishing_moment(p: &Poly, q: &Poly, e: &Endpoints, bound: usize) -> Option<usize> {
    let mut stream = MomentStream::new(p, q, e, bound);
    for i in 0..=bound {
        if !stream.next_value().expect("within bound").is_zero() {
            return Some(i);
        }
    }
    None
}

/// Right factor of `p` with inner degree `d`, extended to `d = deg p`
/// (where the factor is `p`'s own normal form).
fn component(p: &Poly, d: usize) -> Option<DecompositionPair> {
    let n = p.degree()?;
    if d == n {
        let (inner, lead, constant) = p.normalized_inner()?;
        let outer = Poly::from_coeffs(alloc::vec![constant, lead]);
        Some(DecompositionPair { outer, inner })
    } else {
        right_factor(p, d).ok().flatten()
    }
}

/// Search for a composition certificate: common right factors of every
/// qualifying degree are enumerated in descending degree and the first
/// one taking equal values at the endpoints wins.
pub fn find_composition_condition(p: &Poly, q: &Poly, e: &Endpoints) -> Option<CompositionWitness> {
    let np = p.degree()?;
    let nq = q.degree()?;
    if np < 1 || nq < 1 {
        return None;
    }
    for d in (2..=np.min(nq)).rev() {
        if np % d != 0 || nq % d != 0 {
            continue;
        }
        let (fp, fq) = match (component(p, d), component(q, d)) {
            (Some(fp), Some(fq)) => (fp, fq),
            _ => continue,
        };
        if fp.inner != fq.inner {
            continue;
        }
        if fp.inner.eval(e.a()) != fp.inner.eval(e.b()) {
            continue;
        }
        let witness = CompositionWitness {
            w: fp.inner,
            p_tilde: fp.outer,
            q_tilde: fq.outer,
            endpoints: e.clone(),
        };
        debug_assert!(witness.is_valid(p, q));
        return Some(witness);
    }
    None
}

/// Divisors of `n` in descending order.
fn divisors_desc(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    out.reverse();
    out
}

fn detect_type1(p: &Poly, q: &Poly, e: &Endpoints) -> Option<MomentSolutionClass> {
    let delta = detect_shift_even(p)?;
    if e.a() + e.b() != &rat_int(2) * &delta {
        return None;
    }
    let shift = Poly::from_coeffs(alloc::vec![delta.clone(), Rat::one()]);
    let unshift = Poly::from_coeffs(alloc::vec![-&delta, Rat::one()]);
    let even = p.compose(&shift);
    debug_assert!(even.is_even_poly());
    // even = h ∘ x²
    let h = Poly::from_coeffs(
        even.coeffs()
            .iter()
            .step_by(2)
            .cloned()
            .collect::<Vec<Rat>>(),
    );
    let nh = h.degree()?;
    for d in divisors_desc(nh) {
        if d < 1 {
            continue;
        }
        let pair = match component(&h, d) {
            Some(pair) => pair,
            None => continue,
        };
        // the inner factor must be x·(square): then p has the
        // U ∘ xR²(x) ∘ x² shape with r the square root
        if !pair.inner.coeff(0).is_zero() {
            continue;
        }
        let quotient = pair.inner.div_exact(&Poly::x())?;
        let r = match poly_sqrt(&quotient) {
            Some(r) => r,
            None => continue,
        };
        // W₂ = (x-δ)·R((x-δ)²) must agree at the endpoints; it is odd
        // around δ, so agreement means it vanishes there.
        let w2 = &unshift * &r.compose(&(&unshift * &unshift));
        if w2.eval(e.a()) != w2.eval(e.b()) {
            continue;
        }
        // Q(x+δ) must split as V₁(x²) + V₂(xR(x²)): the even part always
        // fits V₁; the odd part must lie in the span of odd powers of
        // xR(x²).
        let (_, mut odd) = q.compose(&shift).parity_split();
        let base = &Poly::x() * &r.compose(&Poly::from_ints(&[0, 0, 1]));
        let mb = match base.degree() {
            Some(mb) if mb >= 1 => mb,
            _ => continue,
        };
        let mut splits = true;
        while let Some(deg_odd) = odd.degree() {
            if deg_odd % mb != 0 || (deg_odd / mb) % 2 == 0 {
                splits = false;
                break;
            }
            let k = deg_odd / mb;
            let coeff = odd.leading().expect("nonzero").clone();
            odd = &odd - &base.pow(k).scale(&coeff);
        }
        if !splits {
            continue;
        }
        let rebuilt = pair
            .outer
            .compose(&pair.inner)
            .compose(&Poly::from_ints(&[0, 0, 1]))
            .compose(&unshift);
        debug_assert_eq!(rebuilt, *p);
        return Some(MomentSolutionClass::Type1 {
            delta,
            r,
            u: pair.outer,
        });
    }
    None
}

/// Coprime ordered factorizations `m1 * m2 = m` with both factors ≥ min.
fn coprime_splits(m: usize, min: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m1 in min..=m {
        if m % m1 != 0 {
            continue;
        }
        let m2 = m / m1;
        if m2 >= min && gcd(m1, m2) == 1 {
            out.push((m1, m2));
        }
    }
    out
}

fn endpoint_relation_under(m: usize, mu: &LinearMap, e: &Endpoints) -> bool {
    let t = cheb_t(m);
    t.eval(&mu.apply(e.a())) == t.eval(&mu.apply(e.b()))
}

fn detect_type2(
    p: &Poly,
    q: &Poly,
    e: &Endpoints,
    notes: &mut Vec<String>,
) -> Option<MomentSolutionClass> {
    let n = p.degree()?;
    for m in divisors_desc(n) {
        if m < 6 {
            break;
        }
        let splits = coprime_splits(m, 2);
        if splits.is_empty() {
            continue;
        }
        let conj = match detect_cheb_conjugate(p, m).ok().flatten() {
            Some(conj) => conj,
            None => continue,
        };
        let inv = conj.mu.inverse();
        let q_series = to_cheb(&q.compose(&inv.as_poly()));
        for (m1, m2) in splits {
            if !endpoint_relation_under(m1, &conj.mu, e)
                || !endpoint_relation_under(m2, &conj.mu, e)
            {
                notes.push(format!(
                    "found P = U∘T_{}∘μ but T_{}/T_{} take distinct values at μ(a), μ(b)",
                    m, m1, m2
                ));
                continue;
            }
            if !support_pattern_check(&q_series, &[m1, m2]) {
                notes.push(format!(
                    "endpoint relations hold for (T_{}, T_{}) but Q is not supported on their multiples",
                    m1, m2
                ));
                continue;
            }
            return Some(MomentSolutionClass::Type2 {
                m1,
                m2,
                u: conj.outer,
                mu: conj.mu,
            });
        }
    }
    None
}

fn detect_type3(
    p: &Poly,
    q: &Poly,
    e: &Endpoints,
    notes: &mut Vec<String>,
) -> Option<MomentSolutionClass> {
    let n = p.degree()?;
    for m in divisors_desc(n) {
        if m < 15 {
            break;
        }
        let splits: Vec<(usize, usize)> = coprime_splits(m, 3)
            .into_iter()
            .filter(|&(m1, m2)| m1 % 2 == 1 && m2 % 2 == 1)
            .collect();
        if splits.is_empty() {
            continue;
        }
        let conj = match detect_cheb_conjugate(p, m).ok().flatten() {
            Some(conj) => conj,
            None => continue,
        };
        // the outer factor must itself be U ∘ (xR(x²))²
        let no = match conj.outer.degree() {
            Some(no) if no >= 2 => no,
            _ => continue,
        };
        for d in divisors_desc(no) {
            if d < 2 || d % 2 != 0 {
                continue;
            }
            let pair = match component(&conj.outer, d) {
                Some(pair) => pair,
                None => continue,
            };
            let odd_root = match poly_sqrt(&pair.inner) {
                Some(root) if root.is_odd_poly() => root,
                _ => continue,
            };
            // odd_root = x·R(x²)
            let r = Poly::from_coeffs(
                odd_root
                    .coeffs()
                    .iter()
                    .skip(1)
                    .step_by(2)
                    .cloned()
                    .collect::<Vec<Rat>>(),
            );
            let inv = conj.mu.inverse();
            let q_series = to_cheb(&q.compose(&inv.as_poly()));
            for &(m1, m2) in &splits {
                let w3 = odd_root.compose(&cheb_t(m).compose(&conj.mu.as_poly()));
                let endpoints_ok = endpoint_relation_under(2 * m1, &conj.mu, e)
                    && endpoint_relation_under(2 * m2, &conj.mu, e)
                    && w3.eval(e.a()) == w3.eval(e.b());
                if !endpoints_ok {
                    notes.push(format!(
                        "found P = U∘(xR(x²))²∘T_{}∘μ but the T_{}/T_{}/xR(x²)∘T_{} values split at the endpoints",
                        m, 2 * m1, 2 * m2, m
                    ));
                    continue;
                }
                if !support_pattern_check(&q_series, &[2 * m1, 2 * m2, m]) {
                    continue;
                }
                return Some(MomentSolutionClass::Type3 {
                    m1,
                    m2,
                    r,
                    u: pair.outer,
                    mu: conj.mu.clone(),
                });
            }
        }
    }
    None
}

/// Classify a pair whose `PdQ` moments vanish at the default bound:
/// first the composition condition, then the three non-reducible shapes.
/// Shape detection works over the rationals only; instances whose
/// endpoint data is irrational come back `Unclassified` with the
/// obstruction recorded in `reason`.
pub fn classify(p: &Poly, q: &Poly, e: &Endpoints) -> MomentSolutionClass {
    classify_with_bound(p, q, e, default_bound(p, q))
}

/// [`classify`] with an explicit truncation for the vanishing gate.
pub fn classify_with_bound(p: &Poly, q: &Poly, e: &Endpoints, bound: usize) -> MomentSolutionClass {
    // a witness certifies every moment at once, so it short-circuits the
    // vanishing gate
    if let Some(witness) = find_composition_condition(p, q, e) {
        return MomentSolutionClass::Reducible(witness);
    }
    if let Some(first) = first_nonvanishing_moment(p, q, e, bound) {
        return MomentSolutionClass::Unclassified {
            reason: format!("moment of order {} does not vanish", first),
        };
    }
    if let Some(found) = detect_type1(p, q, e) {
        return found;
    }
    let mut notes = Vec::new();
    if let Some(found) = detect_type2(p, q, e, &mut notes) {
        return found;
    }
    if let Some(found) = detect_type3(p, q, e, &mut notes) {
        return found;
    }
    let reason = if notes.is_empty() {
        String::from("no rational witness or shape found")
    } else {
        notes.join("; ")
    };
    MomentSolutionClass::Unclassified { reason }
}
