//! Algebraic-number predicates at small degree, plus the explicit
//! constraint equations used by the endpoint obstructions.
//!
//! Factorization is deliberately capped at degree 4: rational roots come
//! from the rational-root theorem, and a quartic splits into quadratics
//! only if a bounded integer-coefficient search (Gauss's lemma) finds the
//! split. Real-root counting is Descartes-rule bisection, so isolating
//! intervals are verified without Sturm chains. That is everything the
//! obstruction arguments need; a general factorization engine is out of
//! scope on purpose.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::rat::{rat, rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicError {
    /// Factorization is only implemented through degree 4.
    DegreeTooLarge { degree: usize },
    /// The defining polynomial is zero or constant.
    NotDefining,
    /// The given interval does not isolate exactly one real root.
    NotIsolating { roots_found: usize },
    /// A root sits on the interval boundary.
    RootOnBoundary,
    /// The interval is empty or reversed.
    EmptyInterval,
    /// Parameter below the documented hypothesis of the equation.
    BelowThreshold {
        name: &'static str,
        n: usize,
        minimum: usize,
    },
}

impl fmt::Display for AlgebraicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicError::DegreeTooLarge { degree } => {
                write!(f, "degree {} exceeds the supported maximum of 4", degree)
            }
            AlgebraicError::NotDefining => write!(f, "defining polynomial must be nonconstant"),
            AlgebraicError::NotIsolating { roots_found } => {
                write!(
                    f,
                    "interval contains {} real roots, expected 1",
                    roots_found
                )
            }
            AlgebraicError::RootOnBoundary => write!(f, "root on the interval boundary"),
            AlgebraicError::EmptyInterval => write!(f, "interval must satisfy lo < hi"),
            AlgebraicError::BelowThreshold { name, n, minimum } => {
                write!(f, "{} requires n >= {}, got {}", name, minimum, n)
            }
        }
    }
}

/// Which root(s) of the defining polynomial are meant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSelector {
    AnyRoot,
    /// An isolating closed interval with rational endpoints, containing
    /// exactly one real root strictly inside.
    Interval(Rat, Rat),
}

/// A real algebraic number (or the set of all roots) given by a defining
/// polynomial of degree at most 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumberSpec {
    pub defining: Poly,
    pub selector: RootSelector,
}

impl AlgebraicNumberSpec {
    pub fn any_root(defining: Poly) -> Result<Self, AlgebraicError> {
        check_defining(&defining)?;
        Ok(AlgebraicNumberSpec {
            defining,
            selector: RootSelector::AnyRoot,
        })
    }

    pub fn in_interval(defining: Poly, lo: Rat, hi: Rat) -> Result<Self, AlgebraicError> {
        check_defining(&defining)?;
        if lo >= hi {
            return Err(AlgebraicError::EmptyInterval);
        }
        let sf = squarefree_part(&defining);
        if sf.eval(&lo).is_zero() || sf.eval(&hi).is_zero() {
            return Err(AlgebraicError::RootOnBoundary);
        }
        let roots = count_roots_in(&sf, &lo, &hi);
        if roots != 1 {
            return Err(AlgebraicError::NotIsolating { roots_found: roots });
        }
        Ok(AlgebraicNumberSpec {
            defining,
            selector: RootSelector::Interval(lo, hi),
        })
    }
}

fn check_defining(p: &Poly) -> Result<usize, AlgebraicError> {
    let n = p.degree().ok_or(AlgebraicError::NotDefining)?;
    if n == 0 {
        return Err(AlgebraicError::NotDefining);
    }
    if n > 4 {
        return Err(AlgebraicError::DegreeTooLarge { degree: n });
    }
    Ok(n)
}

// ---- rational polynomial helpers ----

/// Monic greatest common divisor over the rationals.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_zero() {
        let (_, r) = f.divrem(&g).expect("nonzero divisor");
        f = g;
        g = r;
    }
    match f.leading() {
        None => Poly::zero(),
        Some(lead) => {
            let inv = Rat::one() / lead;
            f.scale(&inv)
        }
    }
}

/// `p` divided by `gcd(p, p')`: same roots, all simple, monic.
pub fn squarefree_part(p: &Poly) -> Poly {
    let d = p.derivative();
    if d.is_zero() {
        // constant or zero
        return match p.leading() {
            None => Poly::zero(),
            Some(_) => Poly::one(),
        };
    }
    let g = poly_gcd(p, &d);
    let q = p.div_exact(&g).expect("gcd divides");
    let lead = q.leading().expect("nonzero").clone();
    q.scale(&(Rat::one() / lead))
}

/// Scale to a primitive integer polynomial with positive leading
/// coefficient; returns the coefficient vector ascending.
fn integer_primitive(p: &Poly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
    if ints.last().map_or(false, |c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

/// Positive divisors of `|n|` by trial division (desk-scale inputs).
fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let target = n.abs();
    if target.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let sq = &d * &d;
        if sq > target {
            break;
        }
        if (&target % &d).is_zero() {
            small.push(d.clone());
            let quotient = &target / &d;
            if quotient != d {
                large.push(quotient);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of a primitive integer polynomial via the
/// rational-root theorem, each verified by exact evaluation.
fn rational_roots(ints: &[BigInt]) -> Vec<Rat> {
    let poly = Poly::from_coeffs(ints.iter().map(|c| Rat::from_integer(c.clone())).collect());
    let mut out = Vec::new();
    // strip powers of x
    let low = match ints.iter().position(|c| !c.is_zero()) {
        Some(i) => i,
        None => return out,
    };
    if low > 0 {
        out.push(Rat::zero());
    }
    let constant = &ints[low];
    let lead = ints.last().expect("nonzero");
    for p in positive_divisors(constant) {
        for q in positive_divisors(lead) {
            for sign in [1, -1] {
                let candidate = Rat::new(&p * BigInt::from(sign), q.clone());
                if poly.eval(&candidate).is_zero() && !out.contains(&candidate) {
                    out.push(candidate);
                }
            }
        }
    }
    out
}

/// Try to split a primitive integer quartic with no rational roots into
/// two integer quadratics. Leading/constant coefficients are matched
/// against divisor pairs; the two middle unknowns come from the x³ and
/// x¹ equations (a 2×2 linear system, or a quadratic when it
/// degenerates), then the x² equation is checked.
fn quartic_quadratic_split(ints: &[BigInt]) -> Option<(Poly, Poly)> {
    debug_assert_eq!(ints.len(), 5);
    let e = &ints[4];
    let a = &ints[3];
    let b = &ints[2];
    let c = &ints[1];
    let d = &ints[0];
    let check = |al: &BigInt,
                 be: &BigInt,
                 ga: &BigInt,
                 de: &BigInt,
                 ep: &BigInt,
                 ze: &BigInt|
     -> Option<(Poly, Poly)> {
        // (al x² + be x + ga)(de x² + ep x + ze)
        if &(al * de) != e
            || &(&(al * ze) + &(be * ep) + &(ga * de)) != b
            || &(&(be * ze) + &(ga * ep)) != c
            || &(&(al * ep) + &(be * de)) != a
            || &(ga * ze) != d
        {
            return None;
        }
        let to_poly = |x0: &BigInt, x1: &BigInt, x2: &BigInt| {
            Poly::from_coeffs(alloc::vec![
                Rat::from_integer(x0.clone()),
                Rat::from_integer(x1.clone()),
                Rat::from_integer(x2.clone()),
            ])
        };
        Some((to_poly(ga, be, al), to_poly(ze, ep, de)))
    };

    for al in positive_divisors(e) {
        let de = e / &al; // positive since e > 0 after normalization
        for ga_abs in positive_divisors(d) {
            if d.is_zero() {
                break;
            }
            for ga_sign in [1, -1] {
                let ga = &ga_abs * BigInt::from(ga_sign);
                let ze = d / &ga;
                // β, ε from: de·β + al·ε = a and ze·β + ga·ε = c
                let det = &(&de * &ga) - &(&al * &ze);
                if !det.is_zero() {
                    let bn = &(a * &ga) - &(&al * c);
                    let en = &(&de * c) - &(a * &ze);
                    if (&bn % &det).is_zero() && (&en % &det).is_zero() {
                        let be = bn / &det;
                        let ep = en / &det;
                        if let Some(split) = check(&al, &be, &ga, &de, &ep, &ze) {
                            return Some(split);
                        }
                    }
                } else {
                    // degenerate: substitute β = (a - al·ε)/de into βε = b - al·ze - ga·de
                    let m = b - &(&al * &ze) - &(&ga * &de);
                    // al·ε² - a·ε + de·m = 0
                    let qa = al.clone();
                    let qb = -a;
                    let qc = &de * &m;
                    let disc = &(&qb * &qb) - &(BigInt::from(4) * &qa * &qc);
                    if disc.is_negative() {
                        continue;
                    }
                    let root = disc.sqrt();
                    if &(&root * &root) != &disc {
                        continue;
                    }
                    for s in [1, -1] {
                        let numer = -&qb + &root * BigInt::from(s);
                        let denom = BigInt::from(2) * &qa;
                        if (&numer % &denom).is_zero() {
                            let ep = numer / &denom;
                            let bn = a - &(&al * &ep);
                            if (&bn % &de).is_zero() {
                                let be = bn / &de;
                                if let Some(split) = check(&al, &be, &ga, &de, &ep, &ze) {
                                    return Some(split);
                                }
                            }
                        }
                    }
                }
            }
            if d.is_zero() {
                break;
            }
        }
        // d = 0 is impossible here: a quartic with zero constant term has
        // the rational root 0 and never reaches this search.
    }
    None
}

fn monic(p: &Poly) -> Poly {
    match p.leading() {
        None => Poly::zero(),
        Some(lead) => p.scale(&(Rat::one() / lead)),
    }
}

/// The distinct monic irreducible factors over the rationals of a
/// polynomial of degree ≤ 4, ascending by degree then by coefficients.
pub fn irreducible_factors(p: &Poly) -> Result<Vec<Poly>, AlgebraicError> {
    check_defining(p)?;
    let mut rest = squarefree_part(p);
    let mut factors = Vec::new();
    for root in rational_roots(&integer_primitive(&rest)) {
        let linear = Poly::from_coeffs(alloc::vec![-&root, Rat::one()]);
        if let Some(q) = rest.div_exact(&linear) {
            factors.push(linear);
            rest = q;
        }
    }
    match rest.degree() {
        None | Some(0) => {}
        Some(4) => {
            let ints = integer_primitive(&rest);
            if let Some((f, g)) = quartic_quadratic_split(&ints) {
                factors.push(monic(&f));
                factors.push(monic(&g));
            } else {
                factors.push(monic(&rest));
            }
        }
        // degree 1 leftovers, and quadratics/cubics with no rational
        // roots, are irreducible
        Some(_) => factors.push(monic(&rest)),
    }
    factors.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(factors)
}

/// Sign variations in a coefficient sequence, ignoring zeros.
fn sign_variations(coeffs: &[Rat]) -> usize {
    let mut variations = 0;
    let mut last = 0i8;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let s = if c.is_positive() { 1 } else { -1 };
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Descartes bound for the number of roots of `p` in the open interval
/// `(lo, hi)`: exact when it returns 0 or 1.
fn descartes_bound(p: &Poly, lo: &Rat, hi: &Rat) -> usize {
    // map (0,1) onto (lo,hi), then (0,∞) onto (0,1)
    let width = hi - lo;
    let unit = p.compose(&Poly::from_coeffs(alloc::vec![lo.clone(), width]));
    let n = match unit.degree() {
        None => return 0,
        Some(n) => n,
    };
    let reversed = Poly::from_coeffs(unit.coeffs().iter().rev().cloned().collect());
    let transformed = reversed.compose(&Poly::from_ints(&[1, 1]));
    // degree drop means a root at the mapped origin of the reversal; it
    // corresponds to x = ∞ and is irrelevant, so just count variations
    let _ = n;
    sign_variations(transformed.coeffs())
}

/// Exact number of roots of a squarefree `p` in the open interval
/// `(lo, hi)`, by Descartes-rule bisection.
pub fn count_roots_in(p: &Poly, lo: &Rat, hi: &Rat) -> usize {
    if lo >= hi {
        return 0;
    }
    let bound = descartes_bound(p, lo, hi);
    if bound <= 1 {
        return bound;
    }
    let mid = (lo + hi) / rat_int(2);
    let at_mid = if p.eval(&mid).is_zero() { 1 } else { 0 };
    count_roots_in(p, lo, &mid) + at_mid + count_roots_in(p, &mid, hi)
}

/// Minimal polynomial(s) of the selected root(s): a single factor for an
/// isolating interval, every irreducible factor for `AnyRoot`.
pub fn minimal_polynomial(spec: &AlgebraicNumberSpec) -> Result<Vec<Poly>, AlgebraicError> {
    let factors = irreducible_factors(&spec.defining)?;
    match &spec.selector {
        RootSelector::AnyRoot => Ok(factors),
        RootSelector::Interval(lo, hi) => {
            for factor in factors {
                if count_roots_in(&factor, lo, hi) == 1 {
                    return Ok(alloc::vec![factor]);
                }
            }
            // the isolating construction guarantees one factor matches
            Err(AlgebraicError::NotIsolating { roots_found: 0 })
        }
    }
}

/// Whether every selected root is an algebraic integer, i.e. whether
/// each minimal polynomial is monic with integer coefficients.
pub fn is_algebraic_integer(spec: &AlgebraicNumberSpec) -> Result<bool, AlgebraicError> {
    let minimal = minimal_polynomial(spec)?;
    Ok(minimal.iter().all(|m| m.is_monic() && m.is_integral()))
}

/// Whether no root at all is an algebraic integer.
pub fn no_root_is_algebraic_integer(p: &Poly) -> Result<bool, AlgebraicError> {
    let factors = irreducible_factors(p)?;
    Ok(factors.iter().all(|m| !(m.is_monic() && m.is_integral())))
}

// ---- named constraint equations ----

fn require(name: &'static str, n: usize, minimum: usize) -> Result<(), AlgebraicError> {
    if n < minimum {
        Err(AlgebraicError::BelowThreshold { name, n, minimum })
    } else {
        Ok(())
    }
}

fn big(n: usize) -> Rat {
    rat_int(n as i64)
}

/// The value `3/((n-1)(n-2))` that `(2δ)²` must equal when the two
/// coefficients below the top vanish.
pub fn eq_azx(n: usize) -> Result<Rat, AlgebraicError> {
    require("eq_azx", n, 6)?;
    Ok(rat(3, 1) / ((big(n) - rat_int(1)) * (big(n) - rat_int(2))))
}

/// The quartic `(2/15)(n-1)(n-2)(n-3)(n-4) t⁴ - (n-2)(n-3) t² + 1`
/// satisfied by `2δ` in the alternative vanishing pattern.
pub fn eq_xza(n: usize) -> Result<Poly, AlgebraicError> {
    require("eq_xza", n, 6)?;
    let c4 = rat(2, 15)
        * (big(n) - rat_int(1))
        * (big(n) - rat_int(2))
        * (big(n) - rat_int(3))
        * (big(n) - rat_int(4));
    let c2 = -((big(n) - rat_int(2)) * (big(n) - rat_int(3)));
    Ok(Poly::from_coeffs(alloc::vec![
        Rat::one(),
        Rat::zero(),
        c2,
        Rat::zero(),
        c4,
    ]))
}

/// The same quartic rescaled to `4δ`:
/// `(n-1)(n-2)(n-3)(n-4) t⁴ - 30(n-2)(n-3) t² + 120`.
pub fn eq_ur(n: usize) -> Result<Poly, AlgebraicError> {
    require("eq_ur", n, 6)?;
    let c4 = (big(n) - rat_int(1))
        * (big(n) - rat_int(2))
        * (big(n) - rat_int(3))
        * (big(n) - rat_int(4));
    let c2 = rat_int(-30) * (big(n) - rat_int(2)) * (big(n) - rat_int(3));
    Ok(Poly::from_coeffs(alloc::vec![
        rat_int(120),
        Rat::zero(),
        c2,
        Rat::zero(),
        c4,
    ]))
}

/// `(4β², α²)` forced when the third coefficient from the top vanishes:
/// `(6/((n-1)(2n-1)), (2n-4)/(2n-1))`.
pub fn eq_azxx(n: usize) -> Result<(Rat, Rat), AlgebraicError> {
    require("eq_azxx", n, 5)?;
    let beta_sq = rat_int(6) / ((big(n) - rat_int(1)) * (rat_int(2) * big(n) - rat_int(1)));
    let alpha_sq = (rat_int(2) * big(n) - rat_int(4)) / (rat_int(2) * big(n) - rat_int(1));
    Ok((beta_sq, alpha_sq))
}

/// `(4β², α²)` forced when the fourth coefficient from the top vanishes:
/// `(12/((n-1)(2n-1)), (2n-7)/(2n-1))`.
pub fn eq_azxx_plus(n: usize) -> Result<(Rat, Rat), AlgebraicError> {
    require("eq_azxx_plus", n, 5)?;
    let beta_sq = rat_int(12) / ((big(n) - rat_int(1)) * (rat_int(2) * big(n) - rat_int(1)));
    let alpha_sq = (rat_int(2) * big(n) - rat_int(7)) / (rat_int(2) * big(n) - rat_int(1));
    Ok((beta_sq, alpha_sq))
}

/// The quadratic `(n²-3n+2) t² + (-2n²+12n-16) t + (n²-9n+20)` whose
/// roots bound `α²` in the scaled-argument analysis.
pub fn eq_kon(n: usize) -> Result<Poly, AlgebraicError> {
    require("eq_kon", n, 6)?;
    let nn = big(n);
    let c2 = &nn * &nn - rat_int(3) * &nn + rat_int(2);
    let c1 = rat_int(-2) * &nn * &nn + rat_int(12) * &nn - rat_int(16);
    let c0 = &nn * &nn - rat_int(9) * &nn + rat_int(20);
    Ok(Poly::from_coeffs(alloc::vec![c0, c1, c2]))
}

/// Which of the two vanishing patterns the obstruction check covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LalCase {
    /// `4δ` satisfies `t² - 12/((n-1)(n-2))`; holds for every `n ≥ 6`.
    Case1,
    /// `4δ` satisfies the quartic of [`eq_ur`]; the claim needs `n ≥ 9`
    /// (at `n = 6` the roots really are algebraic integers).
    Case2,
}

/// Whether no root of the case's equation is an algebraic integer.
pub fn corollary_lal_check(n: usize, which: LalCase) -> Result<bool, AlgebraicError> {
    match which {
        LalCase::Case1 => {
            require("corollary_lal case1", n, 6)?;
            let value = rat_int(12) / ((big(n) - rat_int(1)) * (big(n) - rat_int(2)));
            let defining = Poly::from_coeffs(alloc::vec![-value, Rat::zero(), Rat::one()]);
            no_root_is_algebraic_integer(&defining)
        }
        LalCase::Case2 => {
            require("corollary_lal case2", n, 6)?;
            no_root_is_algebraic_integer(&eq_ur(n)?)
        }
    }
}

/// Pretty form for reports: `p` rendered with `t` as the variable.
pub fn render_in_t(p: &Poly) -> String {
    let s = format!("{}", p);
    s.replace('x', "t")
}
