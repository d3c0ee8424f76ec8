//! The return map of `y' = p(x) y² + ε q(x) y³` as a truncated series.
//!
//! Writing `y(x) = Σ_{k≥1} u_k(x; ε) c^k` for the solution with
//! `y(a) = c` and matching powers of `c` gives
//!
//! ```text
//! u_k' = p · Σ_{i+j=k} u_i u_j  +  ε q · Σ_{i+j+l=k} u_i u_j u_l,
//! u_1(a) = 1,  u_k(a) = 0  (k ≥ 2),
//! ```
//!
//! which is solved order by order with exact antiderivatives. Each `u_k`
//! is a polynomial in `x` whose coefficients are polynomials in `ε`, so
//! the truncated return map `y(b) = Σ w_{k,j} c^k ε^j` is exact and the
//! center question "up to order K" reduces to exact zero tests of the
//! `w_{k,j}`. The fixed-step integrator at the bottom is the independent
//! floating-point cross-check.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::poly::{Endpoints, Poly};
use crate::rat::Rat;

/// Truncated return map: `y(b) = Σ_{k≥1, j} w_{k,j} c^k ε^j` up to
/// `c`-order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnMap {
    order: usize,
    endpoints: Endpoints,
    /// `rows[k - 1][j]` is `w_{k,j}`; trailing zeros trimmed per row.
    rows: Vec<Vec<Rat>>,
}

impl ReturnMap {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn endpoints(&self) -> &Endpoints {
        &self.endpoints
    }

    /// `w_{k,j}` (zero outside the stored triangle).
    pub fn coeff(&self, k: usize, j: usize) -> Rat {
        if k == 0 || k > self.order {
            return Rat::zero();
        }
        self.rows[k - 1].get(j).cloned().unwrap_or_else(Rat::zero)
    }

    /// All nonzero `(k, j, w_{k,j})` in lexicographic order.
    pub fn nonzero_coeffs(&self) -> Vec<(usize, usize, Rat)> {
        let mut out = Vec::new();
        for (k, row) in self.rows.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                if !w.is_zero() {
                    out.push((k + 1, j, w.clone()));
                }
            }
        }
        out
    }

    /// Evaluate the truncated series at a concrete initial value and ε.
    pub fn eval_series(&self, y0: f64, eps: f64) -> f64 {
        let mut total = 0.0;
        let mut y_pow = 1.0;
        for row in &self.rows {
            y_pow *= y0;
            let mut row_val = 0.0;
            let mut e_pow = 1.0;
            for w in row {
                row_val += w.to_f64().unwrap_or(f64::NAN) * e_pow;
                e_pow *= eps;
            }
            total += row_val * y_pow;
        }
        total
    }
}

/// Per-ε verdicts and the exact parametric-center verdict, both only
/// meaningful "up to order K".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterVerdict {
    pub order: usize,
    pub is_center_at: Vec<(Rat, bool)>,
    pub is_parametric_center: bool,
    pub first_obstruction: Option<(usize, usize, Rat)>,
}

/// Compute the truncated return map of `y' = p y² + ε q y³` on `[a, b]`.
///
/// `order` is the `c`-truncation `K ≥ 2`. The recursion is sequential in
/// `k`; each `u_k` needs every lower order.
pub fn return_map(p: &Poly, q: &Poly, e: &Endpoints, order: usize) -> ReturnMap {
    assert!(order >= 2, "truncation order must be at least 2");
    // u[k][j]: coefficient of ε^j in u_{k+1}, a polynomial in x
    let mut u: Vec<Vec<Poly>> = Vec::with_capacity(order);
    u.push(vec![Poly::one()]);
    // square[s]: Σ_{i+j=s+2, i,j≥1} u_i u_j, filled as orders appear
    let mut square: Vec<Vec<Poly>> = Vec::new();
    for k in 2..=order {
        // the quadratic convolution at order k only involves u_1..u_(k-1)
        let mut quad: Vec<Poly> = Vec::new();
        for i in 1..k {
            accumulate_eps_product(&mut quad, &u[i - 1], &u[k - i - 1], None);
        }
        square.push(quad.clone());
        // cubic convolution Σ_{i+j+l=k} u_i u_j u_l = Σ_l u_l · square[k-l]
        let mut cubic: Vec<Poly> = Vec::new();
        for l in 1..=k.saturating_sub(2) {
            accumulate_eps_product(&mut cubic, &u[l - 1], &square[k - l - 2], None);
        }
        let mut rhs: Vec<Poly> = Vec::new();
        accumulate_scaled(&mut rhs, &quad, p, 0);
        accumulate_scaled(&mut rhs, &cubic, q, 1);
        // integrate each ε-coefficient from a
        let integrated: Vec<Poly> = rhs
            .iter()
            .map(|component| {
                let f = component.antiderivative();
                let at_a = f.eval(e.a());
                &f - &Poly::constant(at_a)
            })
            .collect();
        u.push(trim_polys(integrated));
    }

    let rows = u
        .iter()
        .map(|row| {
            let mut values: Vec<Rat> = row.iter().map(|poly| poly.eval(e.b())).collect();
            while values.last().map_or(false, |v| v.is_zero()) {
                values.pop();
            }
            values
        })
        .collect();
    ReturnMap {
        order,
        endpoints: e.clone(),
        rows,
    }
}

fn trim_polys(mut polys: Vec<Poly>) -> Vec<Poly> {
    while polys.last().map_or(false, |p| p.is_zero()) {
        polys.pop();
    }
    polys
}

/// `out += a * b` as polynomials in ε with `Poly` coefficients.
fn accumulate_eps_product(out: &mut Vec<Poly>, a: &[Poly], b: &[Poly], scale: Option<&Poly>) {
    for (i, pa) in a.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (j, pb) in b.iter().enumerate() {
            if pb.is_zero() {
                continue;
            }
            let mut term = pa * pb;
            if let Some(s) = scale {
                term = &term * s;
            }
            let idx = i + j;
            if out.len() <= idx {
                out.resize(idx + 1, Poly::zero());
            }
            out[idx] = &out[idx] + &term;
        }
    }
}

/// `out += factor · source · ε^shift`.
fn accumulate_scaled(out: &mut Vec<Poly>, source: &[Poly], factor: &Poly, shift: usize) {
    for (j, poly) in source.iter().enumerate() {
        if poly.is_zero() {
            continue;
        }
        let idx = j + shift;
        if out.len() <= idx {
            out.resize(idx + 1, Poly::zero());
        }
        out[idx] = &out[idx] + &(poly * factor);
    }
}

/// Evaluate the center verdicts of a computed return map.
pub fn center_verdict(rm: &ReturnMap, eps_samples: &[Rat]) -> CenterVerdict {
    let mut first_obstruction = None;
    'outer: for k in 2..=rm.order {
        let row = &rm.rows[k - 1];
        for (j, w) in row.iter().enumerate() {
            if !w.is_zero() {
                first_obstruction = Some((k, j, w.clone()));
                break 'outer;
            }
        }
    }
    let is_parametric_center = first_obstruction.is_none();
    let is_center_at = eps_samples
        .iter()
        .map(|eps| {
            let centered = (2..=rm.order).all(|k| {
                let mut value = Rat::zero();
                let mut eps_pow = Rat::from_integer(1.into());
                for w in &rm.rows[k - 1] {
                    value = value + w * &eps_pow;
                    eps_pow = &eps_pow * eps;
                }
                value.is_zero()
            });
            (eps.clone(), centered)
        })
        .collect();
    CenterVerdict {
        order: rm.order,
        is_center_at,
        is_parametric_center,
        first_obstruction,
    }
}

/// The ε-linear column `w_{k,1}` for `3 ≤ k ≤ K` (the lowest order where
/// the cubic term can contribute).
pub fn epsilon_linear_obstructions(rm: &ReturnMap) -> Vec<Rat> {
    (3..=rm.order).map(|k| rm.coeff(k, 1)).collect()
}

/// Failure of the numeric oracle.
#[derive(Clone, Debug, PartialEq)]
pub enum FlowError {
    /// The trajectory left the range of `f64` — the initial value was
    /// not small enough for this instance.
    NonFinite { x: f64 },
    /// Fewer than 100 steps requested.
    TooFewSteps { steps: usize },
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::NonFinite { x } => write!(
                f,
                "trajectory became non-finite near x = {}; initial value too large for this instance",
                x
            ),
            FlowError::TooFewSteps { steps } => {
                write!(f, "integrator needs at least 100 steps, got {}", steps)
            }
        }
    }
}

/// Independent fixed-step RK4 integration of `y' = p y² + ε q y³` from
/// `a` to `b`; returns `y(b)`.
pub fn numeric_flow(
    p: &Poly,
    q: &Poly,
    e: &Endpoints,
    eps: f64,
    y0: f64,
    steps: usize,
) -> Result<f64, FlowError> {
    if steps < 100 {
        return Err(FlowError::TooFewSteps { steps });
    }
    let pc = p.f64_coeffs();
    let qc = q.f64_coeffs();
    let horner = |coeffs: &[f64], x: f64| {
        let mut acc = 0.0;
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let f = |x: f64, y: f64| {
        let y2 = y * y;
        horner(&pc, x) * y2 + eps * horner(&qc, x) * y2 * y
    };
    let a = e.a().to_f64().unwrap_or(f64::NAN);
    let b = e.b().to_f64().unwrap_or(f64::NAN);
    let h = (b - a) / steps as f64;
    let mut x = a;
    let mut y = y0;
    for _ in 0..steps {
        let k1 = f(x, y);
        let k2 = f(x + h / 2.0, y + h * k1 / 2.0);
        let k3 = f(x + h / 2.0, y + h * k2 / 2.0);
        let k4 = f(x + h, y + h * k3);
        y += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        x += h;
        if !y.is_finite() {
            return Err(FlowError::NonFinite { x });
        }
    }
    Ok(y)
}

/// Human-readable summary used by the command-line front end.
pub fn describe_obstruction(ob: &Option<(usize, usize, Rat)>) -> String {
    match ob {
        None => String::from("none"),
        Some((k, j, w)) => alloc::format!("w[{},{}] = {}", k, j, w),
    }
}
