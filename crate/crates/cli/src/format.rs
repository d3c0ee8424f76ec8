//! Text formats shared by every subcommand: polynomials as JSON arrays
//! of rational strings (ascending degree), rationals in the strict
//! `sign digits [/ digits]` grammar, endpoints as two rationals.

use abelab_core::poly::{Endpoints, Poly};
use abelab_core::rat::{parse_rat, Rat};
use num_traits::Zero;

/// A usage-level input error; the binary maps these to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

fn fail<T>(message: String) -> Result<T, InputError> {
    Err(InputError(message))
}

/// Parse a polynomial from a JSON array of rational strings,
/// e.g. `["-1","0","2"]` for `2x² - 1`. Trailing zero coefficients are
/// trimmed. Errors carry the offending array index.
pub fn parse_poly(text: &str) -> Result<Poly, InputError> {
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return fail(format!("polynomial must be a JSON array: {}", e)),
    };
    let items = match value.as_array() {
        Some(items) => items,
        None => return fail(format!("polynomial must be a JSON array, got: {}", value)),
    };
    let mut coeffs = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let s = match item.as_str() {
            Some(s) => s,
            None => {
                return fail(format!(
                    "coefficient {} must be a rational string, got: {}",
                    index, item
                ))
            }
        };
        match parse_rat(s) {
            Ok(r) => coeffs.push(r),
            Err(e) => {
                return fail(format!(
                    "coefficient {}: invalid rational {:?}: {}",
                    index, s, e
                ))
            }
        }
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Render a polynomial back to the same JSON array form.
pub fn poly_to_json(p: &Poly) -> serde_json::Value {
    serde_json::Value::Array(
        p.coeffs()
            .iter()
            .map(|c| serde_json::Value::String(c.to_string()))
            .collect(),
    )
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// Parse a bare rational argument.
pub fn parse_rat_arg(text: &str, what: &str) -> Result<Rat, InputError> {
    parse_rat(text).map_err(|e| InputError(format!("{}: invalid rational {:?}: {}", what, text, e)))
}

/// Parse two distinct endpoints.
pub fn parse_endpoints(a: &str, b: &str) -> Result<Endpoints, InputError> {
    let a = parse_rat_arg(a, "endpoint a")?;
    let b = parse_rat_arg(b, "endpoint b")?;
    Endpoints::new(a, b).ok_or_else(|| InputError("endpoints must be distinct".into()))
}

/// Parse a nonzero rational (for linear-map slopes).
pub fn parse_nonzero_rat(text: &str, what: &str) -> Result<Rat, InputError> {
    let r = parse_rat_arg(text, what)?;
    if r.is_zero() {
        fail(format!("{} must be nonzero", what))
    } else {
        Ok(r)
    }
}
