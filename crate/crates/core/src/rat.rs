//! The rational scalar type and its text grammar.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; arithmetic on it is exact. The text grammar
//! accepted by [`parse_rat`] is deliberately strict — optional sign,
//! integer, optional `/` followed by a positive integer — because the
//! same strings travel through JSON files and command lines unchanged.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

/// Exact rational scalar, the ground field for all polynomial algebra.
pub type Rat = num_rational::BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Error produced by [`parse_rat`], carrying the byte position of the
/// first offending character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

fn err(position: usize, message: &str) -> ParseRatError {
    ParseRatError {
        position,
        message: String::from(message),
    }
}

/// Parse a rational from the strict grammar
/// `[+-]? digits ( '/' positive-digits )?`.
///
/// The denominator, when present, must be a positive integer; the value
/// is reduced on construction.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(err(0, "empty rational"));
    }
    let mut pos = 0;
    if bytes[pos] == b'+' || bytes[pos] == b'-' {
        pos += 1;
    }
    let digits_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == digits_start {
        return Err(err(pos, "expected digit"));
    }
    let numerator = match BigInt::from_str(&text[..pos]) {
        Ok(n) => n,
        Err(_) => return Err(err(0, "invalid integer")),
    };
    if pos == bytes.len() {
        return Ok(Rat::from_integer(numerator));
    }
    if bytes[pos] != b'/' {
        return Err(err(pos, "expected '/' or end of input"));
    }
    pos += 1;
    let den_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == den_start {
        return Err(err(pos, "expected digit in denominator"));
    }
    if pos != bytes.len() {
        return Err(err(pos, "trailing characters after denominator"));
    }
    let denominator = match BigInt::from_str(&text[den_start..]) {
        Ok(d) => d,
        Err(_) => return Err(err(den_start, "invalid denominator")),
    };
    if denominator == BigInt::from(0) {
        return Err(err(den_start, "denominator must be positive"));
    }
    Ok(Rat::new(numerator, denominator))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("-1").unwrap(), rat_int(-1));
        assert_eq!(parse_rat("+7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rat("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rat("0").unwrap(), Rat::zero());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/").is_err());
        assert!(parse_rat("/2").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("2/3x").is_err());
        assert_eq!(parse_rat("1/-2").unwrap_err().position, 2);
    }

    #[test]
    fn arithmetic_is_reduced() {
        let sum = rat(1, 6) + rat(1, 3);
        assert_eq!(sum, rat(1, 2));
        assert_eq!(sum.denom(), &num_bigint::BigInt::from(2));
    }
}
