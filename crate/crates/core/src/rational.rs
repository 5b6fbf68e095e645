//! Exact rational scalars used throughout the algebraic modules.
//!
//! Everything on the root-system / enveloping-algebra side is computed over
//! arbitrary-precision rationals; floating point is confined to the matrix
//! realization in [`crate::hccell`]. Rationals are rendered as `"p/q"` (or
//! `"p"` when integral) in every JSON surface.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Error parsing a `"p/q"` literal.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parse `"p"` or `"p/q"` with optional sign, e.g. `-1/2`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let num_part = parts.next().unwrap_or("");
    let numer: BigInt = num_part
        .parse()
        .map_err(|_| ParseRatError::Invalid(s.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(numer)),
        Some(den_part) => {
            let denom: BigInt = den_part
                .parse()
                .map_err(|_| ParseRatError::Invalid(s.to_string()))?;
            if denom.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Render a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// True iff `r` is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}

/// True iff `r` is a positive integer (the Duflo forbidden set `{1, 2, ...}`).
pub fn is_positive_integer(r: &Rat) -> bool {
    is_integer(r) && r.is_positive()
}

/// Exact integer value when `r` is integral and fits in `i64`.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    use num::ToPrimitive;
    r.numer().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-3", "1/2", "-1/2", "7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("4/2").unwrap(), rat_int(2));
        assert_eq!(format_rat(&parse_rat("-2/-4").unwrap()), "1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_rat(""), Err(ParseRatError::Empty)));
        assert!(parse_rat("a/b").is_err());
        assert!(matches!(
            parse_rat("1/0"),
            Err(ParseRatError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn integrality_predicates() {
        assert!(is_integer(&rat_int(-4)));
        assert!(!is_integer(&rat(1, 2)));
        assert!(is_nonneg_integer(&rat_int(0)));
        assert!(!is_nonneg_integer(&rat_int(-1)));
        assert!(is_positive_integer(&rat_int(1)));
        assert!(!is_positive_integer(&rat_int(0)));
    }
}
