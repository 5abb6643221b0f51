//! Exact rational coefficients and their text rendering.
//!
//! All series coefficients, weights, and Gram entries in this crate are
//! [`Rational`] values. `num`'s `Ratio` keeps them in lowest terms with a
//! positive denominator, which is exactly the invariant we need.

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or plain integer `"n"` (sugar for `n/1`).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let bad = || ParseRationalError::Invalid(s.to_owned());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_owned()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Renders as `"num/den"` with the denominator always present, so integers
/// come out as `"n/1"`. This is the form used in all JSON output.
pub fn format_slash(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact rendering: integers as `"n"`, everything else as `"p/q"`.
pub fn format_compact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

/// Converts an exact integer rational to `BigInt`; `None` if not an integer.
pub fn to_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Exact conversion to `i64`; `None` on non-integers or overflow.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    r.to_integer().to_i64()
}
