//! Half-integers stored exactly as twice their value.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::rational::{self, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse half-integer from {input:?}")]
pub struct ParseHalfIntError {
    input: String,
}

/// An element of `(1/2)Z`, the index lattice of NS-sector modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    /// Builds the half-integer `twice / 2`.
    pub fn from_twice(twice: i64) -> HalfInt {
        HalfInt(twice)
    }

    pub fn from_int(n: i64) -> HalfInt {
        HalfInt(2 * n)
    }

    /// Twice the value; always exact.
    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn is_half_odd(self) -> bool {
        !self.is_integer()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn abs(self) -> HalfInt {
        HalfInt(self.0.abs())
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }

    /// Exact conversion from a rational in `(1/2)Z`.
    pub fn from_rational(r: &Rational) -> Option<HalfInt> {
        let doubled = r * rat(2, 1);
        if !doubled.is_integer() {
            return None;
        }
        rational::to_i64(&doubled).map(HalfInt)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;

    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;

    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;

    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    fn from_str(s: &str) -> Result<HalfInt, ParseHalfIntError> {
        let err = || ParseHalfIntError {
            input: s.to_owned(),
        };
        let r = rational::parse_rational(s).map_err(|_| err())?;
        HalfInt::from_rational(&r).ok_or_else(err)
    }
}
