//! Modes of the N=2 superconformal algebra and formal words in them.
//!
//! NS-sector modes are `L_n` and `J_n` with integer `n` and the fermionic
//! `G+_r`, `G-_r` with half-odd `r`. The modes partition exactly into
//! annihilators of the vacuum (`L_n` for `n >= -1`, `J_n` for `n >= 0`,
//! `G+-_r` for `r >= -1/2`) and creation modes (everything else).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::One;
use thiserror::Error;

use crate::rational::Rational;

use super::halfint::HalfInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModeError {
    #[error("index {index} has the wrong parity for {family}: L and J take integers, G+ and G- take half-odd-integers")]
    IndexParity { family: Family, index: HalfInt },
    #[error("cannot parse mode from {0:?}")]
    ParseMode(String),
    #[error("cannot parse mode word from {0:?}")]
    ParseWord(String),
}

/// Generator family, in canonical order: `L`, `J`, `G+`, `G-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    L,
    J,
    GPlus,
    GMinus,
}

impl Family {
    pub fn is_fermionic(self) -> bool {
        matches!(self, Family::GPlus | Family::GMinus)
    }

    fn label(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::J => "J",
            Family::GPlus => "G+",
            Family::GMinus => "G-",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A single mode, with the family/index parity enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    family: Family,
    index: HalfInt,
}

impl Mode {
    pub fn new(family: Family, index: HalfInt) -> Result<Mode, ModeError> {
        let parity_ok = if family.is_fermionic() {
            index.is_half_odd()
        } else {
            index.is_integer()
        };
        if !parity_ok {
            return Err(ModeError::IndexParity { family, index });
        }
        Ok(Mode { family, index })
    }

    pub fn l(n: i64) -> Mode {
        Mode {
            family: Family::L,
            index: HalfInt::from_int(n),
        }
    }

    pub fn j(n: i64) -> Mode {
        Mode {
            family: Family::J,
            index: HalfInt::from_int(n),
        }
    }

    pub fn g_plus(index: HalfInt) -> Result<Mode, ModeError> {
        Mode::new(Family::GPlus, index)
    }

    pub fn g_minus(index: HalfInt) -> Result<Mode, ModeError> {
        Mode::new(Family::GMinus, index)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> HalfInt {
        self.index
    }

    pub fn is_fermionic(&self) -> bool {
        self.family.is_fermionic()
    }

    /// `J_0`-charge contribution: `+1` for `G+`, `-1` for `G-`, `0` else.
    pub fn charge(&self) -> i64 {
        match self.family {
            Family::GPlus => 1,
            Family::GMinus => -1,
            _ => 0,
        }
    }

    /// Level raised when acting on a state: minus the index.
    pub fn level(&self) -> HalfInt {
        -self.index
    }

    /// Whether the mode annihilates the vacuum: `L_n` for `n >= -1`, `J_n`
    /// for `n >= 0`, `G+-_r` for `r >= -1/2`.
    pub fn annihilates_vacuum(&self) -> bool {
        let t = self.index.twice();
        match self.family {
            Family::L => t >= -2,
            Family::J => t >= 0,
            Family::GPlus | Family::GMinus => t >= -1,
        }
    }

    /// The complement of [`Mode::annihilates_vacuum`]: `L_{-n}` with
    /// `n >= 2`, `J_{-n}` with `n >= 1`, `G+-_{-r}` with `r >= 3/2`.
    pub fn is_creation(&self) -> bool {
        !self.annihilates_vacuum()
    }

    /// Adjoint under the anti-involution: negates the index and exchanges
    /// `G+` with `G-`.
    pub fn dagger(&self) -> Mode {
        let family = match self.family {
            Family::GPlus => Family::GMinus,
            Family::GMinus => Family::GPlus,
            other => other,
        };
        Mode {
            family,
            index: -self.index,
        }
    }
}

/// Canonical order: by family (`L`, `J`, `G+`, `G-`), then by decreasing
/// `|index|`, then by increasing index. Creation words sorted this way are
/// the canonical PBW monomials.
impl Ord for Mode {
    fn cmp(&self, other: &Mode) -> Ordering {
        self.family
            .cmp(&other.family)
            .then(other.index.abs().cmp(&self.index.abs()))
            .then(self.index.cmp(&other.index))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Mode) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

impl FromStr for Mode {
    type Err = ModeError;

    fn from_str(s: &str) -> Result<Mode, ModeError> {
        let err = || ModeError::ParseMode(s.to_owned());
        let (family, rest) = if let Some(rest) = s.strip_prefix("G+") {
            (Family::GPlus, rest)
        } else if let Some(rest) = s.strip_prefix("G-") {
            (Family::GMinus, rest)
        } else if let Some(rest) = s.strip_prefix('L') {
            (Family::L, rest)
        } else if let Some(rest) = s.strip_prefix('J') {
            (Family::J, rest)
        } else {
            return Err(err());
        };
        let index: HalfInt = rest.parse().map_err(|_| err())?;
        Mode::new(family, index).map_err(|_| err())
    }
}

/// A formal, unreduced word in the mode algebra with a rational coefficient.
///
/// `Display` renders only the modes (dot-separated, `"1"` when empty); the
/// coefficient is carried separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeWord {
    modes: Vec<Mode>,
    coefficient: Rational,
}

impl ModeWord {
    pub fn new(modes: Vec<Mode>) -> ModeWord {
        ModeWord {
            modes,
            coefficient: Rational::one(),
        }
    }

    pub fn with_coefficient(modes: Vec<Mode>, coefficient: Rational) -> ModeWord {
        ModeWord {
            modes,
            coefficient,
        }
    }

    /// The empty word (the identity of the mode algebra).
    pub fn unit() -> ModeWord {
        ModeWord::new(Vec::new())
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Total level raised when the word acts on the vacuum: sum of negated
    /// indices.
    pub fn level(&self) -> HalfInt {
        self.modes
            .iter()
            .fold(HalfInt::ZERO, |acc, m| acc + m.level())
    }

    /// Net `J_0`-charge of the word.
    pub fn charge(&self) -> i64 {
        self.modes.iter().map(Mode::charge).sum()
    }

    /// Anti-involution: reverses the word and daggers each letter; the
    /// coefficient is unchanged.
    pub fn dagger(&self) -> ModeWord {
        ModeWord {
            modes: self.modes.iter().rev().map(Mode::dagger).collect(),
            coefficient: self.coefficient.clone(),
        }
    }

    /// Concatenation `self . other`, multiplying coefficients.
    pub fn concat(&self, other: &ModeWord) -> ModeWord {
        let mut modes = Vec::with_capacity(self.modes.len() + other.modes.len());
        modes.extend_from_slice(&self.modes);
        modes.extend_from_slice(&other.modes);
        ModeWord {
            modes,
            coefficient: &self.coefficient * &other.coefficient,
        }
    }
}

impl fmt::Display for ModeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modes.is_empty() {
            return f.write_str("1");
        }
        for (i, m) in self.modes.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for ModeWord {
    type Err = ModeError;

    fn from_str(s: &str) -> Result<ModeWord, ModeError> {
        if s == "1" {
            return Ok(ModeWord::unit());
        }
        if s.is_empty() {
            return Err(ModeError::ParseWord(s.to_owned()));
        }
        let modes = s
            .split('.')
            .map(Mode::from_str)
            .collect::<Result<Vec<Mode>, ModeError>>()
            .map_err(|_| ModeError::ParseWord(s.to_owned()))?;
        Ok(ModeWord::new(modes))
    }
}
