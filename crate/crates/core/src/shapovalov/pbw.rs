//! Canonical PBW monomials of the universal vacuum module and their
//! enumeration by level and charge.
//!
//! A canonical monomial is a word of creation modes sorted family-first
//! (`L`, `J`, `G+`, `G-`) and by decreasing `|index|` within each family,
//! with bosonic repeats allowed and fermionic repeats excluded. Its level is
//! the sum of negated indices and its charge the count of `G+` minus `G-`
//! letters.

use std::fmt;
use std::str::FromStr;

use super::mode::{Mode, ModeWord};
use super::{check_level_cap, ShapovalovError};
use crate::rational::Rational;

use super::halfint::HalfInt;

/// A canonical creation-mode word; see the module docs for the ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    modes: Vec<Mode>,
}

impl PbwMonomial {
    /// The empty monomial, representing the vacuum itself.
    pub fn unit() -> PbwMonomial {
        PbwMonomial { modes: Vec::new() }
    }

    /// Validates that `modes` is a canonical creation word: every mode a
    /// creation mode, the sequence sorted by the canonical mode order
    /// (repeats allowed), and no fermionic mode repeated.
    pub fn try_new(modes: Vec<Mode>) -> Result<PbwMonomial, ShapovalovError> {
        for m in &modes {
            if !m.is_creation() {
                return Err(ShapovalovError::NotCreation(m.to_string()));
            }
        }
        for pair in modes.windows(2) {
            if pair[0] > pair[1] {
                return Err(ShapovalovError::OutOfOrder {
                    earlier: pair[0].to_string(),
                    later: pair[1].to_string(),
                });
            }
            if pair[0] == pair[1] && pair[0].is_fermionic() {
                return Err(ShapovalovError::RepeatedFermion(pair[0].to_string()));
            }
        }
        Ok(PbwMonomial { modes })
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Level of the state this monomial creates from the vacuum.
    pub fn level(&self) -> HalfInt {
        self.modes
            .iter()
            .fold(HalfInt::ZERO, |acc, m| acc + m.level())
    }

    /// `J_0`-charge of the created state.
    pub fn charge(&self) -> i64 {
        self.modes.iter().map(Mode::charge).sum()
    }

    /// The monomial as a formal word with coefficient one.
    pub fn word(&self) -> ModeWord {
        ModeWord::new(self.modes.clone())
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

impl FromStr for PbwMonomial {
    type Err = ShapovalovError;

    fn from_str(s: &str) -> Result<PbwMonomial, ShapovalovError> {
        let word: ModeWord = s.parse().map_err(ShapovalovError::Mode)?;
        PbwMonomial::try_new(word.modes().to_vec())
    }
}

/// Enumerates, in canonical order, the suffixes of monomials that can be
/// appended after having already chosen modes up to `position` (the last
/// chosen mode, if any), with `remaining` twice-level still to spend.
fn extend(
    position: Option<Mode>,
    remaining: i64,
    prefix: &mut Vec<Mode>,
    out: &mut Vec<PbwMonomial>,
) {
    if remaining == 0 {
        out.push(PbwMonomial {
            modes: prefix.clone(),
        });
        return;
    }
    // candidate next modes: every creation mode of twice-level <= remaining
    // that may follow `position` (>= it, and strictly > for fermions)
    let mut candidates: Vec<Mode> = Vec::new();
    for twice_level in 1..=remaining {
        if twice_level % 2 == 0 {
            let n = twice_level / 2;
            if n >= 2 {
                candidates.push(Mode::l(-n));
            }
            candidates.push(Mode::j(-n));
        } else if twice_level >= 3 {
            let index = HalfInt::from_twice(-twice_level);
            candidates.push(Mode::g_plus(index).expect("half-odd index"));
            candidates.push(Mode::g_minus(index).expect("half-odd index"));
        }
    }
    for next in candidates {
        let ok = match &position {
            None => true,
            Some(prev) if next.is_fermionic() => *prev < next,
            Some(prev) => *prev <= next,
        };
        if !ok {
            continue;
        }
        prefix.push(next);
        extend(Some(next), remaining - next.level().twice(), prefix, out);
        prefix.pop();
    }
}

fn enumerate_at_level(level: &Rational) -> Result<Vec<PbwMonomial>, ShapovalovError> {
    let bad = || ShapovalovError::BadLevel(crate::rational::format_compact(level));
    let half = HalfInt::from_rational(level).ok_or_else(bad)?;
    if half.is_negative() {
        return Err(bad());
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend(None, half.twice(), &mut prefix, &mut out);
    out.sort();
    Ok(out)
}

/// All canonical monomials of the given level and charge, in a fixed
/// deterministic order. Levels above [`super::LEVEL_CAP`] are refused.
pub fn pbw_basis(level: &Rational, charge: i64) -> Result<Vec<PbwMonomial>, ShapovalovError> {
    check_level_cap(level)?;
    pbw_basis_uncapped(level, charge)
}

/// [`pbw_basis`] without the default level cap.
pub fn pbw_basis_uncapped(
    level: &Rational,
    charge: i64,
) -> Result<Vec<PbwMonomial>, ShapovalovError> {
    Ok(enumerate_at_level(level)?
        .into_iter()
        .filter(|m| m.charge() == charge)
        .collect())
}

/// The charges with a nonempty basis at the given level, ascending.
pub fn charges_at_level(level: &Rational) -> Result<Vec<i64>, ShapovalovError> {
    let mut charges: Vec<i64> = enumerate_at_level(level)?
        .iter()
        .map(PbwMonomial::charge)
        .collect();
    charges.sort_unstable();
    charges.dedup();
    Ok(charges)
}

/// All monomials with level at most `max_level`, for exhaustive sweeps.
pub(crate) fn monomials_up_to(max_level: &Rational) -> Result<Vec<PbwMonomial>, ShapovalovError> {
    let bad = || ShapovalovError::BadLevel(crate::rational::format_compact(max_level));
    let half = HalfInt::from_rational(max_level).ok_or_else(bad)?;
    if half.is_negative() {
        return Err(bad());
    }
    let mut out = Vec::new();
    for twice in 0..=half.twice() {
        let level = HalfInt::from_twice(twice).to_rational();
        out.extend(enumerate_at_level(&level)?);
    }
    Ok(out)
}
