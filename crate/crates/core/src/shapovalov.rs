//! Symbolic mode algebra of the universal N=2 superconformal vertex algebra
//! in the Neveu-Schwarz sector.
//!
//! Words in the modes `L_n`, `J_n`, `G+_r`, `G-_r` act on the vacuum and are
//! straightened to a canonical PBW basis using the algebra's commutation
//! relations at a chosen central charge. On top of that sit the Shapovalov
//! pairing `<X, Y> = pi(dagger(X) Y)` (with `pi` the projection onto the
//! span of the vacuum), exact Gram blocks per `(level, charge)`, graded
//! dimensions of the minimal quotients `M_d` as Gram ranks, and the isometry
//! check for diagonal embeddings `X -> X(x)1 + 1(x)X`.
//!
//! This gives a second, character-free route to the graded dimensions that
//! the q-series side computes, so the two can cross-check each other.

mod gram;
mod halfint;
mod isometry;
mod mode;
mod pbw;
mod straighten;

use thiserror::Error;

pub use gram::{
    gram_block, gram_block_uncapped, quotient_graded_dim, quotient_graded_dim_uncapped,
    shapovalov_pair, GramBlock,
};
pub use halfint::{HalfInt, ParseHalfIntError};
pub use isometry::{
    diagonal_pair, expand_diagonal, isometry_check, isometry_check_uncapped, IsometryCounterexample,
    IsometryReport,
};
pub use mode::{Family, Mode, ModeError, ModeWord};
pub use pbw::{charges_at_level, pbw_basis, pbw_basis_uncapped, PbwMonomial};
pub use straighten::{act_on_vacuum, act_on_vacuum_with_strategy, StateVector, Strategy};

/// Default upper bound on the levels served by [`pbw_basis`],
/// [`gram_block`], [`quotient_graded_dim`], and [`isometry_check`]; basis
/// sizes grow quickly, so deeper levels must be requested through the
/// `_uncapped` variants.
pub const LEVEL_CAP: i64 = 6;

#[derive(Debug, Error)]
pub enum ShapovalovError {
    #[error("level {level} exceeds the default cap {LEVEL_CAP}; use the _uncapped variant if intended")]
    LevelCapExceeded { level: String },
    #[error("level must be a nonnegative half-integer, got {0}")]
    BadLevel(String),
    #[error("quotient index d must be >= 2, got {0}")]
    IndexTooSmall(i64),
    #[error("not a creation mode: {0} does not map the vacuum to a deeper level")]
    NotCreation(String),
    #[error("modes out of canonical order: {later} may not follow {earlier}")]
    OutOfOrder { earlier: String, later: String },
    #[error("repeated fermionic mode {0} squares to zero")]
    RepeatedFermion(String),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error("invalid serialized Gram block: {0}")]
    InvalidJson(String),
}

fn check_level_cap(level: &crate::rational::Rational) -> Result<(), ShapovalovError> {
    if *level > crate::rational::int(LEVEL_CAP) {
        return Err(ShapovalovError::LevelCapExceeded {
            level: crate::rational::format_compact(level),
        });
    }
    Ok(())
}
