//! Isometry of the diagonal embedding `X -> X (x) 1 + 1 (x) X`.
//!
//! For an embedding case `(d1, d2, d3)` the claim is that pairing two
//! diagonal images in the tensor product, with the left factor at central
//! charge `c_{d2}` and the right at `c_{d3}`, reproduces the Shapovalov
//! pairing at `c_{d1} = c_{d2} + c_{d3}`. Expanding a product of diagonal
//! generators distributes each letter to the left or right factor with the
//! super-algebra sign: a fermionic letter sent left picks up one sign flip
//! for every fermionic letter before it that went right.

use serde_json::{json, Value};

use crate::embeddings::{central_charge, EmbeddingCase};
use crate::rational::{self, Rational};

use num::Zero;

use super::gram::shapovalov_pair;
use super::mode::{Mode, ModeWord};
use super::pbw::monomials_up_to;
use super::{check_level_cap, ShapovalovError};

/// Expands `prod_i (X_i (x) 1 + 1 (x) X_i)` for the letters of `word` into
/// `(left, right, sign)` triples, one per subset of letters sent left. The
/// word's coefficient is carried on the left factor of every triple.
pub fn expand_diagonal(word: &ModeWord) -> Vec<(ModeWord, ModeWord, i64)> {
    let modes = word.modes();
    let n = modes.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1u32 << n) {
        let mut left: Vec<Mode> = Vec::new();
        let mut right: Vec<Mode> = Vec::new();
        let mut sign = 1i64;
        let mut fermions_gone_right = 0u32;
        for (i, m) in modes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if m.is_fermionic() && fermions_gone_right % 2 == 1 {
                    sign = -sign;
                }
                left.push(*m);
            } else {
                if m.is_fermionic() {
                    fermions_gone_right += 1;
                }
                right.push(*m);
            }
        }
        out.push((
            ModeWord::with_coefficient(left, word.coefficient().clone()),
            ModeWord::new(right),
            sign,
        ));
    }
    out
}

/// Pairing of the diagonal images of `x` and `y` in the tensor product,
/// with factor pairings at central charges `c_left` and `c_right` and the
/// product rule `<a (x) b, a' (x) b'> = <a, a'> <b, b'>`.
pub fn diagonal_pair(
    x: &ModeWord,
    y: &ModeWord,
    c_left: &Rational,
    c_right: &Rational,
) -> Rational {
    let xs = expand_diagonal(x);
    let ys = expand_diagonal(y);
    let mut acc = Rational::zero();
    for (xl, xr, sx) in &xs {
        for (yl, yr, sy) in &ys {
            let sign = Rational::from_integer((sx * sy).into());
            let left = shapovalov_pair(xl, yl, c_left);
            if left.is_zero() {
                continue;
            }
            let right = shapovalov_pair(xr, yr, c_right);
            acc += sign * left * right;
        }
    }
    acc
}

/// First pair of basis vectors on which the two pairings disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryCounterexample {
    pub x: String,
    pub y: String,
    /// Pairing at the target central charge `c_{d1}`.
    pub embedded: Rational,
    /// Pairing of the diagonal images in the product.
    pub product: Rational,
}

/// Outcome of an exhaustive isometry sweep up to a level bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryReport {
    pub case: EmbeddingCase,
    pub max_level: Rational,
    pub pairs_checked: usize,
    pub pass: bool,
    pub counterexample: Option<IsometryCounterexample>,
}

impl IsometryReport {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case.to_json(),
            "max_level": rational::format_slash(&self.max_level),
            "pairs_checked": self.pairs_checked,
            "pass": self.pass,
            "counterexample": self.counterexample.as_ref().map(|ce| json!({
                "x": ce.x,
                "y": ce.y,
                "embedded": rational::format_slash(&ce.embedded),
                "product": rational::format_slash(&ce.product),
            })),
        })
    }
}

/// Checks, for every ordered pair of canonical monomials of level at most
/// `max_level`, that the diagonal images pair the same way in the product as
/// the originals do at the target central charge. Levels above
/// [`super::LEVEL_CAP`] are refused.
pub fn isometry_check(
    case: &EmbeddingCase,
    max_level: &Rational,
) -> Result<IsometryReport, ShapovalovError> {
    check_level_cap(max_level)?;
    isometry_check_uncapped(case, max_level)
}

/// [`isometry_check`] without the default level cap.
pub fn isometry_check_uncapped(
    case: &EmbeddingCase,
    max_level: &Rational,
) -> Result<IsometryReport, ShapovalovError> {
    let c1 = central_charge(case.d1()).expect("validated case");
    let c2 = central_charge(case.d2()).expect("validated case");
    let c3 = central_charge(case.d3()).expect("validated case");
    let monomials = monomials_up_to(max_level)?;
    let mut pairs_checked = 0;
    let mut counterexample = None;
    'outer: for x in &monomials {
        let xw = x.word();
        for y in &monomials {
            let yw = y.word();
            let embedded = shapovalov_pair(&xw, &yw, &c1);
            let product = diagonal_pair(&xw, &yw, &c2, &c3);
            pairs_checked += 1;
            if embedded != product {
                counterexample = Some(IsometryCounterexample {
                    x: x.to_string(),
                    y: y.to_string(),
                    embedded,
                    product,
                });
                break 'outer;
            }
        }
    }
    Ok(IsometryReport {
        case: *case,
        max_level: max_level.clone(),
        pairs_checked,
        pass: counterexample.is_none(),
        counterexample,
    })
}
