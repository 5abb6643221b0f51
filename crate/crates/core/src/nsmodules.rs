//! Module labels, weight formulas, and NS-sector characters for the N=2
//! minimal quotients `M_d`.
//!
//! An irreducible `M_d`-module is labeled `C_{p;r}` with `1 <= r <= d-1` and
//! `-r <= p <= r-1`; it lies in the Neveu-Schwarz sector exactly when `p+r`
//! is odd. Only the `p = 0` characters are computed here: they are the ones
//! with vanishing `J_0`-weight, and among them the integer-conformal-weight
//! modules ([`allowed_integer_modules`]) are the only candidates that can
//! appear in vacuum-preserving tensor-product decompositions.
//!
//! The character of `C_r = C_{0;r}` is assembled from the inverse cubed
//! Euler product and the theta product of [`crate::qseries`]:
//!
//! ```text
//! tr_{C_r}(q^{L_0}) = q^{Delta_{0,r}} * prod_{i>=1} (1-q^i)^{-3}
//!                     * sum_{j in Z} s_j * theta_3(1;q)
//!                       * (1-q^{|a_j|})/(1+q^{|a_j|}) * q^{j(dj+r)}
//! ```
//!
//! where `a_j = dj + r/2`, `s_j` is the sign of `a_j`, and the sum over `j`
//! is truncated to an adaptive symmetric window that is widened until the
//! truncated series stabilizes.

use std::fmt;

use num::{One, Signed};
use thiserror::Error;

use crate::qseries::{QSeries, QSeriesError, Sign};
use crate::rational::{int, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("quotient index d must be >= 2, got {0}")]
    IndexTooSmall(i64),
    #[error("module index r={r} outside 1..={max} for d={d}")]
    ROutOfRange { d: i64, r: i64, max: i64 },
    #[error("charge label p={p} outside {min}..={max} for r={r}")]
    POutOfRange { p: i64, r: i64, min: i64, max: i64 },
}

#[derive(Debug, Error)]
pub enum CharacterError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("character formula covers Neveu-Schwarz labels only: (d={d}, p=0, r={r}) has even r")]
    NotNeveuSchwarz { d: i64, r: i64 },
    #[error("summation window for (d={d}, r={r}) failed to stabilize after {doublings} doublings")]
    WindowUnstable { d: i64, r: i64, doublings: u32 },
    #[error(transparent)]
    Series(#[from] QSeriesError),
}

/// Sector of a module: fermionic modes have half-odd indices in NS and
/// integer indices in R.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    NeveuSchwarz,
    Ramond,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::NeveuSchwarz => write!(f, "NS"),
            Sector::Ramond => write!(f, "R"),
        }
    }
}

/// Label `(d, p, r)` of an irreducible `M_d`-module, validated at
/// construction: `d >= 2`, `1 <= r <= d-1`, `-r <= p <= r-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleLabel {
    d: i64,
    r: i64,
    p: i64,
}

impl ModuleLabel {
    pub fn new(d: i64, p: i64, r: i64) -> Result<ModuleLabel, LabelError> {
        if d < 2 {
            return Err(LabelError::IndexTooSmall(d));
        }
        if !(1..=d - 1).contains(&r) {
            return Err(LabelError::ROutOfRange { d, r, max: d - 1 });
        }
        if !(-r..=r - 1).contains(&p) {
            return Err(LabelError::POutOfRange {
                p,
                r,
                min: -r,
                max: r - 1,
            });
        }
        Ok(ModuleLabel { d, r, p })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// NS exactly when `p + r` is odd.
    pub fn sector(&self) -> Sector {
        if (self.p + self.r).rem_euclid(2) == 1 {
            Sector::NeveuSchwarz
        } else {
            Sector::Ramond
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[d={},p={},r={}]", self.d, self.p, self.r)
    }
}

/// Exact highest weights of a labeled module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightData {
    pub conformal_weight: Rational,
    pub j_weight: Rational,
}

impl WeightData {
    pub fn of(label: &ModuleLabel) -> WeightData {
        WeightData {
            conformal_weight: conformal_weight(label),
            j_weight: j_weight(label),
        }
    }
}

/// Highest conformal weight
/// `Delta_{p,r} = (r^2 - p^2 - 1)/(4d) + (1 + (-1)^{r+p})/16`.
pub fn conformal_weight(label: &ModuleLabel) -> Rational {
    let (d, p, r) = (label.d, label.p, label.r);
    let main = rat(r * r - p * p - 1, 4 * d);
    let parity = if (r + p) % 2 == 0 { rat(1, 8) } else { int(0) };
    main + parity
}

/// Highest `J_0`-weight `j_{p,r} = p/d + (1 + (-1)^{p+r})/4`.
pub fn j_weight(label: &ModuleLabel) -> Rational {
    let (d, p, r) = (label.d, label.p, label.r);
    let main = rat(p, d);
    let parity = if (r + p) % 2 == 0 { rat(1, 2) } else { int(0) };
    main + parity
}

/// NS labels `(d, 0, r)` whose highest conformal weight is an integer:
/// `r` odd, `1 <= r <= d-1`, and `4d` divides `r^2 - 1`. Sorted by `r`.
///
/// These are the only modules that can appear when decomposing a product of
/// vacuum characters, whose support lies in the integers and half-integers
/// with `J_0`-weight zero at the top.
pub fn allowed_integer_modules(d: i64) -> Vec<ModuleLabel> {
    if d < 2 {
        return Vec::new();
    }
    (1..d)
        .step_by(2)
        .filter(|r| (r * r - 1) % (4 * d) == 0)
        .map(|r| ModuleLabel::new(d, 0, r).expect("range checked"))
        .collect()
}

/// Smallest nonnegative integer `k` with `k^2 >= x`.
fn ceil_sqrt(x: &Rational) -> i64 {
    if !x.is_positive() {
        return 0;
    }
    let mut k = 0i64;
    while int(k * k) < *x {
        k += 1;
    }
    k
}

/// Character of `C_r = C_{0;r}` over `M_d` with an explicit symmetric
/// summation window `|j| <= j_window`.
///
/// This is the single-window building block behind [`character_c`]; it is
/// public so the stabilization behavior itself can be observed: widening the
/// window beyond the adaptive cutoff must not change any coefficient below
/// the truncation order.
pub fn character_c_windowed(
    d: i64,
    r: i64,
    order: &Rational,
    j_window: i64,
) -> Result<QSeries, CharacterError> {
    let label = ModuleLabel::new(d, 0, r)?;
    if label.sector() != Sector::NeveuSchwarz {
        return Err(CharacterError::NotNeveuSchwarz { d, r });
    }
    let delta = conformal_weight(&label);
    let inner_order = order - &delta;
    if !inner_order.is_positive() {
        return Ok(QSeries::zero(order));
    }

    let theta = QSeries::theta3(&inner_order);
    let eta3 = QSeries::eta_inv_cubed(&inner_order);
    let mut sum = QSeries::zero(&inner_order);
    for j in -j_window..=j_window {
        // exponent shift q^{j(dj+r)}; nonnegative for every integer j
        let shift = int(j * (d * j + r));
        debug_assert!(!shift.is_negative());
        if shift >= inner_order {
            continue;
        }
        // a_j = dj + r/2 is never zero for odd r; the two geometric factors
        // combine to s_j * (1 - q^{|a_j|})/(1 + q^{|a_j|})
        let a = rat(2 * d * j + r, 2);
        let s_j_positive = a.is_positive();
        let a_abs = a.abs();
        let term_order = &inner_order - &shift;
        let bracket = QSeries::from_terms(
            &term_order,
            [(&int(0), &Rational::one()), (&a_abs, &-Rational::one())],
        )
        .mul(&QSeries::geom_inv(&a_abs, Sign::Plus, &term_order)?)?;
        let term = theta
            .truncated(&term_order)
            .mul(&bracket)?
            .shifted(&shift);
        sum = if s_j_positive {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
    }
    Ok(eta3.mul(&sum)?.shifted(&delta))
}

/// Character `tr_{C_r}(q^{L_0})` of the `p = 0` module `C_r` over `M_d`,
/// truncated at `order`.
///
/// The sum over `j` starts from the window
/// `ceil(sqrt(order/d)) + ceil(r/d) + 2` and doubles until two successive
/// windows agree on every coefficient below `order`; if six doublings do not
/// stabilize it, [`CharacterError::WindowUnstable`] is returned.
pub fn character_c(d: i64, r: i64, order: &Rational) -> Result<QSeries, CharacterError> {
    const MAX_DOUBLINGS: u32 = 6;
    let scaled = order / int(d.max(1));
    let mut window = ceil_sqrt(&scaled) + (r + d - 1).div_euclid(d.max(1)) + 2;
    window = window.max(1);
    let mut prev = character_c_windowed(d, r, order, window)?;
    for _ in 0..MAX_DOUBLINGS {
        window *= 2;
        let next = character_c_windowed(d, r, order, window)?;
        if next == prev {
            return Ok(next);
        }
        prev = next;
    }
    Err(CharacterError::WindowUnstable {
        d,
        r,
        doublings: MAX_DOUBLINGS,
    })
}

/// Character of `M_d` as a module over itself: [`character_c`] at `r = 1`.
pub fn vacuum_character(d: i64, order: &Rational) -> Result<QSeries, CharacterError> {
    character_c(d, 1, order)
}
