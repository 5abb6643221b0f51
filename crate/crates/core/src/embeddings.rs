//! Diagonal conformal embeddings `M_{d1} -> M_{d2} (x) M_{d3}` detected and
//! verified by exact character arithmetic.
//!
//! A diagonal embedding requires matching central charges
//! `c_{d1} = c_{d2} + c_{d3}` with `c_d = 3 - 6/d`, equivalently
//! `1/d2 + 1/d3 = 1/2 + 1/d1`. Excluding the trivial factor `d = 2` (central
//! charge zero), this Diophantine condition has exactly three solutions,
//! enumerated by [`enumerate_diagonal_embeddings`]. For each, the product of
//! vacuum characters decomposes exactly into characters of the
//! integer-weight modules of the target quotient ([`decompose`]), and
//! [`verify_table`] replays the two headline cases against their expected
//! dimension tables.

use std::fmt;

use num::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::nsmodules::{
    allowed_integer_modules, character_c, conformal_weight, vacuum_character, CharacterError,
    ModuleLabel,
};
use crate::qseries::QSeries;
use crate::rational::{self, int, rat, Rational};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("quotient index d must be >= 2, got {0}")]
    IndexTooSmall(i64),
    #[error(
        "central charge mismatch: c_{target} = {target_c} but the factors {factors:?} sum to {factor_c}"
    )]
    CentralChargeMismatch {
        target: i64,
        target_c: Rational,
        factors: Vec<i64>,
        factor_c: Rational,
    },
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// Exact central charge `c_d = 3 - 6/d` of the minimal quotient `M_d`.
pub fn central_charge(d: i64) -> Result<Rational, EmbeddingError> {
    if d < 2 {
        return Err(EmbeddingError::IndexTooSmall(d));
    }
    Ok(int(3) - rat(6, d))
}

/// A triple `(d1, d2, d3)` with `c_{d1} = c_{d2} + c_{d3}`, normalized so
/// that `d2 <= d3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddingCase {
    d1: i64,
    d2: i64,
    d3: i64,
}

impl EmbeddingCase {
    pub fn new(d1: i64, d2: i64, d3: i64) -> Result<EmbeddingCase, EmbeddingError> {
        let target_c = central_charge(d1)?;
        let factor_c = central_charge(d2)? + central_charge(d3)?;
        if target_c != factor_c {
            return Err(EmbeddingError::CentralChargeMismatch {
                target: d1,
                target_c,
                factors: vec![d2, d3],
                factor_c,
            });
        }
        let (d2, d3) = if d2 <= d3 { (d2, d3) } else { (d3, d2) };
        Ok(EmbeddingCase { d1, d2, d3 })
    }

    pub fn d1(&self) -> i64 {
        self.d1
    }

    pub fn d2(&self) -> i64 {
        self.d2
    }

    pub fn d3(&self) -> i64 {
        self.d3
    }

    /// The common central charge `c_{d1}`.
    pub fn central_charge(&self) -> Rational {
        central_charge(self.d1).expect("validated at construction")
    }

    pub fn to_json(&self) -> Value {
        json!({"d1": self.d1, "d2": self.d2, "d3": self.d3})
    }
}

impl fmt::Display for EmbeddingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{} into M{} (x) M{}", self.d1, self.d2, self.d3)
    }
}

/// All diagonal embedding cases with every index at most `d_max`, each
/// listed once with `d2 <= d3`, sorted by `d1`.
///
/// Factors with `d = 2` are excluded: `c_2 = 0`, so `(d, 2, d)` solves the
/// central-charge equation for every `d` but embeds nothing new.
pub fn enumerate_diagonal_embeddings(d_max: i64) -> Vec<EmbeddingCase> {
    let half = rat(1, 2);
    let mut found = Vec::new();
    for d2 in 3..=d_max {
        // 1/d2 + 1/d3 <= 2/d2, so no solution with d3 >= d2 once 2/d2 <= 1/2
        if rat(2, d2) <= half {
            break;
        }
        for d3 in d2..=d_max {
            let excess = rat(1, d2) + rat(1, d3) - &half;
            if !excess.is_positive() {
                break;
            }
            if excess.numer().is_one() {
                if let Some(d1) = rational::to_i64(&excess.recip()) {
                    if d1 <= d_max {
                        found.push(
                            EmbeddingCase::new(d1, d2, d3).expect("charges match by construction"),
                        );
                    }
                }
            }
        }
    }
    found.sort();
    found
}

/// Product of the vacuum characters of the given quotients, truncated at
/// `order`. The empty product is the constant series `1`.
pub fn product_character(factor_ds: &[i64], order: &Rational) -> Result<QSeries, EmbeddingError> {
    let mut acc = QSeries::one(order);
    for &d in factor_ds {
        let chi = vacuum_character(d, order)?;
        acc = acc.mul(&chi).map_err(CharacterError::from)?;
    }
    Ok(acc)
}

/// Result of decomposing a tensor-product character into integer-weight
/// module characters of the target quotient.
#[derive(Debug, Clone)]
pub struct Decomposition {
    target_d: i64,
    factors: Vec<i64>,
    /// `(label, multiplicity)` for every candidate module whose highest
    /// weight lies below the verified order, sorted by `r`.
    multiplicities: Vec<(ModuleLabel, u64)>,
    verified_order: Rational,
}

impl Decomposition {
    pub fn target_d(&self) -> i64 {
        self.target_d
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn multiplicities(&self) -> &[(ModuleLabel, u64)] {
        &self.multiplicities
    }

    /// Multiplicity of the module `C_r`, zero for absent candidates.
    pub fn multiplicity_of(&self, r: i64) -> u64 {
        self.multiplicities
            .iter()
            .find(|(l, _)| l.r() == r)
            .map_or(0, |(_, m)| *m)
    }

    pub fn verified_order(&self) -> &Rational {
        &self.verified_order
    }

    pub fn to_json(&self) -> Value {
        let mults: Vec<Value> = self
            .multiplicities
            .iter()
            .map(|(l, m)| json!({"r": l.r(), "m": m}))
            .collect();
        json!({
            "target_d": self.target_d,
            "factors": self.factors,
            "order": rational::format_slash(&self.verified_order),
            "multiplicities": mults,
            "verified": true,
        })
    }
}

/// Decomposes the product of vacuum characters of `factor_ds` into
/// characters of the integer-weight modules of `M_{target_d}`, exactly,
/// below `order`.
///
/// Greedy leading-term subtraction in ascending highest weight: each
/// candidate character leads with coefficient `1` at its highest weight and
/// those weights are pairwise distinct, so the remainder's coefficient there
/// *is* the multiplicity. Fails if central charges differ, if a multiplicity
/// is negative or fractional, or if a nonzero remainder survives.
pub fn decompose(
    target_d: i64,
    factor_ds: &[i64],
    order: &Rational,
) -> Result<Decomposition, EmbeddingError> {
    let target_c = central_charge(target_d)?;
    let mut factor_c = Rational::zero();
    for &d in factor_ds {
        factor_c += central_charge(d)?;
    }
    if target_c != factor_c {
        return Err(EmbeddingError::CentralChargeMismatch {
            target: target_d,
            target_c,
            factors: factor_ds.to_vec(),
            factor_c,
        });
    }

    // Candidates with highest weight below the order, ascending; the greedy
    // step is only valid when those weights are pairwise distinct.
    let mut candidates: Vec<(ModuleLabel, Rational)> = allowed_integer_modules(target_d)
        .into_iter()
        .map(|l| {
            let w = conformal_weight(&l);
            (l, w)
        })
        .filter(|(_, w)| w < order)
        .collect();
    candidates.sort_by(|a, b| a.1.cmp(&b.1));
    for pair in candidates.windows(2) {
        if pair[0].1 == pair[1].1 {
            return Err(EmbeddingError::DecompositionFailure(format!(
                "candidates {} and {} share highest weight {}; greedy subtraction is ill-posed",
                pair[0].0,
                pair[1].0,
                rational::format_compact(&pair[0].1),
            )));
        }
    }

    let mut remainder = product_character(factor_ds, order)?;
    let mut multiplicities = Vec::with_capacity(candidates.len());
    for (label, weight) in &candidates {
        let m = remainder
            .coeff(weight)
            .map_err(CharacterError::from)?;
        let Some(m_int) = rational::to_i64(&m).filter(|_| rational::is_nonneg_integer(&m)) else {
            return Err(EmbeddingError::DecompositionFailure(format!(
                "multiplicity of {label} would be {}, not a nonnegative integer",
                rational::format_compact(&m),
            )));
        };
        if m_int > 0 {
            let chi = character_c(target_d, label.r(), order)?;
            remainder = remainder.sub(&chi.scale(&m));
        }
        multiplicities.push((*label, m_int as u64));
    }
    if let Some((e, c)) = remainder.leading() {
        return Err(EmbeddingError::DecompositionFailure(format!(
            "remainder {} * q^{} survives below order {}",
            rational::format_compact(c),
            rational::format_compact(&e),
            rational::format_compact(order),
        )));
    }
    multiplicities.sort_by_key(|(l, _)| l.r());
    Ok(Decomposition {
        target_d,
        factors: factor_ds.to_vec(),
        multiplicities,
        verified_order: order.clone(),
    })
}

/// Expected dimension table for one embedding case: the product character's
/// dimensions and each module character's dimensions at the checked degrees.
#[derive(Debug, Clone)]
pub struct CaseExpectation {
    /// Short name used by reports and the CLI (`e6`, `e8`).
    pub name: String,
    pub target_d: i64,
    pub factors: Vec<i64>,
    /// Degrees (conformal weights) at which dimensions are compared.
    pub degrees: Vec<i64>,
    /// Expected dimensions of the product character at `degrees`.
    pub product_row: Vec<i64>,
    /// Per-module expected dimensions, `(r, row)` sorted by `r`.
    pub module_rows: Vec<(i64, Vec<i64>)>,
}

impl CaseExpectation {
    /// Truncation order that makes every checked degree readable.
    pub fn default_order(&self) -> Rational {
        int(self.degrees.iter().copied().max().unwrap_or(0) + 1)
    }
}

/// The two expected tables: `e6` is `M12 -> M3 (x) M4` checked to degree 1,
/// `e8` is `M30 -> M3 (x) M5` checked to degree 7.
#[derive(Debug, Clone)]
pub struct ExpectedTable {
    pub cases: Vec<CaseExpectation>,
}

impl ExpectedTable {
    pub fn standard() -> ExpectedTable {
        ExpectedTable {
            cases: vec![
                CaseExpectation {
                    name: "e6".to_owned(),
                    target_d: 12,
                    factors: vec![3, 4],
                    degrees: vec![0, 1],
                    product_row: vec![1, 2],
                    module_rows: vec![(1, vec![1, 1]), (7, vec![0, 1])],
                },
                CaseExpectation {
                    name: "e8".to_owned(),
                    target_d: 30,
                    factors: vec![3, 5],
                    degrees: vec![0, 1, 3, 7],
                    product_row: vec![1, 2, 18, 496],
                    module_rows: vec![
                        (1, vec![1, 1, 6, 107]),
                        (11, vec![0, 1, 11, 319]),
                        (19, vec![0, 0, 1, 69]),
                        (29, vec![0, 0, 0, 1]),
                    ],
                },
            ],
        }
    }

    pub fn case(&self, name: &str) -> Option<&CaseExpectation> {
        self.cases.iter().find(|c| c.name == name)
    }
}

/// One verified table row: expected versus computed dimensions.
#[derive(Debug, Clone)]
pub struct RowVerification {
    pub label: String,
    pub expected: Vec<i64>,
    pub computed: Vec<Rational>,
    pub pass: bool,
}

/// Verification outcome for one embedding case.
#[derive(Debug, Clone)]
pub struct CaseVerification {
    pub name: String,
    pub case: EmbeddingCase,
    pub degrees: Vec<i64>,
    /// Product row first, then one row per module, in expectation order.
    pub rows: Vec<RowVerification>,
    /// Module rows must sum to the product row at every checked degree.
    pub column_sums_match: bool,
    pub decomposition: Decomposition,
    /// Every candidate module must appear with multiplicity exactly one.
    pub multiplicities_all_one: bool,
    pub pass: bool,
}

/// Verification outcome over all cases of an [`ExpectedTable`].
#[derive(Debug, Clone)]
pub struct TableVerification {
    pub cases: Vec<CaseVerification>,
    pub pass: bool,
}

fn row_json(row: &RowVerification) -> Value {
    json!({
        "label": row.label,
        "expected": row.expected,
        "computed": row.computed.iter().map(rational::format_compact).collect::<Vec<_>>(),
        "pass": row.pass,
    })
}

impl CaseVerification {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "case": self.case.to_json(),
            "degrees": self.degrees,
            "rows": self.rows.iter().map(row_json).collect::<Vec<_>>(),
            "column_sums_match": self.column_sums_match,
            "decomposition": self.decomposition.to_json(),
            "multiplicities_all_one": self.multiplicities_all_one,
            "pass": self.pass,
        })
    }
}

impl TableVerification {
    pub fn to_json(&self) -> Value {
        json!({
            "cases": self.cases.iter().map(CaseVerification::to_json).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

/// Verifies one case against its expectation, decomposing at truncation
/// order `max(order, deepest checked degree + 1)`.
pub fn verify_case(
    expectation: &CaseExpectation,
    order: &Rational,
) -> Result<CaseVerification, EmbeddingError> {
    let case = {
        let (d2, d3) = match expectation.factors.as_slice() {
            [a, b] => (*a, *b),
            other => {
                return Err(EmbeddingError::DecompositionFailure(format!(
                    "table verification expects exactly two factors, got {other:?}"
                )))
            }
        };
        EmbeddingCase::new(expectation.target_d, d2, d3)?
    };
    let order = order.clone().max(expectation.default_order());
    let degrees = &expectation.degrees;

    let read_row = |chi: &QSeries| -> Result<Vec<Rational>, EmbeddingError> {
        degrees
            .iter()
            .map(|&n| chi.coeff(&int(n)).map_err(|e| CharacterError::from(e).into()))
            .collect()
    };

    let product = product_character(&expectation.factors, &order)?;
    let mut rows = Vec::new();
    let product_computed = read_row(&product)?;
    rows.push(RowVerification {
        label: format!(
            "M{} (x) M{}",
            case.d2(),
            case.d3()
        ),
        pass: product_computed
            .iter()
            .zip(&expectation.product_row)
            .all(|(c, e)| *c == int(*e)),
        expected: expectation.product_row.clone(),
        computed: product_computed,
    });

    let mut column_sums = vec![Rational::zero(); degrees.len()];
    for (r, expected_row) in &expectation.module_rows {
        let chi = character_c(expectation.target_d, *r, &order)?;
        let computed = read_row(&chi)?;
        for (acc, v) in column_sums.iter_mut().zip(&computed) {
            *acc += v;
        }
        let label = ModuleLabel::new(expectation.target_d, 0, *r)
            .map_err(CharacterError::from)?
            .to_string();
        rows.push(RowVerification {
            label,
            pass: computed.iter().zip(expected_row).all(|(c, e)| *c == int(*e)),
            expected: expected_row.clone(),
            computed,
        });
    }
    let column_sums_match = column_sums
        .iter()
        .zip(&rows[0].computed)
        .all(|(sum, prod)| sum == prod);

    let decomposition = decompose(expectation.target_d, &expectation.factors, &order)?;
    let multiplicities_all_one = decomposition
        .multiplicities()
        .iter()
        .all(|(_, m)| *m == 1)
        && decomposition.multiplicities().len() == expectation.module_rows.len();

    let pass = rows.iter().all(|r| r.pass) && column_sums_match && multiplicities_all_one;
    Ok(CaseVerification {
        name: expectation.name.clone(),
        case,
        degrees: degrees.clone(),
        rows,
        column_sums_match,
        decomposition,
        multiplicities_all_one,
        pass,
    })
}

/// Verifies every case of `expected` at its default order.
pub fn verify_table_with(expected: &ExpectedTable) -> Result<TableVerification, EmbeddingError> {
    let mut cases = Vec::new();
    for exp in &expected.cases {
        cases.push(verify_case(exp, &exp.default_order())?);
    }
    let pass = cases.iter().all(|c| c.pass);
    Ok(TableVerification { cases, pass })
}

/// Verifies the two standard cases against their expected tables.
pub fn verify_table() -> Result<TableVerification, EmbeddingError> {
    verify_table_with(&ExpectedTable::standard())
}
