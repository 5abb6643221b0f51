//! Shapovalov pairing, exact Gram blocks, and quotient graded dimensions.
//!
//! The pairing `<X, Y> = pi(dagger(X) Y)` is computed by straightening
//! `dagger(X) Y` against the vacuum and reading off the vacuum coefficient.
//! Modes of different level or charge pair to zero, so the Gram matrix of a
//! fixed level splits into blocks indexed by charge; the graded dimension of
//! the minimal quotient `M_d` at a level is the sum of the ranks of those
//! blocks at central charge `c_d`, since the radical of the pairing is
//! exactly the ideal that is quotiented away.

use serde_json::{json, Value};

use crate::embeddings::central_charge;
use crate::linalg;
use crate::rational::{self, Rational};

use super::mode::ModeWord;
use super::pbw::{charges_at_level, pbw_basis_uncapped, PbwMonomial};
use super::straighten::act_on_vacuum;
use super::{check_level_cap, ShapovalovError};

/// Shapovalov pairing `<x, y> = pi(dagger(x) y)` at central charge `c`.
pub fn shapovalov_pair(x: &ModeWord, y: &ModeWord, c: &Rational) -> Rational {
    act_on_vacuum(&x.dagger().concat(y), c).vacuum_coefficient()
}

/// Exact Gram matrix of the Shapovalov pairing on the canonical basis of one
/// `(level, charge)` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramBlock {
    level: Rational,
    charge: i64,
    central_charge: Rational,
    basis: Vec<PbwMonomial>,
    matrix: Vec<Vec<Rational>>,
}

impl GramBlock {
    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn central_charge(&self) -> &Rational {
        &self.central_charge
    }

    pub fn basis(&self) -> &[PbwMonomial] {
        &self.basis
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// Block size: number of basis monomials.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Exact rank of the block.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    /// Dimension of the block's share of the radical.
    pub fn radical_dimension(&self) -> usize {
        self.dimension() - self.rank()
    }

    /// Serializes to
    /// `{"level": "...", "charge": n, "c": "...", "basis": [...], "matrix": [[...]]}`
    /// with rationals rendered as lowest-terms `num/den` strings.
    pub fn to_json(&self) -> Value {
        json!({
            "level": rational::format_slash(&self.level),
            "charge": self.charge,
            "c": rational::format_slash(&self.central_charge),
            "basis": self.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "matrix": self
                .matrix
                .iter()
                .map(|row| row.iter().map(rational::format_slash).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    /// Parses the schema emitted by [`GramBlock::to_json`], revalidating the
    /// basis monomials and the matrix shape.
    pub fn from_json(v: &Value) -> Result<GramBlock, ShapovalovError> {
        let bad = |m: &str| ShapovalovError::InvalidJson(m.to_owned());
        let obj = v.as_object().ok_or_else(|| bad("not an object"))?;
        let field_rat = |key: &str| -> Result<Rational, ShapovalovError> {
            let s = obj
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| bad(&format!("missing {key}")))?;
            rational::parse_rational(s).map_err(|e| bad(&format!("bad {key}: {e}")))
        };
        let level = field_rat("level")?;
        let central_charge = field_rat("c")?;
        let charge = obj
            .get("charge")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("missing charge"))?;
        let basis = obj
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing basis"))?
            .iter()
            .map(|b| {
                b.as_str()
                    .ok_or_else(|| bad("basis element is not a string"))?
                    .parse::<PbwMonomial>()
            })
            .collect::<Result<Vec<PbwMonomial>, ShapovalovError>>()?;
        let matrix_json = obj
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing matrix"))?;
        if matrix_json.len() != basis.len() {
            return Err(bad("matrix height differs from basis size"));
        }
        let mut matrix = Vec::with_capacity(matrix_json.len());
        for row in matrix_json {
            let row = row.as_array().ok_or_else(|| bad("matrix row is not an array"))?;
            if row.len() != basis.len() {
                return Err(bad("matrix row width differs from basis size"));
            }
            matrix.push(
                row.iter()
                    .map(|x| {
                        let s = x.as_str().ok_or_else(|| bad("matrix entry is not a string"))?;
                        rational::parse_rational(s).map_err(|e| bad(&format!("bad entry: {e}")))
                    })
                    .collect::<Result<Vec<Rational>, ShapovalovError>>()?,
            );
        }
        Ok(GramBlock {
            level,
            charge,
            central_charge,
            basis,
            matrix,
        })
    }
}

/// Gram block at the given level and charge for central charge `c`. Levels
/// above [`super::LEVEL_CAP`] are refused.
pub fn gram_block(level: &Rational, charge: i64, c: &Rational) -> Result<GramBlock, ShapovalovError> {
    check_level_cap(level)?;
    gram_block_uncapped(level, charge, c)
}

/// [`gram_block`] without the default level cap.
pub fn gram_block_uncapped(
    level: &Rational,
    charge: i64,
    c: &Rational,
) -> Result<GramBlock, ShapovalovError> {
    let basis = pbw_basis_uncapped(level, charge)?;
    // every entry computed independently, so symmetry is a checkable
    // property of the straightening rather than an assumption
    let matrix: Vec<Vec<Rational>> = basis
        .iter()
        .map(|x| {
            let xw = x.word();
            basis
                .iter()
                .map(|y| shapovalov_pair(&xw, &y.word(), c))
                .collect()
        })
        .collect();
    Ok(GramBlock {
        level: level.clone(),
        charge,
        central_charge: c.clone(),
        basis,
        matrix,
    })
}

/// Graded dimension of the minimal quotient `M_d` at a level: the sum over
/// charges of the rank of the Gram block at central charge `c_d`. Levels
/// above [`super::LEVEL_CAP`] are refused.
pub fn quotient_graded_dim(d: i64, level: &Rational) -> Result<usize, ShapovalovError> {
    check_level_cap(level)?;
    quotient_graded_dim_uncapped(d, level)
}

/// [`quotient_graded_dim`] without the default level cap.
pub fn quotient_graded_dim_uncapped(d: i64, level: &Rational) -> Result<usize, ShapovalovError> {
    let c = central_charge(d).map_err(|_| ShapovalovError::IndexTooSmall(d))?;
    let mut dim = 0;
    for charge in charges_at_level(level)? {
        dim += gram_block_uncapped(level, charge, &c)?.rank();
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::shapovalov::halfint::HalfInt;

    fn w(s: &str) -> ModeWord {
        s.parse().unwrap()
    }

    #[test]
    fn pairing_examples() {
        let c = rat(5, 2);
        assert_eq!(shapovalov_pair(&ModeWord::unit(), &ModeWord::unit(), &c), int(1));
        assert_eq!(shapovalov_pair(&w("J-1"), &w("J-1"), &c), &c / int(3));
        assert_eq!(shapovalov_pair(&w("L-2"), &w("L-2"), &c), &c / int(2));
        assert_eq!(
            shapovalov_pair(&w("G+-3/2"), &w("G+-3/2"), &c),
            int(2) * &c / int(3)
        );
    }

    #[test]
    fn pairing_vanishes_across_blocks() {
        let c = int(1);
        assert_eq!(shapovalov_pair(&w("J-1"), &w("L-2"), &c), int(0));
        assert_eq!(shapovalov_pair(&w("G+-3/2"), &w("G--3/2"), &c), int(0));
        assert_eq!(shapovalov_pair(&w("J-1"), &ModeWord::unit(), &c), int(0));
        assert_eq!(shapovalov_pair(&w("L-2"), &w("G+-3/2"), &c), int(0));
        assert_eq!(shapovalov_pair(&w("J-1"), &w("G--3/2"), &c), int(0));
        // same level and charge is NOT cross-block: L-2 vs J-1.J-1 pairs to c/3
        assert_eq!(shapovalov_pair(&w("J-1.J-1"), &w("L-2"), &c), &c / int(3));
    }

    #[test]
    fn small_blocks() {
        let c = rat(5, 2);
        let b = gram_block(&int(0), 0, &c).unwrap();
        assert_eq!(b.dimension(), 1);
        assert_eq!(b.matrix(), &[vec![int(1)]]);
        assert_eq!(b.rank(), 1);

        let b = gram_block(&int(1), 0, &c).unwrap();
        assert_eq!(b.matrix(), &[vec![&c / int(3)]]);

        let b = gram_block(&rat(3, 2), 1, &c).unwrap();
        assert_eq!(b.matrix(), &[vec![int(2) * &c / int(3)]]);
    }

    #[test]
    fn level_two_block_and_ranks() {
        // basis L-2, J-2, J-1.J-1 with pairings
        //   [ c/2    0     c/3  ]
        //   [ 0      2c/3  0    ]
        //   [ c/3    0     2c^2/9 ]
        let c = int(1);
        let b = gram_block(&int(2), 0, &c).unwrap();
        assert_eq!(b.dimension(), 3);
        let m = b.matrix();
        assert_eq!(m[0][0], rat(1, 2));
        assert_eq!(m[0][1], int(0));
        assert_eq!(m[0][2], rat(1, 3));
        assert_eq!(m[1][1], rat(2, 3));
        assert_eq!(m[2][2], rat(2, 9));
        // at c = 1 the block has a one-dimensional radical
        assert_eq!(b.rank(), 2);
        assert_eq!(b.radical_dimension(), 1);
    }

    #[test]
    fn gram_blocks_are_symmetric() {
        for (level, charge) in [(int(2), 0), (int(3), 0), (rat(5, 2), 1), (rat(7, 2), -1)] {
            let b = gram_block(&level, charge, &rat(14, 5)).unwrap();
            let m = b.matrix();
            for i in 0..m.len() {
                for j in 0..m.len() {
                    assert_eq!(m[i][j], m[j][i], "entry ({i},{j}) at level {level}");
                }
            }
        }
    }

    #[test]
    fn quotient_dims_match_known_values() {
        // M_3 (c = 1): dimensions 1, 0, 1, 2, 2 at levels 0, 1/2, ..., 2
        let dims: Vec<usize> = (0..=4)
            .map(|t| quotient_graded_dim(3, &HalfInt::from_twice(t).to_rational()).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 0, 1, 2, 2]);
        // at c_2 = 0 everything above the vacuum is in the radical
        assert_eq!(quotient_graded_dim(2, &int(1)).unwrap(), 0);
        assert!(quotient_graded_dim(1, &int(1)).is_err());
        assert!(matches!(
            quotient_graded_dim(3, &int(7)),
            Err(ShapovalovError::LevelCapExceeded { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let b = gram_block(&rat(5, 2), 1, &rat(5, 2)).unwrap();
        let v = b.to_json();
        assert_eq!(v["level"], "5/2");
        assert_eq!(v["charge"], 1);
        assert_eq!(v["c"], "5/2");
        assert_eq!(v["basis"][0], "J-1.G+-3/2");
        let back = GramBlock::from_json(&v).unwrap();
        assert_eq!(back, b);

        let bad = json!({"level": "2/1", "charge": 0, "c": "1/1", "basis": ["L-2"], "matrix": []});
        assert!(GramBlock::from_json(&bad).is_err());
    }
}
