//! Exact rank computation for rational matrices.
//!
//! Ranks of Gram matrices decide quotient dimensions, so they must be exact:
//! each row is scaled to integers by its common denominator (row scaling by a
//! nonzero rational preserves rank) and the integer matrix is reduced by
//! fraction-free Bareiss elimination with full pivoting over `BigInt`.

use num::{BigInt, Signed, Zero};

use crate::rational::Rational;

/// Rank of the matrix given as rows of exact rationals.
///
/// Ragged input is tolerated by treating missing entries as zero; in practice
/// callers pass rectangular matrices.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    if n_rows == 0 || n_cols == 0 {
        return 0;
    }

    // Clear denominators row by row.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n_rows);
    for row in rows {
        let mut scale = BigInt::from(1);
        for x in row {
            let d = x.denom();
            scale = &scale / num::integer::gcd(scale.clone(), d.clone()) * d;
        }
        let mut int_row = Vec::with_capacity(n_cols);
        for x in row {
            let scaled = x * Rational::from_integer(scale.clone());
            debug_assert!(scaled.is_integer());
            int_row.push(scaled.to_integer());
        }
        int_row.resize(n_cols, BigInt::zero());
        m.push(int_row);
    }

    // Bareiss: after step k every entry is divisible by the previous pivot,
    // keeping intermediate values as small as exact elimination allows.
    let mut rank = 0;
    let mut prev_pivot = BigInt::from(1);
    while rank < n_rows && rank < n_cols {
        // Full pivoting: any nonzero entry in the remaining block will do;
        // prefer one of smallest magnitude to slow coefficient growth.
        let mut pivot: Option<(usize, usize)> = None;
        for r in rank..n_rows {
            for c in rank..n_cols {
                if m[r][c].is_zero() {
                    continue;
                }
                let better = match &pivot {
                    None => true,
                    Some((pr, pc)) => m[r][c].abs() < m[*pr][*pc].abs(),
                };
                if better {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(rank, pr);
        for row in m.iter_mut() {
            row.swap(rank, pc);
        }

        let pivot = m[rank][rank].clone();
        for r in rank + 1..n_rows {
            for c in rank + 1..n_cols {
                let num = &pivot * &m[r][c] - &m[r][rank] * &m[rank][c];
                debug_assert!((&num % &prev_pivot).is_zero());
                m[r][c] = num / &prev_pivot;
            }
            m[r][rank] = BigInt::zero();
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn empty_and_zero() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![]]), 0);
        assert_eq!(rank(&[vec![int(0), int(0)], vec![int(0), int(0)]]), 0);
    }

    #[test]
    fn identity_and_singular() {
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(rank(&id), 2);
        let sing = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&sing), 1);
    }

    #[test]
    fn rational_entries_with_dependent_row() {
        // row3 = (2/3) * row1, so the rank drops to 2
        let m = vec![
            vec![rat(1, 2), int(0), rat(1, 3)],
            vec![int(0), rat(2, 3), int(0)],
            vec![rat(1, 3), int(0), rat(2, 9)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_needs_column_pivoting() {
        // leading columns are zero; full pivoting must look right and down
        let m = vec![
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn wide_and_tall() {
        let wide = vec![vec![int(1), int(2), int(3), int(4)]];
        assert_eq!(rank(&wide), 1);
        let tall = vec![vec![int(1)], vec![int(2)], vec![int(3)]];
        assert_eq!(rank(&tall), 1);
    }
}
