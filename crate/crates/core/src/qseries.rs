//! Truncated formal series in `q` with exponents in `(1/D)Z`, over exact
//! rationals.
//!
//! A [`QSeries`] stores a sparse map from exponent numerators `k` (the
//! exponent itself is `k/D`) to nonzero rational coefficients, together with a
//! truncation `order`: an *exclusive* upper bound on the exponents the series
//! knows anything about. Terms at or beyond `order` are unspecified, and
//! [`QSeries::coeff`] refuses to read them. Binary operations rebase both
//! operands to the lcm of their exponent lattices and propagate the minimum
//! order, so truncation loss is never silent.
//!
//! The named products here are the ingredients of NS-sector character
//! formulas: the inverse cubed Euler product `q^{1/8}/eta(q)^3` and the theta
//! product `theta_3(1;q) = prod (1+q^{i-1/2})^2 (1-q^i)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    /// A factor in a product had support at a negative exponent; truncated
    /// Cauchy products are only exact for series supported on `q^{>=0}`.
    #[error("series product requires nonnegative leading exponents, found {0}")]
    NegativeLeadingExponent(String),
    /// Geometric-series exponent must be strictly positive.
    #[error("geometric series exponent must be > 0, got {0}")]
    NonPositiveExponent(String),
    /// Asked for a coefficient at or beyond the truncation order.
    #[error("coefficient at q^{exponent} is beyond truncation order {order}")]
    BeyondOrder { exponent: String, order: String },
    #[error("invalid serialized series: {0}")]
    InvalidJson(String),
}

/// Sign in `1/(1 + sign * q^a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Sparse truncated formal series in `q^{1/denom}`.
///
/// Invariants: every stored coefficient is nonzero, every stored exponent
/// `k/denom` is strictly below `order`, and `order` itself lies on the
/// `(1/denom)Z` lattice.
#[derive(Debug, Clone)]
pub struct QSeries {
    denom: i64,
    /// Truncation order as a numerator over `denom` (order = order_num/denom).
    order_num: i64,
    /// Exponent numerator `k` (exponent `k/denom`) to nonzero coefficient.
    terms: BTreeMap<i64, Rational>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a.max(1)
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Smallest representation of `r` as numerator over a positive denominator.
fn rational_parts(r: &Rational) -> (i64, i64) {
    let n = rational::to_i64(&Rational::from_integer(r.numer().clone()))
        .expect("exponent numerator fits i64");
    let d = rational::to_i64(&Rational::from_integer(r.denom().clone()))
        .expect("exponent denominator fits i64");
    (n, d)
}

impl QSeries {
    /// The zero series truncated at `order`, on the lattice forced by `order`.
    pub fn zero(order: &Rational) -> QSeries {
        let (_, d) = rational_parts(order);
        QSeries::zero_on(d, order)
    }

    /// Zero series on the lattice `(1/denom)Z` joined with the lattice of
    /// `order`.
    fn zero_on(denom: i64, order: &Rational) -> QSeries {
        let (on, od) = rational_parts(order);
        let d = lcm(denom, od);
        QSeries {
            denom: d,
            order_num: on * (d / od),
            terms: BTreeMap::new(),
        }
    }

    /// The constant series `1`, truncated at `order`.
    pub fn one(order: &Rational) -> QSeries {
        QSeries::monomial(&Rational::zero(), &Rational::one(), order)
    }

    /// The single-term series `coeff * q^exponent`, truncated at `order`.
    /// Terms at or beyond `order` are dropped (the result is then zero).
    pub fn monomial(exponent: &Rational, coeff: &Rational, order: &Rational) -> QSeries {
        let (_, ed) = rational_parts(exponent);
        let mut s = QSeries::zero_on(ed, order);
        if !coeff.is_zero() && exponent < order {
            let (en, ed) = rational_parts(exponent);
            s.terms.insert(en * (s.denom / ed), coeff.clone());
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs, dropping zeros
    /// and anything at or beyond `order`.
    pub fn from_terms<'a, I>(order: &Rational, terms: I) -> QSeries
    where
        I: IntoIterator<Item = (&'a Rational, &'a Rational)>,
    {
        let mut acc = QSeries::zero(order);
        for (e, c) in terms {
            acc = acc.add(&QSeries::monomial(e, c, order));
        }
        acc
    }

    /// Exponent lattice denominator `D`.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Truncation order (exclusive bound on known exponents).
    pub fn order(&self) -> Rational {
        rational::rat(self.order_num, self.denom)
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        self.terms
            .iter()
            .map(|(k, c)| (rational::rat(*k, self.denom), c))
    }

    /// Leading (lowest-exponent) term, if any.
    pub fn leading(&self) -> Option<(Rational, &Rational)> {
        self.terms
            .iter()
            .next()
            .map(|(k, c)| (rational::rat(*k, self.denom), c))
    }

    /// Rebase to a lattice denominator that `new_denom` divides into; `new_denom`
    /// must be a multiple of the current one.
    fn rebased(&self, new_denom: i64) -> QSeries {
        debug_assert!(new_denom % self.denom == 0);
        let f = new_denom / self.denom;
        QSeries {
            denom: new_denom,
            order_num: self.order_num * f,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
        }
    }

    /// Coefficient of `q^exponent`. Zero for absent terms below the order;
    /// an error at or beyond the order, where the value is unspecified.
    pub fn coeff(&self, exponent: &Rational) -> Result<Rational, QSeriesError> {
        if *exponent >= self.order() {
            return Err(QSeriesError::BeyondOrder {
                exponent: rational::format_compact(exponent),
                order: rational::format_compact(&self.order()),
            });
        }
        let (en, ed) = rational_parts(exponent);
        if self.denom % ed != 0 {
            // off-lattice exponent below the order: structurally zero
            return Ok(Rational::zero());
        }
        let k = en * (self.denom / ed);
        Ok(self.terms.get(&k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficientwise sum; the result order is the minimum of the two.
    pub fn add(&self, other: &QSeries) -> QSeries {
        let d = lcm(self.denom, other.denom);
        let a = self.rebased(d);
        let b = other.rebased(d);
        let order_num = a.order_num.min(b.order_num);
        let mut terms = BTreeMap::new();
        for (k, c) in a.terms.into_iter().chain(b.terms) {
            if k >= order_num {
                continue;
            }
            let entry = terms.entry(k).or_insert_with(Rational::zero);
            *entry += c;
        }
        terms.retain(|_, c: &mut Rational| !c.is_zero());
        QSeries {
            denom: d,
            order_num,
            terms,
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            denom: self.denom,
            order_num: self.order_num,
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> QSeries {
        if c.is_zero() {
            return QSeries {
                denom: self.denom,
                order_num: self.order_num,
                terms: BTreeMap::new(),
            };
        }
        QSeries {
            denom: self.denom,
            order_num: self.order_num,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `q^delta`: exponents and order both shift by `delta`.
    pub fn shifted(&self, delta: &Rational) -> QSeries {
        let (_, dd) = rational_parts(delta);
        let d = lcm(self.denom, dd);
        let a = self.rebased(d);
        let (dn, dd) = rational_parts(delta);
        let shift = dn * (d / dd);
        QSeries {
            denom: d,
            order_num: a.order_num + shift,
            terms: a.terms.into_iter().map(|(k, c)| (k + shift, c)).collect(),
        }
    }

    /// Shrinks the order to `min(self.order(), order)` and drops terms that
    /// fall at or beyond it. Never grows the order: coefficients beyond the
    /// current truncation are unknowable.
    pub fn truncated(&self, order: &Rational) -> QSeries {
        if *order >= self.order() {
            return self.clone();
        }
        let (_, od) = rational_parts(order);
        let d = lcm(self.denom, od);
        let a = self.rebased(d);
        let (on, od) = rational_parts(order);
        let order_num = on * (d / od);
        QSeries {
            denom: d,
            order_num,
            terms: a.terms.into_iter().filter(|(k, _)| *k < order_num).collect(),
        }
    }

    /// Truncated Cauchy product. Both factors must be supported on
    /// nonnegative exponents, otherwise the truncated convolution would be
    /// missing contributions from unknown high-order terms.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries, QSeriesError> {
        for s in [self, other] {
            if let Some((e, _)) = s.leading() {
                if e.is_negative() {
                    return Err(QSeriesError::NegativeLeadingExponent(
                        rational::format_compact(&e),
                    ));
                }
            }
        }
        let d = lcm(self.denom, other.denom);
        let a = self.rebased(d);
        let b = other.rebased(d);
        let order_num = a.order_num.min(b.order_num);
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            if *ka >= order_num {
                break;
            }
            for (kb, cb) in b.terms.range(..order_num - *ka) {
                let k = ka + kb;
                let entry = terms.entry(k).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(QSeries {
            denom: d,
            order_num,
            terms,
        })
    }

    /// Geometric expansion of `1/(1 + s q^a)` (for [`Sign::Plus`]) or
    /// `1/(1 - q^a)` (for [`Sign::Minus`]): `sum_k (-s)^k q^{ka}` truncated
    /// at `order`. Requires `a > 0`.
    pub fn geom_inv(a: &Rational, sign: Sign, order: &Rational) -> Result<QSeries, QSeriesError> {
        if !a.is_positive() {
            return Err(QSeriesError::NonPositiveExponent(rational::format_compact(a)));
        }
        let (_, ad) = rational_parts(a);
        let mut s = QSeries::zero_on(ad, order);
        let (an, ad) = rational_parts(a);
        let step = an * (s.denom / ad);
        let mut k = 0i64;
        let mut c = Rational::one();
        let flip = matches!(sign, Sign::Plus);
        while k < s.order_num {
            s.terms.insert(k, c.clone());
            if flip {
                c = -c;
            }
            k += step;
        }
        Ok(s)
    }

    /// The inverse cubed Euler product `prod_{i>=1} (1 - q^i)^{-3}`, which
    /// equals `q^{1/8}/eta(q)^3`. Coefficients count 3-colored partitions.
    pub fn eta_inv_cubed(order: &Rational) -> QSeries {
        let mut acc = QSeries::one(order);
        let mut i = 1i64;
        while rational::int(i) < *order {
            let f = QSeries::geom_inv(&rational::int(i), Sign::Minus, order)
                .expect("positive exponent");
            for _ in 0..3 {
                acc = acc.mul(&f).expect("nonnegative support");
            }
            i += 1;
        }
        acc
    }

    /// The theta product `theta_3(1;q) = prod_{i>=1} (1+q^{i-1/2})^2 (1-q^i)`,
    /// truncated at `order`. By the Jacobi triple product this equals
    /// `sum_{n in Z} q^{n^2/2}`.
    pub fn theta3(order: &Rational) -> QSeries {
        let mut acc = QSeries::one(order).add(&QSeries::zero_on(2, order));
        let mut i = 1i64;
        while rational::rat(2 * i - 1, 2) < *order {
            let half = QSeries::from_terms(
                order,
                [
                    (&Rational::zero(), &Rational::one()),
                    (&rational::rat(2 * i - 1, 2), &Rational::one()),
                ],
            );
            acc = acc.mul(&half).expect("nonnegative support");
            acc = acc.mul(&half).expect("nonnegative support");
            if rational::int(i) < *order {
                let full = QSeries::from_terms(
                    order,
                    [
                        (&Rational::zero(), &Rational::one()),
                        (&rational::int(i), &-Rational::one()),
                    ],
                );
                acc = acc.mul(&full).expect("nonnegative support");
            }
            i += 1;
        }
        acc
    }

    /// Serializes to the wire schema
    /// `{"denom": D, "order": "p/q", "terms": [[k, "num/den"], ...]}`
    /// with terms sorted by increasing exponent numerator.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!([k, rational::format_slash(c)]))
            .collect();
        json!({
            "denom": self.denom,
            "order": rational::format_slash(&self.order()),
            "terms": terms,
        })
    }

    /// Parses the schema emitted by [`QSeries::to_json`], validating the
    /// series invariants.
    pub fn from_json(v: &Value) -> Result<QSeries, QSeriesError> {
        let bad = |m: &str| QSeriesError::InvalidJson(m.to_owned());
        let obj = v.as_object().ok_or_else(|| bad("not an object"))?;
        let denom = obj
            .get("denom")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("missing denom"))?;
        if denom < 1 {
            return Err(bad("denom must be positive"));
        }
        let order = obj
            .get("order")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing order"))?;
        let order = rational::parse_rational(order)
            .map_err(|e| bad(&format!("bad order: {e}")))?;
        let scaled = &order * rational::int(denom);
        if !scaled.is_integer() {
            return Err(bad("order not on the exponent lattice"));
        }
        let order_num = rational::to_i64(&scaled).ok_or_else(|| bad("order overflow"))?;
        let terms_json = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut terms = BTreeMap::new();
        let mut prev: Option<i64> = None;
        for t in terms_json {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term is not a pair"))?;
            let k = pair[0].as_i64().ok_or_else(|| bad("term exponent not an integer"))?;
            let c = pair[1].as_str().ok_or_else(|| bad("term coefficient not a string"))?;
            let c = rational::parse_rational(c).map_err(|e| bad(&format!("bad coefficient: {e}")))?;
            if c.is_zero() {
                return Err(bad("stored coefficient is zero"));
            }
            if k >= order_num {
                return Err(bad("term at or beyond order"));
            }
            if prev.is_some_and(|p| p >= k) {
                return Err(bad("terms not sorted by increasing exponent"));
            }
            prev = Some(k);
            terms.insert(k, c);
        }
        Ok(QSeries {
            denom,
            order_num,
            terms,
        })
    }
}

/// Mathematical equality: same truncation order and the same terms, comparing
/// exponents as rationals so different lattice denominators do not matter.
impl PartialEq for QSeries {
    fn eq(&self, other: &QSeries) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let d = lcm(self.denom, other.denom);
        let a = self.rebased(d);
        let b = other.rebased(d);
        a.terms == b.terms
    }
}

impl Eq for QSeries {}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (e, c)) in self.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                if e.is_zero() {
                    write!(f, "{}", rational::format_compact(c))?;
                } else if c.is_one() {
                    write!(f, "q^{}", rational::format_compact(&e))?;
                } else {
                    write!(f, "{}*q^{}", rational::format_compact(c), rational::format_compact(&e))?;
                }
            }
        }
        write!(f, " + O(q^{})", rational::format_compact(&self.order()))
    }
}

/// `BigInt` coefficient helper for tests and callers that know a coefficient
/// is integral.
pub fn coeff_int(s: &QSeries, exponent: &Rational) -> Result<BigInt, QSeriesError> {
    let c = s.coeff(exponent)?;
    rational::to_integer(&c)
        .ok_or_else(|| QSeriesError::InvalidJson(format!("non-integer coefficient {c}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn add_identity_and_inverse() {
        let order = int(4);
        let one_plus_q = QSeries::from_terms(&order, [(&int(0), &int(1)), (&int(1), &int(1))]);
        assert_eq!(one_plus_q.add(&QSeries::zero(&order)), one_plus_q);
        assert!(one_plus_q.add(&one_plus_q.neg()).is_zero());
    }

    #[test]
    fn add_unifies_exponent_lattices() {
        let order = int(2);
        let a = QSeries::from_terms(&order, [(&int(0), &int(1)), (&q(1, 2), &int(1))]);
        let b = QSeries::from_terms(&order, [(&int(0), &int(1)), (&q(1, 3), &int(1))]);
        let s = a.add(&b);
        assert_eq!(s.denom(), 6);
        assert_eq!(s.coeff(&int(0)).unwrap(), int(2));
        assert_eq!(s.coeff(&q(1, 3)).unwrap(), int(1));
        assert_eq!(s.coeff(&q(1, 2)).unwrap(), int(1));
    }

    #[test]
    fn mul_identity_and_binomial() {
        let order = int(4);
        let one_plus_q = QSeries::from_terms(&order, [(&int(0), &int(1)), (&int(1), &int(1))]);
        assert_eq!(one_plus_q.mul(&QSeries::one(&order)).unwrap(), one_plus_q);

        let s = QSeries::from_terms(&order, [(&int(0), &int(1)), (&q(1, 2), &int(1))]);
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeff(&int(0)).unwrap(), int(1));
        assert_eq!(sq.coeff(&q(1, 2)).unwrap(), int(2));
        assert_eq!(sq.coeff(&int(1)).unwrap(), int(1));
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn mul_matches_schoolbook_convolution() {
        // oracle: dense integer convolution of sum_{n<=8} q^n with itself
        let a: Vec<i64> = vec![1; 9];
        let mut expect = vec![0i64; 8];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in a.iter().enumerate() {
                if i + j < 8 {
                    expect[i + j] += x * y;
                }
            }
        }
        assert_eq!(expect, (1..=8).collect::<Vec<i64>>());

        let order = int(8);
        let mut s = QSeries::zero(&order);
        for n in 0..=8 {
            s = s.add(&QSeries::monomial(&int(n), &int(1), &order));
        }
        let sq = s.mul(&s).unwrap();
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(sq.coeff(&int(n as i64)).unwrap(), int(*e));
        }
        assert_eq!(sq.order(), int(8));
    }

    #[test]
    fn mul_rejects_negative_leading_exponent() {
        let order = int(3);
        let bad = QSeries::monomial(&q(-1, 2), &int(1), &order);
        let good = QSeries::one(&order);
        assert!(matches!(
            bad.mul(&good),
            Err(QSeriesError::NegativeLeadingExponent(_))
        ));
    }

    #[test]
    fn geom_inv_expansions() {
        let g = QSeries::geom_inv(&int(1), Sign::Plus, &int(4)).unwrap();
        let want = QSeries::from_terms(
            &int(4),
            [
                (&int(0), &int(1)),
                (&int(1), &int(-1)),
                (&int(2), &int(1)),
                (&int(3), &int(-1)),
            ],
        );
        assert_eq!(g, want);

        let g = QSeries::geom_inv(&q(1, 2), Sign::Plus, &int(2)).unwrap();
        assert_eq!(g.coeff(&q(1, 2)).unwrap(), int(-1));
        assert_eq!(g.coeff(&q(3, 2)).unwrap(), int(-1));
        assert_eq!(g.coeff(&int(1)).unwrap(), int(1));
        assert_eq!(g.num_terms(), 4);

        let g = QSeries::geom_inv(&int(2), Sign::Minus, &int(7)).unwrap();
        for k in [0, 2, 4, 6] {
            assert_eq!(g.coeff(&int(k)).unwrap(), int(1));
        }
        assert_eq!(g.num_terms(), 4);

        assert!(QSeries::geom_inv(&int(0), Sign::Plus, &int(3)).is_err());
        assert!(QSeries::geom_inv(&int(-1), Sign::Plus, &int(3)).is_err());
    }

    /// Independent oracle: 3-colored partition counts by dense dynamic
    /// programming over plain integers.
    fn three_colored_partitions(n_max: usize) -> Vec<i64> {
        let mut a = vec![0i64; n_max + 1];
        a[0] = 1;
        for part in 1..=n_max {
            for _color in 0..3 {
                for k in part..=n_max {
                    a[k] += a[k - part];
                }
            }
        }
        a
    }

    #[test]
    fn eta_inv_cubed_matches_partition_oracle() {
        let oracle = three_colored_partitions(6);
        assert_eq!(&oracle[..4], &[1, 3, 9, 22]);

        let s = QSeries::eta_inv_cubed(&int(1));
        assert_eq!(s.coeff(&int(0)).unwrap(), int(1));
        assert_eq!(s.num_terms(), 1);

        let s = QSeries::eta_inv_cubed(&int(7));
        for (n, want) in oracle.iter().enumerate() {
            assert_eq!(s.coeff(&int(n as i64)).unwrap(), int(*want), "q^{n}");
        }
    }

    /// Triple-product oracle: sum over n in Z of q^{n^2/2}.
    fn theta3_oracle(order: &Rational) -> QSeries {
        let mut s = QSeries::zero(order).add(&QSeries::zero_on(2, order));
        let mut n = 0i64;
        loop {
            let e = rat(n * n, 2);
            if e >= *order {
                break;
            }
            let c = if n == 0 { int(1) } else { int(2) };
            s = s.add(&QSeries::monomial(&e, &c, order));
            n += 1;
        }
        s
    }

    #[test]
    fn theta3_matches_triple_product_oracle() {
        let s = QSeries::theta3(&q(1, 2));
        assert_eq!(s.coeff(&int(0)).unwrap(), int(1));
        assert_eq!(s.num_terms(), 1);

        let s = QSeries::theta3(&int(3));
        assert_eq!(s, theta3_oracle(&int(3)));
        assert_eq!(s.coeff(&q(1, 2)).unwrap(), int(2));
        assert_eq!(s.coeff(&int(2)).unwrap(), int(2));
        assert_eq!(s.num_terms(), 3);

        let s = QSeries::theta3(&int(5));
        assert_eq!(s, theta3_oracle(&int(5)));
        assert_eq!(s.coeff(&q(9, 2)).unwrap(), int(2));
    }

    #[test]
    fn coeff_contract() {
        let order = int(2);
        let s = QSeries::from_terms(&order, [(&int(0), &int(1)), (&int(1), &int(1))]);
        assert_eq!(s.coeff(&int(0)).unwrap(), int(1));
        assert_eq!(s.coeff(&q(1, 2)).unwrap(), int(0));
        assert!(matches!(
            s.coeff(&int(2)),
            Err(QSeriesError::BeyondOrder { .. })
        ));
        assert!(s.coeff(&int(3)).is_err());
    }

    #[test]
    fn shift_and_truncate() {
        let order = int(3);
        let s = QSeries::from_terms(&order, [(&int(0), &int(1)), (&int(2), &int(5))]);
        let t = s.shifted(&q(3, 2));
        assert_eq!(t.order(), q(9, 2));
        assert_eq!(t.coeff(&q(3, 2)).unwrap(), int(1));
        assert_eq!(t.coeff(&q(7, 2)).unwrap(), int(5));
        let u = t.truncated(&int(2));
        assert_eq!(u.order(), int(2));
        assert_eq!(u.num_terms(), 1);
        // truncation never grows the order
        assert_eq!(u.truncated(&int(10)).order(), int(2));
    }

    #[test]
    fn json_round_trip() {
        let order = q(7, 2);
        let s = QSeries::from_terms(
            &order,
            [(&int(0), &int(1)), (&q(3, 2), &rat(-5, 3)), (&int(3), &int(2))],
        );
        let v = s.to_json();
        assert_eq!(v["denom"], 2);
        assert_eq!(v["order"], "7/2");
        assert_eq!(v["terms"][1][0], 3);
        assert_eq!(v["terms"][1][1], "-5/3");
        let back = QSeries::from_json(&v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_rejects_invalid() {
        let bad = json!({"denom": 2, "order": "3/1", "terms": [[0, "0/1"]]});
        assert!(QSeries::from_json(&bad).is_err());
        let bad = json!({"denom": 2, "order": "3/1", "terms": [[7, "1/1"]]});
        assert!(QSeries::from_json(&bad).is_err());
        let bad = json!({"denom": 2, "order": "3/1", "terms": [[2, "1/1"], [1, "1/1"]]});
        assert!(QSeries::from_json(&bad).is_err());
        let bad = json!({"denom": 0, "order": "3/1", "terms": []});
        assert!(QSeries::from_json(&bad).is_err());
    }
}
