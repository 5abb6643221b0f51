//! Straightening of mode words acting on the vacuum.
//!
//! A word is rewritten to a linear combination of canonical PBW monomials by
//! repeatedly (a) dropping terms whose last mode annihilates the vacuum,
//! (b) dropping terms containing an adjacent repeated fermionic mode (its
//! square vanishes), and (c) swapping an adjacent out-of-order pair `A B`
//! into `eps B A + [A, B]`, where `eps = -1` when both modes are fermionic
//! and the (anti)commutator comes from the relations table in
//! [`graded_bracket`]. Every rewrite strictly decreases the multiset of
//! `(length, inversions)` measures over the terms, so any strategy
//! terminates; two built-in strategies let confluence be tested rather than
//! assumed.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::rational::{int, rat, Rational};

use super::halfint::HalfInt;
use super::mode::{Family, Mode, ModeWord};
use super::pbw::PbwMonomial;

/// Which redex the straightening loop contracts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Kill vacuum-annihilating tails eagerly, then rewrite the rightmost
    /// out-of-order pair. Cheapest in practice; the default.
    Rightmost,
    /// Rewrite the leftmost out-of-order pair first and only then consult
    /// the vacuum. Used to cross-check confluence.
    Leftmost,
}

/// A finished vector of the vacuum module: a sparse rational combination of
/// canonical PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StateVector {
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl StateVector {
    pub fn zero() -> StateVector {
        StateVector::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coeff(&self, monomial: &PbwMonomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the empty monomial (the vacuum itself); this is the
    /// projection `pi` underlying the Shapovalov pairing.
    pub fn vacuum_coefficient(&self) -> Rational {
        self.coeff(&PbwMonomial::unit())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> + '_ {
        self.terms.iter()
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", crate::rational::format_compact(c), m)?;
        }
        Ok(())
    }
}

/// One term of a graded bracket `[A, B]` (or `{A, B}` for two fermions):
/// either a single mode with a coefficient or a central scalar.
enum BracketTerm {
    Mode(Mode, Rational),
    Scalar(Rational),
}

/// The defining NS-sector relations of the N=2 superconformal algebra at
/// central charge `c`, as the bracket `[A, B]` (anticommutator when both
/// modes are fermionic). This is the only place the relations appear:
///
/// ```text
/// [L_m, L_n]   = (m - n) L_{m+n} + (c/12)(m^3 - m) delta_{m+n,0}
/// [L_m, J_n]   = -n J_{m+n}
/// [L_m, G+-_r] = (m/2 - r) G+-_{m+r}
/// [J_m, J_n]   = (c/3) m delta_{m+n,0}
/// [J_m, G+-_r] = +-G+-_{m+r}
/// {G+_r, G-_s} = 2 L_{r+s} + (r - s) J_{r+s} + (c/3)(r^2 - 1/4) delta_{r+s,0}
/// {G+_r, G+_s} = {G-_r, G-_s} = 0
/// ```
fn graded_bracket(a: &Mode, b: &Mode, c: &Rational) -> Vec<BracketTerm> {
    use Family::{GMinus, GPlus, J, L};

    fn push_mode(terms: &mut Vec<BracketTerm>, family: Family, index: HalfInt, coeff: Rational) {
        if !coeff.is_zero() {
            let mode = Mode::new(family, index).expect("bracket preserves index parity");
            terms.push(BracketTerm::Mode(mode, coeff));
        }
    }

    let ta = a.index().twice();
    let tb = b.index().twice();
    let sum = a.index() + b.index();
    let mut terms = Vec::new();
    match (a.family(), b.family()) {
        (L, L) => {
            let (m, n) = (ta / 2, tb / 2);
            push_mode(&mut terms, L, sum, int(m - n));
            if m + n == 0 {
                terms.push(BracketTerm::Scalar(c / int(12) * int(m * m * m - m)));
            }
        }
        (L, J) => push_mode(&mut terms, J, sum, int(-tb / 2)),
        (J, L) => push_mode(&mut terms, J, sum, int(ta / 2)),
        // [L_m, G_r] = (m/2 - r) G_{m+r} with m = ta/2, r = tb/2
        (L, g @ (GPlus | GMinus)) => push_mode(&mut terms, g, sum, rat(ta - 2 * tb, 4)),
        // [G_r, L_m] = (r - m/2) G_{r+m} with r = ta/2, m = tb/2
        (g @ (GPlus | GMinus), L) => push_mode(&mut terms, g, sum, rat(2 * ta - tb, 4)),
        (J, J) => {
            if ta + tb == 0 {
                terms.push(BracketTerm::Scalar(c / int(3) * int(ta / 2)));
            }
        }
        (J, GPlus) => push_mode(&mut terms, GPlus, sum, int(1)),
        (J, GMinus) => push_mode(&mut terms, GMinus, sum, int(-1)),
        (GPlus, J) => push_mode(&mut terms, GPlus, sum, int(-1)),
        (GMinus, J) => push_mode(&mut terms, GMinus, sum, int(1)),
        (GPlus, GMinus) | (GMinus, GPlus) => {
            // anticommutator {G+_r, G-_s}, symmetric in its two arguments
            let (tr, ts) = if a.family() == GPlus {
                (ta, tb)
            } else {
                (tb, ta)
            };
            push_mode(&mut terms, L, sum, int(2));
            push_mode(&mut terms, J, sum, rat(tr - ts, 2));
            if tr + ts == 0 {
                terms.push(BracketTerm::Scalar(c / int(3) * rat(tr * tr - 1, 4)));
            }
        }
        (GPlus, GPlus) | (GMinus, GMinus) => {}
    }
    terms
}

/// Sort key of the straightening order: creation modes before annihilators,
/// then the canonical mode order. A redex-free word is therefore a canonical
/// creation word, possibly followed by annihilators — and an annihilator
/// tail dies on the vacuum.
fn straighten_key(m: &Mode) -> (bool, Family, i64, i64) {
    (
        m.annihilates_vacuum(),
        m.family(),
        -m.index().twice().abs(),
        m.index().twice(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Redex {
    /// The last mode annihilates the vacuum: the term vanishes.
    KillLast,
    /// Adjacent equal fermionic modes at `(i, i+1)`: the term vanishes.
    FermiSquare(usize),
    /// Adjacent out-of-order pair at `(i, i+1)`: swap plus bracket terms.
    Swap(usize),
}

fn pair_redex(modes: &[Mode], i: usize) -> Option<Redex> {
    let (a, b) = (&modes[i], &modes[i + 1]);
    if a == b && a.is_fermionic() {
        Some(Redex::FermiSquare(i))
    } else if straighten_key(a) > straighten_key(b) {
        Some(Redex::Swap(i))
    } else {
        None
    }
}

fn find_redex(modes: &[Mode], strategy: Strategy) -> Option<Redex> {
    let n = modes.len();
    let kill = n > 0 && modes[n - 1].annihilates_vacuum();
    match strategy {
        Strategy::Rightmost => {
            if kill {
                return Some(Redex::KillLast);
            }
            (0..n.saturating_sub(1))
                .rev()
                .find_map(|i| pair_redex(modes, i))
        }
        Strategy::Leftmost => (0..n.saturating_sub(1))
            .find_map(|i| pair_redex(modes, i))
            .or(if kill { Some(Redex::KillLast) } else { None }),
    }
}

fn add_term(terms: &mut BTreeMap<Vec<Mode>, Rational>, word: Vec<Mode>, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    let entry = terms.entry(word).or_insert_with(Rational::zero);
    *entry += coeff;
    // re-borrow to prune an exact cancellation
}

fn prune_zero(terms: &mut BTreeMap<Vec<Mode>, Rational>, key: &[Mode]) {
    if terms.get(key).is_some_and(Rational::is_zero) {
        terms.remove(key);
    }
}

/// Expresses `word * Omega` in the canonical PBW basis at central charge
/// `c`, choosing redexes per `strategy`. Like terms are merged throughout,
/// so cancellations happen as early as possible.
pub fn act_on_vacuum_with_strategy(
    word: &ModeWord,
    c: &Rational,
    strategy: Strategy,
) -> StateVector {
    let mut pending: BTreeMap<Vec<Mode>, Rational> = BTreeMap::new();
    add_term(&mut pending, word.modes().to_vec(), word.coefficient().clone());

    let mut done: BTreeMap<PbwMonomial, Rational> = BTreeMap::new();
    while let Some((modes, coeff)) = pending.pop_first() {
        match find_redex(&modes, strategy) {
            None => {
                let monomial = PbwMonomial::try_new(modes)
                    .expect("redex-free words are canonical creation monomials");
                let entry = done.entry(monomial).or_insert_with(Rational::zero);
                *entry += coeff;
            }
            Some(Redex::KillLast | Redex::FermiSquare(_)) => {}
            Some(Redex::Swap(i)) => {
                let a = modes[i];
                let b = modes[i + 1];
                let eps = if a.is_fermionic() && b.is_fermionic() {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let mut swapped = modes.clone();
                swapped.swap(i, i + 1);
                add_term(&mut pending, swapped.clone(), &coeff * eps);
                prune_zero(&mut pending, &swapped);
                for term in graded_bracket(&a, &b, c) {
                    let (replacement, factor): (&[Mode], Rational) = match &term {
                        BracketTerm::Mode(mode, k) => (std::slice::from_ref(mode), k.clone()),
                        BracketTerm::Scalar(k) => (&[], k.clone()),
                    };
                    let mut contracted = Vec::with_capacity(modes.len() - 2 + replacement.len());
                    contracted.extend_from_slice(&modes[..i]);
                    contracted.extend_from_slice(replacement);
                    contracted.extend_from_slice(&modes[i + 2..]);
                    add_term(&mut pending, contracted.clone(), &coeff * factor);
                    prune_zero(&mut pending, &contracted);
                }
            }
        }
    }

    done.retain(|_, v| !v.is_zero());
    StateVector { terms: done }
}

/// [`act_on_vacuum_with_strategy`] with the default strategy.
pub fn act_on_vacuum(word: &ModeWord, c: &Rational) -> StateVector {
    act_on_vacuum_with_strategy(word, c, Strategy::Rightmost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::shapovalov::halfint::HalfInt;

    fn gp(twice: i64) -> Mode {
        Mode::g_plus(HalfInt::from_twice(twice)).unwrap()
    }

    fn gm(twice: i64) -> Mode {
        Mode::g_minus(HalfInt::from_twice(twice)).unwrap()
    }

    fn word(modes: Vec<Mode>) -> ModeWord {
        ModeWord::new(modes)
    }

    #[test]
    fn vacuum_annihilation() {
        let c = rat(5, 2);
        assert!(act_on_vacuum(&word(vec![Mode::l(-1)]), &c).is_zero());
        assert!(act_on_vacuum(&word(vec![Mode::j(0)]), &c).is_zero());
        assert!(act_on_vacuum(&word(vec![gp(-1)]), &c).is_zero());
        assert!(act_on_vacuum(&word(vec![Mode::j(-1), Mode::l(2)]), &c).is_zero());
    }

    #[test]
    fn empty_word_is_the_vacuum() {
        let v = act_on_vacuum(&ModeWord::unit(), &int(1));
        assert_eq!(v.vacuum_coefficient(), int(1));
        assert_eq!(v.num_terms(), 1);
    }

    #[test]
    fn single_commutator_scalars() {
        // J_1 J_{-1} Omega = (c/3) Omega
        let c = rat(5, 2);
        let v = act_on_vacuum(&word(vec![Mode::j(1), Mode::j(-1)]), &c);
        assert_eq!(v.vacuum_coefficient(), &c / int(3));
        assert_eq!(v.num_terms(), 1);

        // L_2 L_{-2} Omega = (c/2) Omega
        let v = act_on_vacuum(&word(vec![Mode::l(2), Mode::l(-2)]), &c);
        assert_eq!(v.vacuum_coefficient(), &c / int(2));

        // G-_{3/2} G+_{-3/2} Omega = (2c/3) Omega
        let v = act_on_vacuum(&word(vec![gm(3), gp(-3)]), &c);
        assert_eq!(v.vacuum_coefficient(), int(2) * &c / int(3));

        // G+_{3/2} G-_{-3/2} Omega = (2c/3) Omega as well
        let v = act_on_vacuum(&word(vec![gp(3), gm(-3)]), &c);
        assert_eq!(v.vacuum_coefficient(), int(2) * &c / int(3));
    }

    #[test]
    fn creation_words_pass_through() {
        let c = int(1);
        let v = act_on_vacuum(&word(vec![Mode::l(-2), Mode::j(-1)]), &c);
        assert_eq!(v.num_terms(), 1);
        let (m, k) = v.iter().next().unwrap();
        assert_eq!(m.to_string(), "L-2.J-1");
        assert_eq!(*k, int(1));
    }

    #[test]
    fn out_of_order_creators_are_sorted() {
        // J_{-1} L_{-2} = L_{-2} J_{-1} + [J_{-1}, L_{-2}] = L_{-2} J_{-1} - J_{-3}
        let c = int(1);
        let v = act_on_vacuum(&word(vec![Mode::j(-1), Mode::l(-2)]), &c);
        let sorted = PbwMonomial::try_new(vec![Mode::l(-2), Mode::j(-1)]).unwrap();
        let j3 = PbwMonomial::try_new(vec![Mode::j(-3)]).unwrap();
        assert_eq!(v.coeff(&sorted), int(1));
        assert_eq!(v.coeff(&j3), int(-1));
        assert_eq!(v.num_terms(), 2);
    }

    #[test]
    fn fermionic_square_vanishes() {
        let c = int(2);
        let v = act_on_vacuum(&word(vec![gp(-3), gp(-3)]), &c);
        assert!(v.is_zero());
        // anticommuting two distinct same-sign modes only flips the sign
        let v = act_on_vacuum(&word(vec![gp(-3), gp(-5)]), &c);
        let sorted = PbwMonomial::try_new(vec![gp(-5), gp(-3)]).unwrap();
        assert_eq!(v.coeff(&sorted), int(-1));
        assert_eq!(v.num_terms(), 1);
    }

    #[test]
    fn level_two_relations_at_central_charge_one() {
        // G+_{1/2} G-_{-1/2} Omega: {G+_{1/2}, G-_{-1/2}} = 2L_0 + J_0,
        // both of which annihilate the vacuum
        let v = act_on_vacuum(&word(vec![gp(1), gm(-1)]), &int(1));
        assert!(v.is_zero());

        // L_1 then L_{-1} on the vacuum both vanish without central terms
        let v = act_on_vacuum(&word(vec![Mode::l(1), Mode::l(-1)]), &int(1));
        assert!(v.is_zero());
    }

    #[test]
    fn strategies_agree_on_small_words() {
        let c = rat(3, 2);
        let words = vec![
            vec![Mode::j(1), Mode::l(-2), Mode::j(-1)],
            vec![gm(3), Mode::j(-1), gp(-3)],
            vec![Mode::l(2), Mode::j(-1), Mode::j(-1)],
            vec![gp(1), gm(-3), Mode::j(-1)],
            vec![Mode::j(-1), Mode::j(1), Mode::l(-2), Mode::l(2)],
        ];
        for modes in words {
            let w = word(modes);
            let r = act_on_vacuum_with_strategy(&w, &c, Strategy::Rightmost);
            let l = act_on_vacuum_with_strategy(&w, &c, Strategy::Leftmost);
            assert_eq!(r, l, "strategies disagree on {w}");
        }
    }

    #[test]
    fn coefficient_scales_linearly() {
        let w = ModeWord::with_coefficient(vec![Mode::j(1), Mode::j(-1)], rat(3, 7));
        let v = act_on_vacuum(&w, &int(3));
        assert_eq!(v.vacuum_coefficient(), rat(3, 7));
    }
}
