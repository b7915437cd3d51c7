//! Right and left subword reversing, fractions and the word problem for
//! spherical presentations.
//!
//! Right reversing always rewrites the leftmost factor `s⁻¹t`; left reversing
//! the rightmost factor `st⁻¹`. When several relations apply, the lowest
//! relation index (forward orientation first) wins.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::presentation::{Orientation, Presentation};
use crate::rewrite::{apply_step, applicable_steps, Derivation, PairOrder, Step, StepKind};
use crate::word::{Gen, PositiveWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReverseError {
    #[error("the step budget must be positive")]
    ZeroBudget,
    #[error("no relation reverses the factor at position {pos}")]
    Blocked { pos: usize, s: Gen, t: Gen },
    #[error("budget of {0} steps exhausted before reversing converged")]
    BudgetExhausted(usize),
    #[error("the presentation is not declared spherical")]
    NotSpherical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Converged,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversalResult {
    pub outcome: Outcome,
    word: Word,
    pub trace: Derivation,
}

impl ReversalResult {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn steps(&self) -> usize {
        self.trace.len()
    }

    pub fn converged(&self) -> bool {
        self.outcome == Outcome::Converged
    }

    /// Splits a converged result into its positive and negative parts:
    /// `x y⁻¹` for right reversing, `x⁻¹ y` for left reversing.
    fn split_parts(&self, positive_first: bool) -> (PositiveWord, PositiveWord) {
        let letters = self.word.letters();
        let cut = if positive_first {
            letters.iter().position(|l| !l.is_positive()).unwrap_or(letters.len())
        } else {
            letters.iter().position(|l| l.is_positive()).unwrap_or(letters.len())
        };
        let a = Word::from_letters(letters[..cut].to_vec());
        let b = Word::from_letters(letters[cut..].to_vec());
        if positive_first {
            (a.to_positive().unwrap(), b.inverse().to_positive().unwrap())
        } else {
            (a.inverse().to_positive().unwrap(), b.to_positive().unwrap())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// A fraction `n·d⁻¹` (right) or `d⁻¹·n` (left) with the derivation that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: PositiveWord,
    pub denominator: PositiveWord,
    pub side: Side,
    pub trace: Derivation,
}

impl Fraction {
    pub fn as_word(&self) -> Word {
        match self.side {
            Side::Right => self.numerator.to_word().concat(&self.denominator.inverse_word()),
            Side::Left => self.denominator.inverse_word().concat(&self.numerator.to_word()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.numerator.is_empty() && self.denominator.is_empty()
    }
}

fn reversing_step(p: &Presentation, w: &Word, pos: usize, right: bool) -> Option<Step> {
    for rel in 0..p.relations().len() {
        for orient in Orientation::BOTH {
            let step = if right {
                Step::ReverseRight { pos, rel, orient, split: 1 }
            } else {
                Step::ReverseLeft { pos, rel, orient, split: 1 }
            };
            if apply_step(p, w, &step).is_ok() {
                return Some(step);
            }
        }
    }
    None
}

fn reverse(p: &Presentation, w: &Word, budget: usize, right: bool) -> Result<ReversalResult, ReverseError> {
    if budget == 0 {
        return Err(ReverseError::ZeroBudget);
    }
    let mut trace = Derivation::new(w.clone());
    let mut cur = w.clone();
    loop {
        let letters = cur.letters();
        let pattern = |i: usize| {
            let (x, y) = (letters[i], letters[i + 1]);
            if right {
                !x.is_positive() && y.is_positive()
            } else {
                x.is_positive() && !y.is_positive()
            }
        };
        let n = letters.len();
        let found = if right {
            (0..n.saturating_sub(1)).find(|&i| pattern(i))
        } else {
            (0..n.saturating_sub(1)).rev().find(|&i| pattern(i))
        };
        let Some(i) = found else {
            return Ok(ReversalResult { outcome: Outcome::Converged, word: cur, trace });
        };
        if trace.len() >= budget {
            return Ok(ReversalResult { outcome: Outcome::BudgetExhausted, word: cur, trace });
        }
        let (x, y) = (letters[i], letters[i + 1]);
        let step = if x.gen == y.gen {
            let order = if right { PairOrder::NegPos } else { PairOrder::PosNeg };
            Step::Remove { pos: i, order }
        } else {
            reversing_step(p, &cur, i, right).ok_or(ReverseError::Blocked { pos: i, s: x.gen, t: y.gen })?
        };
        cur = apply_step(p, &cur, &step).expect("reversing step was checked");
        trace.push(step);
    }
}

/// Right reversing: type 0 and type 2r steps on the leftmost `s⁻¹t`.
pub fn right_reverse(p: &Presentation, w: &Word, budget: usize) -> Result<ReversalResult, ReverseError> {
    reverse(p, w, budget, true)
}

/// Left reversing: type 0 and type 2l steps on the rightmost `st⁻¹`.
pub fn left_reverse(p: &Presentation, w: &Word, budget: usize) -> Result<ReversalResult, ReverseError> {
    reverse(p, w, budget, false)
}

fn converged(r: ReversalResult) -> Result<ReversalResult, ReverseError> {
    match r.outcome {
        Outcome::Converged => Ok(r),
        Outcome::BudgetExhausted => Err(ReverseError::BudgetExhausted(r.steps())),
    }
}

/// Right fraction `n·d⁻¹` of `w`: left reversing followed by right reversing.
/// `budget` caps each of the two phases.
pub fn right_fraction(p: &Presentation, w: &Word, budget: usize) -> Result<Fraction, ReverseError> {
    let first = converged(left_reverse(p, w, budget)?)?;
    let second = converged(right_reverse(p, first.word(), budget)?)?;
    let (numerator, denominator) = second.split_parts(true);
    let mut trace = first.trace;
    trace.extend(second.trace.steps);
    Ok(Fraction { numerator, denominator, side: Side::Right, trace })
}

/// Left fraction `d⁻¹·n` of `w`: right reversing followed by left reversing.
pub fn left_fraction(p: &Presentation, w: &Word, budget: usize) -> Result<Fraction, ReverseError> {
    let first = converged(right_reverse(p, w, budget)?)?;
    let second = converged(left_reverse(p, first.word(), budget)?)?;
    let (denominator, numerator) = second.split_parts(false);
    let mut trace = first.trace;
    trace.extend(second.trace.steps);
    Ok(Fraction { numerator, denominator, side: Side::Left, trace })
}

/// Decides whether `w` represents 1 in a spherical presentation. On `true` the
/// certificate derives ε from `w` with type 0 and type 2 steps.
pub fn word_problem_spherical(p: &Presentation, w: &Word, budget: usize) -> Result<(bool, Derivation), ReverseError> {
    if !p.is_declared_spherical() {
        return Err(ReverseError::NotSpherical);
    }
    let f = right_fraction(p, w, budget)?;
    Ok((f.is_trivial(), f.trace))
}

/// Result of reversing `w⁻¹w′` for one positive pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCheck {
    ReachesEmpty(Derivation),
    Stuck(Word),
    BudgetExhausted,
    Blocked,
}

pub fn check_pair(p: &Presentation, w: &PositiveWord, w2: &PositiveWord, budget: usize) -> PairCheck {
    let word = w.inverse_word().concat(&w2.to_word());
    match right_reverse(p, &word, budget) {
        Ok(r) if r.converged() && r.word().is_empty() => PairCheck::ReachesEmpty(r.trace),
        Ok(r) if r.converged() => PairCheck::Stuck(r.into_word()),
        Ok(_) => PairCheck::BudgetExhausted,
        Err(_) => PairCheck::Blocked,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletenessReport {
    pub tested: usize,
    pub passed: usize,
    pub budget_exhausted: usize,
    pub failures: Vec<(PositiveWord, PositiveWord)>,
}

impl CompletenessReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.tested
    }
}

/// A random positive word of length `1..=max_len` and a random type 1 walk
/// away from it, giving a pair `w ≡⁺ w′`.
pub fn sample_equivalent_pair(p: &Presentation, max_len: usize, rng: &mut impl Rng) -> (PositiveWord, PositiveWord) {
    let len = rng.gen_range(1..=max_len.max(1));
    let gens: Vec<Gen> = p.generators().collect();
    let w: PositiveWord = (0..len).map(|_| *gens.choose(rng).unwrap()).collect();
    let mut cur = w.to_word();
    for _ in 0..rng.gen_range(0..=2 * max_len) {
        let steps: Vec<Step> = applicable_steps(p, &cur, &[StepKind::One], None)
            .unwrap_or_default()
            .into_iter()
            .filter(|s| matches!(s, Step::Relation { inverse: false, .. }))
            .collect();
        let Some(step) = steps.choose(rng) else { break };
        let next = apply_step(p, &cur, step).expect("enumerated step applies");
        if next.len() > 2 * max_len.max(1) {
            break;
        }
        cur = next;
    }
    (w, cur.to_positive().expect("type 1 steps keep positive words positive"))
}

/// Samples positive pairs `w ≡⁺ w′` and checks that `w⁻¹w′` right-reverses to ε.
pub fn completeness_sample(p: &Presentation, max_len: usize, sample_size: usize, budget: usize, seed: u64) -> CompletenessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CompletenessReport::default();
    for _ in 0..sample_size {
        let (w, w2) = sample_equivalent_pair(p, max_len, &mut rng);
        report.tested += 1;
        match check_pair(p, &w, &w2, budget) {
            PairCheck::ReachesEmpty(_) => report.passed += 1,
            PairCheck::BudgetExhausted => {
                report.budget_exhausted += 1;
                report.failures.push((w, w2));
            }
            PairCheck::Stuck(_) | PairCheck::Blocked => report.failures.push((w, w2)),
        }
    }
    report
}

/// The letter-level shape check for a converged right reversal: no `s⁻¹t`.
pub fn is_right_reversed(w: &Word) -> bool {
    w.letters().windows(2).all(|p| !(!p[0].is_positive() && p[1].is_positive()))
}

pub fn is_left_reversed(w: &Word) -> bool {
    w.letters().windows(2).all(|p| !(p[0].is_positive() && !p[1].is_positive()))
}
