//! Special transformations, Dehn transformations and derivation replay.
//!
//! Positions index letter boundaries; a step's position is where the affected
//! factor starts. For the reversing moves the step also fixes the split:
//!
//! * [`Step::ReverseRight`] rewrites `v⁻¹v′` into `uu′⁻¹` where `vu = v′u′` is
//!   the relation read in `orient`. The factor `v⁻¹` runs from `pos` to the
//!   first positive letter, and `split = |v′|`.
//! * [`Step::ReverseLeft`] rewrites `vv′⁻¹` into `u⁻¹u′` where `uv = u′v′`.
//!   The factor `v` runs from `pos` to the first negative letter, and
//!   `split = |v′|`.

use thiserror::Error;

use crate::presentation::{Orientation, Presentation};
use crate::word::{Letter, PositiveWord, Sign, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Zero,
    One,
    TwoR,
    TwoL,
    Inf,
}

impl StepKind {
    pub const ALL: [StepKind; 5] =
        [StepKind::Zero, StepKind::One, StepKind::TwoR, StepKind::TwoL, StepKind::Inf];
    pub const FINITE: [StepKind; 4] = [StepKind::Zero, StepKind::One, StepKind::TwoR, StepKind::TwoL];

    /// Parses a kind list such as `0,1,2` or `0,2r,inf`. `2` means both reversing moves.
    pub fn parse_set(text: &str) -> Option<Vec<StepKind>> {
        let mut out = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "0" => out.push(StepKind::Zero),
                "1" => out.push(StepKind::One),
                "2" => out.extend([StepKind::TwoR, StepKind::TwoL]),
                "2r" => out.push(StepKind::TwoR),
                "2l" => out.push(StepKind::TwoL),
                "inf" | "∞" => out.push(StepKind::Inf),
                _ => return None,
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }
}

/// Which trivial pair a removal targets: `s s⁻¹` or `s⁻¹ s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairOrder {
    PosNeg,
    NegPos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Remove the trivial pair at `pos, pos + 1`.
    Remove { pos: usize, order: PairOrder },
    /// Replace `v` by `v′` (or `v⁻¹` by `v′⁻¹` when `inverse`), where `(v, v′)`
    /// is relation `rel` read in `orient`.
    Relation { pos: usize, rel: usize, orient: Orientation, inverse: bool },
    ReverseRight { pos: usize, rel: usize, orient: Orientation, split: usize },
    ReverseLeft { pos: usize, rel: usize, orient: Orientation, split: usize },
    /// Insert `letter · letter⁻¹` at `pos`.
    Insert { pos: usize, letter: Letter },
}

impl Step {
    pub fn kind(&self) -> StepKind {
        match self {
            Step::Remove { .. } => StepKind::Zero,
            Step::Relation { .. } => StepKind::One,
            Step::ReverseRight { .. } => StepKind::TwoR,
            Step::ReverseLeft { .. } => StepKind::TwoL,
            Step::Insert { .. } => StepKind::Inf,
        }
    }

    pub fn pos(&self) -> usize {
        match *self {
            Step::Remove { pos, .. }
            | Step::Relation { pos, .. }
            | Step::ReverseRight { pos, .. }
            | Step::ReverseLeft { pos, .. }
            | Step::Insert { pos, .. } => pos,
        }
    }

    pub fn relation_index(&self) -> Option<usize> {
        match *self {
            Step::Relation { rel, .. } | Step::ReverseRight { rel, .. } | Step::ReverseLeft { rel, .. } => {
                Some(rel)
            }
            _ => None,
        }
    }

    /// The same step moved to another position.
    pub fn at(self, new_pos: usize) -> Step {
        match self {
            Step::Remove { order, .. } => Step::Remove { pos: new_pos, order },
            Step::Relation { rel, orient, inverse, .. } => Step::Relation { pos: new_pos, rel, orient, inverse },
            Step::ReverseRight { rel, orient, split, .. } => Step::ReverseRight { pos: new_pos, rel, orient, split },
            Step::ReverseLeft { rel, orient, split, .. } => Step::ReverseLeft { pos: new_pos, rel, orient, split },
            Step::Insert { letter, .. } => Step::Insert { pos: new_pos, letter },
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepError {
    #[error("position {pos} is out of range for a word of length {len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("no relation with index {0}")]
    UnknownRelation(usize),
    #[error("the word does not match the step pattern at position {0}")]
    PatternMismatch(usize),
    #[error("split {0} leaves an empty side")]
    EmptySplit(usize),
    #[error("insertion steps form an infinite family; supply an insertion bound")]
    UnboundedInsertion,
    #[error("expected a type 2 step")]
    NotType2,
}

/// Caps the enumeration of insertion steps: they are only listed when the
/// resulting word has length at most `max_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InsertionBound {
    pub max_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(start: Word) -> Derivation {
        Derivation { start, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, steps: impl IntoIterator<Item = Step>) {
        self.steps.extend(steps);
    }

    pub fn uses_only(&self, kinds: &[StepKind]) -> bool {
        self.steps.iter().all(|s| kinds.contains(&s.kind()))
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind() == kind).count()
    }

    /// Every intermediate word, starting with `start`.
    pub fn words(&self, p: &Presentation) -> Result<Vec<Word>, DerivationError> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start.clone());
        for (index, step) in self.steps.iter().enumerate() {
            let next = apply_step(p, out.last().unwrap(), step)
                .map_err(|source| DerivationError { index, step: *step, source })?;
            out.push(next);
        }
        Ok(out)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {index} ({step:?}) is not applicable: {source}")]
pub struct DerivationError {
    pub index: usize,
    pub step: Step,
    pub source: StepError,
}

/// Replays `d` and returns the final word.
pub fn check_derivation(p: &Presentation, d: &Derivation) -> Result<Word, DerivationError> {
    let mut w = d.start.clone();
    for (index, step) in d.steps.iter().enumerate() {
        w = apply_step(p, &w, step).map_err(|source| DerivationError { index, step: *step, source })?;
    }
    Ok(w)
}

fn sign_run_end(letters: &[Letter], from: usize, sign: Sign) -> usize {
    letters[from..].iter().position(|l| l.sign != sign).map_or(letters.len(), |k| from + k)
}

fn matches_positive(letters: &[Letter], v: &PositiveWord) -> bool {
    letters.len() == v.len() && letters.iter().zip(v.gens()).all(|(l, g)| l.sign == Sign::Pos && l.gen == *g)
}

fn matches_negative(letters: &[Letter], v: &PositiveWord) -> bool {
    // letters must spell v⁻¹
    letters.len() == v.len()
        && letters.iter().zip(v.gens().iter().rev()).all(|(l, g)| l.sign == Sign::Neg && l.gen == *g)
}

fn relation_sides<'p>(
    p: &'p Presentation,
    rel: usize,
    orient: Orientation,
) -> Result<(&'p PositiveWord, &'p PositiveWord), StepError> {
    Ok(p.relation(rel).ok_or(StepError::UnknownRelation(rel))?.sides(orient))
}

/// The pieces `(v, u, v′, u′)` of a type 2 step, together with the factor length it rewrites.
struct Type2Parts {
    v: PositiveWord,
    u: PositiveWord,
    v2: PositiveWord,
    u2: PositiveWord,
    factor_len: usize,
}

fn type2_parts(p: &Presentation, w: &Word, step: &Step) -> Result<Type2Parts, StepError> {
    let letters = w.letters();
    let len = letters.len();
    match *step {
        Step::ReverseRight { pos, rel, orient, split } => {
            if pos >= len {
                return Err(StepError::OutOfRange { pos, len });
            }
            if split == 0 {
                return Err(StepError::EmptySplit(split));
            }
            if letters[pos].sign != Sign::Neg {
                return Err(StepError::PatternMismatch(pos));
            }
            let (a, b) = relation_sides(p, rel, orient)?;
            let k = sign_run_end(letters, pos, Sign::Neg);
            let v_len = k - pos;
            if k + split > len || v_len > a.len() || split > b.len() {
                return Err(StepError::PatternMismatch(pos));
            }
            let v = a.prefix(v_len);
            let v2 = b.prefix(split);
            if !matches_negative(&letters[pos..k], &v) || !matches_positive(&letters[k..k + split], &v2) {
                return Err(StepError::PatternMismatch(pos));
            }
            Ok(Type2Parts {
                u: a.suffix(a.len() - v_len),
                u2: b.suffix(b.len() - split),
                v,
                v2,
                factor_len: v_len + split,
            })
        }
        Step::ReverseLeft { pos, rel, orient, split } => {
            if pos >= len {
                return Err(StepError::OutOfRange { pos, len });
            }
            if split == 0 {
                return Err(StepError::EmptySplit(split));
            }
            if letters[pos].sign != Sign::Pos {
                return Err(StepError::PatternMismatch(pos));
            }
            let (a, b) = relation_sides(p, rel, orient)?;
            let k = sign_run_end(letters, pos, Sign::Pos);
            let v_len = k - pos;
            if k + split > len || v_len > a.len() || split > b.len() {
                return Err(StepError::PatternMismatch(pos));
            }
            let v = a.suffix(v_len);
            let v2 = b.suffix(split);
            if !matches_positive(&letters[pos..k], &v) || !matches_negative(&letters[k..k + split], &v2) {
                return Err(StepError::PatternMismatch(pos));
            }
            Ok(Type2Parts {
                u: a.prefix(a.len() - v_len),
                u2: b.prefix(b.len() - split),
                v,
                v2,
                factor_len: v_len + split,
            })
        }
        _ => Err(StepError::NotType2),
    }
}

/// Allocation-free version of `type2_parts(..).is_ok()` for enumeration.
fn type2_matches(p: &Presentation, w: &Word, step: &Step) -> bool {
    let letters = w.letters();
    let len = letters.len();
    let (pos, rel, orient, split, right) = match *step {
        Step::ReverseRight { pos, rel, orient, split } => (pos, rel, orient, split, true),
        Step::ReverseLeft { pos, rel, orient, split } => (pos, rel, orient, split, false),
        _ => return false,
    };
    let Some(r) = p.relation(rel) else { return false };
    if pos >= len || split == 0 {
        return false;
    }
    let (a, b) = r.sides(orient);
    let first = if right { Sign::Neg } else { Sign::Pos };
    if letters[pos].sign != first {
        return false;
    }
    let k = sign_run_end(letters, pos, first);
    let v_len = k - pos;
    if k + split > len || v_len > a.len() || split > b.len() {
        return false;
    }
    let (a, b) = (a.gens(), b.gens());
    let run = &letters[pos..k];
    let next = &letters[k..k + split];
    if right {
        // v⁻¹ with v a prefix of a, then v′ a prefix of b
        run.iter().zip(a[..v_len].iter().rev()).all(|(l, g)| l.gen == *g)
            && next.iter().zip(&b[..split]).all(|(l, g)| l.sign == Sign::Pos && l.gen == *g)
    } else {
        // v a suffix of a, then v′⁻¹ with v′ a suffix of b
        run.iter().zip(&a[a.len() - v_len..]).all(|(l, g)| l.gen == *g)
            && next.iter().zip(b[b.len() - split..].iter().rev()).all(|(l, g)| l.sign == Sign::Neg && l.gen == *g)
    }
}

pub fn apply_step(p: &Presentation, w: &Word, step: &Step) -> Result<Word, StepError> {
    let letters = w.letters();
    let len = letters.len();
    match *step {
        Step::Remove { pos, order } => {
            if pos + 1 >= len {
                return Err(StepError::OutOfRange { pos, len });
            }
            let (x, y) = (letters[pos], letters[pos + 1]);
            let expected_first = match order {
                PairOrder::PosNeg => Sign::Pos,
                PairOrder::NegPos => Sign::Neg,
            };
            if !x.cancels(y) || x.sign != expected_first {
                return Err(StepError::PatternMismatch(pos));
            }
            Ok(w.splice(pos, 2, &[]))
        }
        Step::Relation { pos, rel, orient, inverse } => {
            let (v, v2) = relation_sides(p, rel, orient)?;
            if pos + v.len() > len {
                return Err(StepError::PatternMismatch(pos));
            }
            let factor = &letters[pos..pos + v.len()];
            let ok = if inverse { matches_negative(factor, v) } else { matches_positive(factor, v) };
            if !ok {
                return Err(StepError::PatternMismatch(pos));
            }
            let repl = if inverse { v2.inverse_word() } else { v2.to_word() };
            Ok(w.splice(pos, v.len(), repl.letters()))
        }
        Step::ReverseRight { pos, .. } => {
            let parts = type2_parts(p, w, step)?;
            let repl = parts.u.to_word().concat(&parts.u2.inverse_word());
            Ok(w.splice(pos, parts.factor_len, repl.letters()))
        }
        Step::ReverseLeft { pos, .. } => {
            let parts = type2_parts(p, w, step)?;
            let repl = parts.u.inverse_word().concat(&parts.u2.to_word());
            Ok(w.splice(pos, parts.factor_len, repl.letters()))
        }
        Step::Insert { pos, letter } => {
            if pos > len {
                return Err(StepError::OutOfRange { pos, len });
            }
            if letter.gen.index() >= p.rank() {
                return Err(StepError::PatternMismatch(pos));
            }
            Ok(w.splice(pos, 0, &[letter, letter.inverse()]))
        }
    }
}

/// All applicable steps of the requested kinds, ordered by position, kind,
/// relation index, orientation and split. Insertion steps require `bound`.
pub fn applicable_steps(
    p: &Presentation,
    w: &Word,
    kinds: &[StepKind],
    bound: Option<InsertionBound>,
) -> Result<Vec<Step>, StepError> {
    let want = |k: StepKind| kinds.contains(&k);
    if want(StepKind::Inf) && bound.is_none() {
        return Err(StepError::UnboundedInsertion);
    }
    let letters = w.letters();
    let len = letters.len();
    let mut out = Vec::new();
    for pos in 0..=len {
        if want(StepKind::Zero) && pos + 1 < len && letters[pos].cancels(letters[pos + 1]) {
            let order = if letters[pos].is_positive() { PairOrder::PosNeg } else { PairOrder::NegPos };
            out.push(Step::Remove { pos, order });
        }
        if want(StepKind::One) && pos < len {
            for (rel, r) in p.relations().iter().enumerate() {
                for orient in Orientation::BOTH {
                    let v = r.sides(orient).0;
                    for inverse in [false, true] {
                        let Some(factor) = letters.get(pos..pos + v.len()) else { continue };
                        let hit = if inverse { matches_negative(factor, v) } else { matches_positive(factor, v) };
                        if hit {
                            out.push(Step::Relation { pos, rel, orient, inverse });
                        }
                    }
                }
            }
        }
        if want(StepKind::TwoR) && pos < len && !letters[pos].is_positive() {
            let k = sign_run_end(letters, pos, Sign::Neg);
            let room = sign_run_end(letters, k.min(len), Sign::Pos) - k;
            push_type2(p, w, pos, room, &mut out, |pos, rel, orient, split| Step::ReverseRight {
                pos,
                rel,
                orient,
                split,
            });
        }
        if want(StepKind::TwoL) && pos < len && letters[pos].is_positive() {
            let k = sign_run_end(letters, pos, Sign::Pos);
            let room = sign_run_end(letters, k.min(len), Sign::Neg) - k;
            push_type2(p, w, pos, room, &mut out, |pos, rel, orient, split| Step::ReverseLeft {
                pos,
                rel,
                orient,
                split,
            });
        }
        if want(StepKind::Inf) {
            let max_len = bound.map_or(0, |b| b.max_len);
            if len + 2 <= max_len {
                for g in p.generators() {
                    for letter in [Letter::pos(g), Letter::neg(g)] {
                        out.push(Step::Insert { pos, letter });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn push_type2(
    p: &Presentation,
    w: &Word,
    pos: usize,
    room: usize,
    out: &mut Vec<Step>,
    make: impl Fn(usize, usize, Orientation, usize) -> Step,
) {
    for rel in 0..p.relations().len() {
        for orient in Orientation::BOTH {
            let max_split = room.min(p.relations()[rel].sides(orient).1.len());
            for split in 1..=max_split {
                let s = make(pos, rel, orient, split);
                if type2_matches(p, w, &s) {
                    debug_assert!(type2_parts(p, w, &s).is_ok());
                    out.push(s);
                }
            }
        }
    }
}

/// Rebuilds a derivation from its sequence of words: for each consecutive pair
/// the first step of `kinds` (in enumeration order) producing the next word is
/// used. Returns the index of the first pair no single step connects.
pub fn connect_words(p: &Presentation, words: &[Word], kinds: &[StepKind]) -> Result<Derivation, usize> {
    let start = words.first().cloned().unwrap_or_default();
    let mut d = Derivation::new(start);
    for (i, pair) in words.windows(2).enumerate() {
        let bound = InsertionBound { max_len: pair[0].len() + 2 };
        let steps = applicable_steps(p, &pair[0], kinds, Some(bound)).map_err(|_| i)?;
        let step = steps
            .into_iter()
            .find(|s| apply_step(p, &pair[0], s).is_ok_and(|w| w == pair[1]))
            .ok_or(i)?;
        d.push(step);
    }
    Ok(d)
}

/// Rewrites a type 2 step using insertions, one relation step and removals.
pub fn simulate_type2(p: &Presentation, w: &Word, step: &Step) -> Result<Derivation, StepError> {
    let parts = type2_parts(p, w, step)?;
    let mut d = Derivation::new(w.clone());
    match *step {
        Step::ReverseRight { pos, rel, orient, .. } => {
            // v⁻¹ v′ · u′u′⁻¹  →  v⁻¹ v u u′⁻¹  →  u u′⁻¹
            let after = pos + parts.factor_len;
            for (i, g) in parts.u2.gens().iter().enumerate() {
                d.push(Step::Insert { pos: after + i, letter: Letter::pos(*g) });
            }
            let start_v2 = pos + parts.v.len();
            d.push(Step::Relation { pos: start_v2, rel, orient: flip(orient), inverse: false });
            for i in 0..parts.v.len() {
                d.push(Step::Remove { pos: pos + parts.v.len() - 1 - i, order: PairOrder::NegPos });
            }
        }
        Step::ReverseLeft { pos, rel, orient, .. } => {
            // u⁻¹u · v v′⁻¹  →  u⁻¹ u′ v′ v′⁻¹  →  u⁻¹ u′
            let m = parts.u.len();
            for i in 0..m {
                d.push(Step::Insert { pos: pos + i, letter: Letter::neg(parts.u.gens()[m - 1 - i]) });
            }
            d.push(Step::Relation { pos: pos + m, rel, orient, inverse: false });
            let mid = pos + m + parts.u2.len() + parts.v2.len();
            for i in 0..parts.v2.len() {
                d.push(Step::Remove { pos: mid - 1 - i, order: PairOrder::PosNeg });
            }
        }
        _ => return Err(StepError::NotType2),
    }
    Ok(d)
}

fn flip(o: Orientation) -> Orientation {
    match o {
        Orientation::Fwd => Orientation::Bwd,
        Orientation::Bwd => Orientation::Fwd,
    }
}

/// A length-decreasing replacement `u → u′` where `u⁻¹u′` is a cyclic
/// permutation of `v⁻¹v′` (orientation `Fwd`) or `v′⁻¹v` (`Bwd`) for the
/// relation `v = v′` with index `rel`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DehnStep {
    pub pos: usize,
    pub factor: Word,
    pub replacement: Word,
    pub rel: usize,
    pub shift: usize,
    pub orient: Orientation,
}

impl DehnStep {
    pub fn apply(&self, w: &Word) -> Option<Word> {
        let end = self.pos + self.factor.len();
        (end <= w.len() && w.letters()[self.pos..end] == *self.factor.letters())
            .then(|| w.splice(self.pos, self.factor.len(), self.replacement.letters()))
    }
}

/// The cyclic words `v⁻¹v′` and `v′⁻¹v` attached to each relation, with their shifts.
pub fn dehn_rules(p: &Presentation) -> Vec<(usize, usize, Orientation, Word, Word)> {
    let mut rules = Vec::new();
    for (rel, r) in p.relations().iter().enumerate() {
        for orient in Orientation::BOTH {
            let (v, v2) = r.sides(orient);
            let c = v.inverse_word().concat(&v2.to_word());
            let n = c.len();
            for shift in 0..n {
                let rotated: Word = (0..n).map(|i| c.letters()[(shift + i) % n]).collect();
                for t in (n / 2 + 1)..=n {
                    let u = rotated.factor(0..t).inverse();
                    let u2 = rotated.factor(t..n);
                    rules.push((rel, shift, orient, u, u2));
                }
            }
        }
    }
    rules
}

/// Every Dehn transformation applicable to `w`, ordered by position, then
/// relation, orientation, shift. Identical `(pos, u, u′)` triples are listed once.
pub fn dehn_steps(p: &Presentation, w: &Word) -> Vec<DehnStep> {
    let rules = dehn_rules(p);
    let letters = w.letters();
    let mut out: Vec<DehnStep> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for pos in 0..letters.len() {
        for (rel, shift, orient, u, u2) in &rules {
            let end = pos + u.len();
            if end <= letters.len() && letters[pos..end] == *u.letters() && seen.insert((pos, u.clone(), u2.clone())) {
                out.push(DehnStep {
                    pos,
                    factor: u.clone(),
                    replacement: u2.clone(),
                    rel: *rel,
                    shift: *shift,
                    orient: *orient,
                });
            }
        }
    }
    out
}
