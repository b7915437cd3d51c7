//! Right-angled presentations: augmented words, lifting of derivations, and
//! the elimination of insertion steps.
//!
//! An augmented letter carries an age index; index 0 marks an original letter.
//! A derivation using types 0, 1 and ∞ is lifted letter by letter, each
//! insertion receiving a fresh index. Projecting away the letters of index
//! `≥ h`, for `h` running down from the highest index to 1, turns every lifted
//! step into a (possibly empty) block of type 0, 1 and 2 steps on index-0
//! words, which concatenate into an insertion-free derivation.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Orientation, Presentation, Relation};
use crate::rewrite::{apply_step, check_derivation, simulate_type2, Derivation, DerivationError, PairOrder, Step, StepKind};
use crate::word::{Gen, Letter, PositiveWord, Sign, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AugLetter {
    pub gen: Gen,
    pub index: u32,
    pub sign: Sign,
}

impl AugLetter {
    pub fn plain(l: Letter) -> AugLetter {
        AugLetter { gen: l.gen, index: 0, sign: l.sign }
    }

    pub fn letter(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AugWord(Vec<AugLetter>);

impl AugWord {
    pub fn new(letters: Vec<AugLetter>) -> AugWord {
        AugWord(letters)
    }

    /// The word with every letter at index 0.
    pub fn from_word(w: &Word) -> AugWord {
        AugWord(w.letters().iter().map(|&l| AugLetter::plain(l)).collect())
    }

    pub fn letters(&self) -> &[AugLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index).max().unwrap_or(0)
    }

    pub fn render(&self, p: &Presentation) -> String {
        self.0
            .iter()
            .map(|l| {
                let base = p.render_letter(l.letter());
                if l.index == 0 {
                    base
                } else {
                    format!("{base}[{}]", l.index)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace-separated letters with an optional `[index]` suffix,
    /// e.g. `a[1] B c[2]`.
    pub fn parse(p: &Presentation, text: &str) -> Result<AugWord, crate::ParseError> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            let (base, index) = match tok.split_once('[') {
                Some((b, rest)) => {
                    let idx = rest
                        .strip_suffix(']')
                        .and_then(|d| d.parse::<u32>().ok())
                        .ok_or_else(|| crate::ParseError::MalformedToken(tok.to_string()))?;
                    (b, idx)
                }
                None => (tok, 0),
            };
            let w = p.parse_word(base)?;
            if w.len() != 1 {
                return Err(crate::ParseError::MalformedToken(tok.to_string()));
            }
            let l = w.letters()[0];
            out.push(AugLetter { gen: l.gen, index, sign: l.sign });
        }
        Ok(AugWord(out))
    }
}

/// `φ`: forgets indices.
pub fn phi(w: &AugWord) -> Word {
    w.0.iter().map(|l| l.letter()).collect()
}

/// `π_h`: deletes the letters of index `≥ h`.
pub fn pi_h(w: &AugWord, h: u32) -> AugWord {
    AugWord(w.0.iter().copied().filter(|l| l.index < h).collect())
}

/// Position in `π_h(w)` of the boundary `pos` of `w`.
fn pi_pos(w: &AugWord, h: u32, pos: usize) -> usize {
    w.0[..pos].iter().filter(|l| l.index < h).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AugStep {
    /// Remove `s[i]^e s[j]^-e` at `pos`; remaining `s[i]`, `s[j]` become `s[min(i, j)]`.
    Remove { pos: usize },
    /// Swap two same-sign letters using the commutation relation `rel`.
    One { pos: usize, rel: usize },
    /// Swap two opposite-sign letters using the commutation relation `rel`.
    Two { pos: usize, rel: usize },
    /// Insert `s[index]^e s[index]^-e`; `index` must exceed every index present.
    Insert { pos: usize, letter: Letter, index: u32 },
}

impl AugStep {
    pub fn kind(&self) -> StepKind {
        match self {
            AugStep::Remove { .. } => StepKind::Zero,
            AugStep::One { .. } => StepKind::One,
            AugStep::Two { .. } => StepKind::TwoR,
            AugStep::Insert { .. } => StepKind::Inf,
        }
    }

    pub fn pos(&self) -> usize {
        match *self {
            AugStep::Remove { pos } | AugStep::One { pos, .. } | AugStep::Two { pos, .. } | AugStep::Insert { pos, .. } => pos,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugError {
    #[error("position {pos} is out of range for a word of length {len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("the letters at position {0} do not match the step")]
    PatternMismatch(usize),
    #[error("relation {0} is not a commutation of the two letters")]
    NotCommuting(usize),
    #[error("inserted index {index} is not larger than the current maximum {max}")]
    NotFresh { index: u32, max: u32 },
}

pub fn apply_aug_step(p: &Presentation, w: &AugWord, step: &AugStep) -> Result<AugWord, AugError> {
    let len = w.len();
    let swap_check = |pos: usize, rel: usize, same_sign: bool| -> Result<(), AugError> {
        if pos + 1 >= len {
            return Err(AugError::OutOfRange { pos, len });
        }
        let (x, y) = (w.0[pos], w.0[pos + 1]);
        if (x.sign == y.sign) != same_sign {
            return Err(AugError::PatternMismatch(pos));
        }
        match p.relation(rel).and_then(Relation::commutation) {
            Some((s, t)) if (s, t) == (x.gen, y.gen) || (t, s) == (x.gen, y.gen) => Ok(()),
            _ => Err(AugError::NotCommuting(rel)),
        }
    };
    match *step {
        AugStep::Remove { pos } => {
            if pos + 1 >= len {
                return Err(AugError::OutOfRange { pos, len });
            }
            let (x, y) = (w.0[pos], w.0[pos + 1]);
            if x.gen != y.gen || x.sign == y.sign {
                return Err(AugError::PatternMismatch(pos));
            }
            let m = x.index.min(y.index);
            let mut out = Vec::with_capacity(len - 2);
            for (k, l) in w.0.iter().enumerate() {
                if k == pos || k == pos + 1 {
                    continue;
                }
                let mut l = *l;
                if l.gen == x.gen && (l.index == x.index || l.index == y.index) {
                    l.index = m;
                }
                out.push(l);
            }
            Ok(AugWord(out))
        }
        AugStep::One { pos, rel } | AugStep::Two { pos, rel } => {
            swap_check(pos, rel, matches!(step, AugStep::One { .. }))?;
            let mut out = w.0.clone();
            out.swap(pos, pos + 1);
            Ok(AugWord(out))
        }
        AugStep::Insert { pos, letter, index } => {
            if pos > len {
                return Err(AugError::OutOfRange { pos, len });
            }
            let max = w.max_index();
            if index <= max {
                return Err(AugError::NotFresh { index, max });
            }
            let a = AugLetter { gen: letter.gen, index, sign: letter.sign };
            let b = AugLetter { sign: letter.sign.flip(), ..a };
            let mut out = w.0.clone();
            out.splice(pos..pos, [a, b]);
            Ok(AugWord(out))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugDerivation {
    pub start: AugWord,
    pub steps: Vec<AugStep>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("augmented step {index} ({step:?}) is not applicable: {source}")]
pub struct AugDerivationError {
    pub index: usize,
    pub step: AugStep,
    pub source: AugError,
}

impl AugDerivation {
    pub fn words(&self, p: &Presentation) -> Result<Vec<AugWord>, AugDerivationError> {
        let mut out = vec![self.start.clone()];
        for (index, step) in self.steps.iter().enumerate() {
            let next = apply_aug_step(p, out.last().unwrap(), step)
                .map_err(|source| AugDerivationError { index, step: *step, source })?;
            out.push(next);
        }
        Ok(out)
    }
}

pub fn check_aug_derivation(p: &Presentation, d: &AugDerivation) -> Result<AugWord, AugDerivationError> {
    Ok(d.words(p)?.pop().unwrap())
}

/// Why an augmented word fails to be regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irregularity {
    WrongCount { index: u32, count: usize },
    NotAPair { index: u32 },
    NotCommutative { index: u32, blocker: Gen },
}

impl fmt::Display for Irregularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irregularity::WrongCount { index, count } => write!(f, "index {index} occurs {count} times"),
            Irregularity::NotAPair { index } => write!(f, "the letters of index {index} are not s^e .. s^-e"),
            Irregularity::NotCommutative { index, blocker } => {
                write!(f, "the pair of index {index} encloses generator {} it does not commute with", blocker.0)
            }
        }
    }
}

/// Checks that every positive index occurs in exactly one commutative pair.
pub fn is_regular(p: &Presentation, w: &AugWord) -> Result<(), Irregularity> {
    let max = w.max_index();
    for h in 1..=max {
        let at: Vec<usize> = (0..w.len()).filter(|&k| w.0[k].index == h).collect();
        if at.is_empty() {
            continue;
        }
        if at.len() != 2 {
            return Err(Irregularity::WrongCount { index: h, count: at.len() });
        }
        let (x, y) = (w.0[at[0]], w.0[at[1]]);
        if x.gen != y.gen || x.sign == y.sign {
            return Err(Irregularity::NotAPair { index: h });
        }
        for l in &w.0[at[0] + 1..at[1]] {
            if l.index < h && !p.commute(x.gen, l.gen) {
                return Err(Irregularity::NotCommutative { index: h, blocker: l.gen });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RaagError {
    #[error("the presentation is not right-angled")]
    NotRightAngled,
    #[error(transparent)]
    Replay(#[from] DerivationError),
    #[error(transparent)]
    AugReplay(#[from] AugDerivationError),
    #[error("step {0} is a type 2 step that is not a commutation swap")]
    NotLiftable(usize),
    #[error("lifted word {index} is not regular: {reason}")]
    Irregular { index: usize, reason: String },
    #[error("projection onto index {h} produced a wrong word")]
    ProjectionMismatch { h: u32 },
    #[error("the word does not represent 1")]
    NotTrivial,
    #[error("the eliminated derivation ends at a different word")]
    EndMismatch,
}

fn require_right_angled(p: &Presentation) -> Result<(), RaagError> {
    if p.is_right_angled() {
        Ok(())
    } else {
        Err(RaagError::NotRightAngled)
    }
}

/// Lifts a derivation to augmented words; insertions get index `max + 1`.
pub fn lift_derivation(p: &Presentation, d: &Derivation) -> Result<AugDerivation, RaagError> {
    require_right_angled(p)?;
    let words = d.words(p)?;
    let start = AugWord::from_word(&d.start);
    let mut cur = start.clone();
    let mut steps = Vec::with_capacity(d.steps.len());
    for (k, step) in d.steps.iter().enumerate() {
        let aug = match *step {
            Step::Remove { pos, .. } => AugStep::Remove { pos },
            Step::Relation { pos, rel, .. } => AugStep::One { pos, rel },
            Step::ReverseRight { pos, rel, split: 1, .. } | Step::ReverseLeft { pos, rel, split: 1, .. }
                if pos + 1 < words[k].len() && words[k].letters()[pos].sign != words[k].letters()[pos + 1].sign =>
            {
                AugStep::Two { pos, rel }
            }
            Step::ReverseRight { .. } | Step::ReverseLeft { .. } => return Err(RaagError::NotLiftable(k)),
            Step::Insert { pos, letter } => AugStep::Insert { pos, letter, index: cur.max_index() + 1 },
        };
        cur = apply_aug_step(p, &cur, &aug).map_err(|source| AugDerivationError { index: k, step: aug, source })?;
        debug_assert_eq!(phi(&cur), words[k + 1]);
        steps.push(aug);
    }
    Ok(AugDerivation { start, steps })
}

/// Steps leading from `π_h(w)` to `π_h(w′)` where `w′` is `step` applied to
/// the regular word `w`.
pub fn project_step(p: &Presentation, w: &AugWord, step: &AugStep, h: u32) -> Result<Vec<AugStep>, RaagError> {
    is_regular(p, w).map_err(|r| RaagError::Irregular { index: 0, reason: r.to_string() })?;
    let next = apply_aug_step(p, w, step).map_err(|source| AugDerivationError { index: 0, step: *step, source })?;
    match *step {
        AugStep::Insert { index, pos, letter } => {
            if index >= h {
                Ok(Vec::new())
            } else {
                Ok(vec![AugStep::Insert { pos: pi_pos(w, h, pos), letter, index }])
            }
        }
        AugStep::One { pos, rel } | AugStep::Two { pos, rel } => {
            if w.0[pos].index >= h || w.0[pos + 1].index >= h {
                Ok(Vec::new())
            } else {
                let q = pi_pos(w, h, pos);
                Ok(vec![if matches!(step, AugStep::One { .. }) { AugStep::One { pos: q, rel } } else { AugStep::Two { pos: q, rel } }])
            }
        }
        AugStep::Remove { pos } => {
            let (i, j) = (w.0[pos].index, w.0[pos + 1].index);
            let (lo, hi) = (i.min(j), i.max(j));
            if hi < h {
                return Ok(vec![AugStep::Remove { pos: pi_pos(w, h, pos) }]);
            }
            if lo >= h {
                return Ok(Vec::new());
            }
            // The surviving low-index letter moves to where the partner of the
            // high-index letter stands, across letters that commute with it.
            let low_at = if i < j { pos } else { pos + 1 };
            let gen = w.0[pos].gen;
            let partner = (0..w.len())
                .find(|&k| k != pos && k != pos + 1 && w.0[k].index == hi && w.0[k].gen == gen)
                .ok_or(RaagError::Irregular { index: 0, reason: format!("index {hi} has no partner") })?;
            let from = pi_pos(w, h, low_at);
            let partner_in_next = if partner > pos { partner - 2 } else { partner };
            let to = pi_pos(&next, h, partner_in_next);
            let mut cur = pi_h(w, h);
            let mut out = Vec::new();
            let mut k = from;
            while k != to {
                let swap_at = if to > k { k } else { k - 1 };
                let (x, y) = (cur.0[swap_at], cur.0[swap_at + 1]);
                let rel = p.commutation_index(x.gen, y.gen).ok_or(RaagError::Irregular {
                    index: 0,
                    reason: format!("letters {} and {} do not commute", x.gen.0, y.gen.0),
                })?;
                let s = if x.sign == y.sign { AugStep::One { pos: swap_at, rel } } else { AugStep::Two { pos: swap_at, rel } };
                cur = apply_aug_step(p, &cur, &s).map_err(|source| AugDerivationError { index: out.len(), step: s, source })?;
                out.push(s);
                k = if to > k { k + 1 } else { k - 1 };
            }
            if cur != pi_h(&next, h) {
                return Err(RaagError::ProjectionMismatch { h });
            }
            Ok(out)
        }
    }
}

/// The plain step that performs an augmented step on an index-free word.
fn to_plain(p: &Presentation, w: &AugWord, step: &AugStep) -> Option<Step> {
    match *step {
        AugStep::Remove { pos } => {
            let order = if w.0[pos].sign == Sign::Pos { PairOrder::PosNeg } else { PairOrder::NegPos };
            Some(Step::Remove { pos, order })
        }
        AugStep::One { pos, .. } | AugStep::Two { pos, .. } => plain_swap(p, &phi(w), pos),
        AugStep::Insert { pos, letter, .. } => Some(Step::Insert { pos, letter }),
    }
}

fn orientation_with_lhs(r: &Relation, first: Gen, second: Gen) -> Option<Orientation> {
    Orientation::BOTH.into_iter().find(|&o| r.sides(o).0.gens() == [first, second])
}

/// A type 1 or type 2 step swapping the commuting letters at `pos`, `pos + 1`.
pub fn plain_swap(p: &Presentation, w: &Word, pos: usize) -> Option<Step> {
    let (x, y) = (*w.letters().get(pos)?, *w.letters().get(pos + 1)?);
    let rel = p.commutation_index(x.gen, y.gen)?;
    let r = &p.relations()[rel];
    match (x.sign, y.sign) {
        (Sign::Pos, Sign::Pos) => Some(Step::Relation { pos, rel, orient: orientation_with_lhs(r, x.gen, y.gen)?, inverse: false }),
        // x⁻¹y⁻¹ = (yx)⁻¹
        (Sign::Neg, Sign::Neg) => Some(Step::Relation { pos, rel, orient: orientation_with_lhs(r, y.gen, x.gen)?, inverse: true }),
        // s⁻¹t → t s⁻¹ with v = s, v′ = t, u = t, u′ = s
        (Sign::Neg, Sign::Pos) => Some(Step::ReverseRight { pos, rel, orient: orientation_with_lhs(r, x.gen, y.gen)?, split: 1 }),
        // s t⁻¹ → t⁻¹ s with u = t, v = s, u′ = s, v′ = t
        (Sign::Pos, Sign::Neg) => Some(Step::ReverseLeft { pos, rel, orient: orientation_with_lhs(r, y.gen, x.gen)?, split: 1 }),
    }
}

/// Statistics of one elimination run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EliminationStats {
    pub input_steps: usize,
    pub output_steps: usize,
    pub max_index: u32,
}

/// Turns a `{0,1,∞}` derivation (type 2 commutation swaps are accepted too)
/// into a `{0,1,2}` derivation with the same start and end.
pub fn eliminate_infinity(p: &Presentation, d: &Derivation) -> Result<Derivation, RaagError> {
    eliminate_infinity_with_stats(p, d).map(|(d, _)| d)
}

pub fn eliminate_infinity_with_stats(p: &Presentation, d: &Derivation) -> Result<(Derivation, EliminationStats), RaagError> {
    let lifted = lift_derivation(p, d)?;
    let words = lifted.words(p)?;
    for (index, w) in words.iter().enumerate() {
        is_regular(p, w).map_err(|r| RaagError::Irregular { index, reason: r.to_string() })?;
    }
    let top = words.iter().map(AugWord::max_index).max().unwrap_or(0);
    let mut out = Derivation::new(d.start.clone());
    for (k, step) in lifted.steps.iter().enumerate() {
        let mut seq: Vec<(AugWord, AugStep)> = vec![(words[k].clone(), *step)];
        for h in (1..=top).rev() {
            let mut projected = Vec::new();
            for (w, s) in &seq {
                let mut cur = pi_h(w, h);
                for ps in project_step(p, w, s, h)? {
                    let next = apply_aug_step(p, &cur, &ps).map_err(|source| AugDerivationError { index: k, step: ps, source })?;
                    projected.push((std::mem::replace(&mut cur, next), ps));
                }
            }
            seq = projected;
        }
        for (w, s) in &seq {
            out.push(to_plain(p, w, s).ok_or(RaagError::ProjectionMismatch { h: 0 })?);
        }
    }
    let end = check_derivation(p, &out)?;
    if end != phi(&pi_h(words.last().unwrap(), 1)) || out.count(StepKind::Inf) != 0 {
        return Err(RaagError::EndMismatch);
    }
    let stats = EliminationStats { input_steps: d.len(), output_steps: out.len(), max_index: top };
    Ok((out, stats))
}

/// Solves the word problem of a right-angled presentation by repeatedly moving
/// the closest cancellable pair together. Returns a `{0,1,2}` derivation to ε
/// when `w` represents 1.
pub fn raag_word_problem(p: &Presentation, w: &Word) -> Result<Option<Derivation>, RaagError> {
    require_right_angled(p)?;
    let mut d = Derivation::new(w.clone());
    let mut cur = w.clone();
    while !cur.is_empty() {
        let letters = cur.letters();
        let mut best: Option<(usize, usize)> = None;
        'outer: for gap in 1..letters.len() {
            for i in 0..letters.len() - gap {
                let j = i + gap;
                if letters[i].cancels(letters[j]) && letters[i + 1..j].iter().all(|l| p.commute(letters[i].gen, l.gen)) {
                    best = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = best else { return Ok(None) };
        for k in i..j - 1 {
            let s = plain_swap(p, &cur, k).expect("letters between commute");
            cur = apply_step(p, &cur, &s).expect("swap applies");
            d.push(s);
        }
        let order = if cur.letters()[j - 1].is_positive() { PairOrder::PosNeg } else { PairOrder::NegPos };
        let s = Step::Remove { pos: j - 1, order };
        cur = apply_step(p, &cur, &s).expect("adjacent pair cancels");
        d.push(s);
    }
    Ok(Some(d))
}

/// A `{0,1,∞}` derivation from `w` to ε: the word-problem derivation with each
/// type 2 step replaced by its simulation.
pub fn generate_01inf_derivation(p: &Presentation, w: &Word) -> Result<Derivation, RaagError> {
    let d = raag_word_problem(p, w)?.ok_or(RaagError::NotTrivial)?;
    let words = d.words(p)?;
    let mut out = Derivation::new(w.clone());
    for (k, s) in d.steps.iter().enumerate() {
        match s.kind() {
            StepKind::TwoR | StepKind::TwoL => {
                let sim = simulate_type2(p, &words[k], s).expect("type 2 step from a valid derivation");
                out.extend(sim.steps);
            }
            _ => out.push(*s),
        }
    }
    Ok(out)
}

/// A random right-angled presentation on `rank` generators where each pair
/// commutes with probability `density`.
pub fn random_right_angled(rank: usize, density: f64, rng: &mut impl Rng) -> Presentation {
    let names: Vec<String> = (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut rels = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            if rng.gen_bool(density) {
                let (s, t) = (Gen(i as u32), Gen(j as u32));
                rels.push(Relation::new(PositiveWord::from_gens(vec![s, t]), PositiveWord::from_gens(vec![t, s])));
            }
        }
    }
    Presentation::new(names, rels).expect("generated presentation is valid")
}

/// A random word representing 1, of length at most `max_len`: trivial pairs are
/// inserted at random places and commuting neighbours shuffled.
pub fn random_trivial_word(p: &Presentation, max_len: usize, rng: &mut impl Rng) -> Word {
    let gens: Vec<Gen> = p.generators().collect();
    let target = 2 * rng.gen_range(1..=max_len / 2).max(1);
    let mut w = Word::empty();
    while w.len() + 2 <= target {
        let g = *gens.choose(rng).unwrap();
        let l = if rng.gen_bool(0.5) { Letter::pos(g) } else { Letter::neg(g) };
        let pos = rng.gen_range(0..=w.len());
        w = w.splice(pos, 0, &[l, l.inverse()]);
        for _ in 0..w.len() {
            let k = rng.gen_range(0..w.len().max(2) - 1);
            if let Some(s) = plain_swap(p, &w, k) {
                w = apply_step(p, &w, &s).expect("swap applies");
            }
        }
    }
    w
}

/// JSON form of an augmented step: the plain schema plus `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugStepJson {
    pub kind: String,
    pub pos: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u32>,
}

pub fn aug_step_to_json(p: &Presentation, s: &AugStep) -> AugStepJson {
    let mut j = AugStepJson { kind: String::new(), pos: s.pos(), rel: None, letter: None, sign: None, index: None };
    match *s {
        AugStep::Remove { .. } => j.kind = "0".into(),
        AugStep::One { rel, .. } => {
            j.kind = "1".into();
            j.rel = Some(rel);
        }
        AugStep::Two { rel, .. } => {
            j.kind = "2".into();
            j.rel = Some(rel);
        }
        AugStep::Insert { letter, index, .. } => {
            j.kind = "inf".into();
            j.letter = Some(p.name(letter.gen).to_string());
            j.sign = Some(letter.sign.as_i8());
            j.index = Some(index);
        }
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Presentation {
        Presentation::parse("gens: a b c\nrel: ab = ba\nrel: bc = cb\nrel: ac = ca\n").unwrap()
    }

    #[test]
    fn phi_and_projections() {
        let p = abc();
        let w = AugWord::parse(&p, "a[1] B c[2] A[1] c").unwrap();
        assert_eq!(p.render(&phi(&w)), "aBcAc");
        assert_eq!(pi_h(&w, 2).render(&p), "a[1] B A[1] c");
        assert_eq!(pi_h(&w, 1).render(&p), "B c");
        assert_eq!(pi_h(&w, 5), w);
    }

    #[test]
    fn regularity() {
        let ab = Presentation::parse("gens: a b\nrel: ab = ba\n").unwrap();
        assert!(is_regular(&ab, &AugWord::parse(&ab, "a[1] b A[1]").unwrap()).is_ok());
        let ac = Presentation::parse("gens: a c\n").unwrap();
        assert!(matches!(
            is_regular(&ac, &AugWord::parse(&ac, "a[1] c A[1]").unwrap()),
            Err(Irregularity::NotCommutative { index: 1, .. })
        ));
        assert!(is_regular(&ac, &AugWord::parse(&ac, "a c A").unwrap()).is_ok());
    }

    #[test]
    fn removal_relabels_to_minimum() {
        let p = abc();
        let w = AugWord::parse(&p, "a[2] A[1] b a[1] A[2]").unwrap();
        let w2 = apply_aug_step(&p, &w, &AugStep::Remove { pos: 0 }).unwrap();
        assert_eq!(w2.render(&p), "b a[1] A[1]");
        let bad = AugWord::parse(&p, "a[1] b A[1] B[2]").unwrap();
        assert!(apply_aug_step(&p, &bad, &AugStep::Remove { pos: 0 }).is_err());
    }

    #[test]
    fn fresh_insertions() {
        let p = abc();
        let w = AugWord::parse(&p, "a[1] A[1]").unwrap();
        let ins = AugStep::Insert { pos: 0, letter: Letter::pos(Gen(1)), index: 1 };
        assert_eq!(apply_aug_step(&p, &w, &ins), Err(AugError::NotFresh { index: 1, max: 1 }));
    }

    #[test]
    fn word_problem_and_generation() {
        let p = abc();
        let w = p.parse_word("aBcAbC").unwrap();
        let d = raag_word_problem(&p, &w).unwrap().unwrap();
        assert!(check_derivation(&p, &d).unwrap().is_empty());
        assert!(raag_word_problem(&p, &p.parse_word("ab").unwrap()).unwrap().is_none());
        assert!(raag_word_problem(&p, &Word::empty()).unwrap().unwrap().is_empty());
        let g = generate_01inf_derivation(&p, &w).unwrap();
        assert!(g.uses_only(&[StepKind::Zero, StepKind::One, StepKind::Inf]));
        assert!(check_derivation(&p, &g).unwrap().is_empty());
        let e = eliminate_infinity(&p, &g).unwrap();
        assert_eq!(e.count(StepKind::Inf), 0);
        assert!(check_derivation(&p, &e).unwrap().is_empty());
    }
}
