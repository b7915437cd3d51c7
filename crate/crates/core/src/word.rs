//! Signed letters, words over `S ∪ S⁻¹`, and positive words over `S`.
//!
//! Letters carry a [`Gen`] index into the generator list of a
//! [`Presentation`](crate::Presentation); rendering and parsing live there.

use std::fmt;
use std::ops::Range;

/// Index of a generator in its presentation's declared order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(pub u32);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

/// A letter `s` or `s⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: Gen) -> Letter {
        Letter { gen, sign: Sign::Pos }
    }

    pub fn neg(gen: Gen) -> Letter {
        Letter { gen, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign.flip() }
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Pos
    }

    /// True when `self · other` is a trivial pair `s s⁻¹` or `s⁻¹ s`.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A word of `W(S)`: a finite sequence of signed letters. The empty word is ε.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w⁻¹`: letters reversed, signs exchanged.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn factor(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Replaces `len` letters starting at `pos` by `replacement`.
    pub fn splice(&self, pos: usize, len: usize, replacement: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + replacement.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(replacement);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|l| !l.is_positive())
    }

    pub fn to_positive(&self) -> Option<PositiveWord> {
        self.is_positive()
            .then(|| PositiveWord(self.0.iter().map(|l| l.gen).collect()))
    }

    /// Free reduction: cancels adjacent `s s⁻¹` / `s⁻¹ s` until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    /// Exponent sum of each generator, indexed by generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for l in &self.0 {
            sums[l.gen.index()] += l.sign.as_i8() as i64;
        }
        sums
    }
}

impl From<PositiveWord> for Word {
    fn from(p: PositiveWord) -> Word {
        Word(p.0.into_iter().map(Letter::pos).collect())
    }
}

impl From<&PositiveWord> for Word {
    fn from(p: &PositiveWord) -> Word {
        Word(p.0.iter().copied().map(Letter::pos).collect())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A word of `W⁺(S)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveWord(Vec<Gen>);

impl PositiveWord {
    pub fn empty() -> PositiveWord {
        PositiveWord(Vec::new())
    }

    pub fn from_gens(gens: Vec<Gen>) -> PositiveWord {
        PositiveWord(gens)
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Gen> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PositiveWord(v)
    }

    pub fn prefix(&self, n: usize) -> PositiveWord {
        PositiveWord(self.0[..n].to_vec())
    }

    pub fn suffix(&self, n: usize) -> PositiveWord {
        PositiveWord(self.0[self.len() - n..].to_vec())
    }

    pub fn to_word(&self) -> Word {
        Word::from(self)
    }

    /// The negative word `p⁻¹`.
    pub fn inverse_word(&self) -> Word {
        self.to_word().inverse()
    }
}

impl FromIterator<Gen> for PositiveWord {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        PositiveWord(iter.into_iter().collect())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}
