//! Exhaustive arithmetic in the positive monoid `⟨S | R⟩⁺`: equivalence
//! classes, divisors, right lcms, `S₀`-minimality and coset heads.
//!
//! Classes are computed by breadth-first closure under type 1 rewrites, so
//! everything here is meant for short words over length-preserving
//! presentations. A [`Monoid`] memoizes classes; lookups take a read lock and
//! inserts a write lock, and results do not depend on the cache.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::presentation::{Orientation, Presentation};
use crate::reversing::{left_fraction, right_reverse, ReverseError};
use crate::rewrite::{check_derivation, Derivation, Step};
use crate::word::{Gen, Letter, PositiveWord, Word};

pub const DEFAULT_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("equivalence class exceeds the cap of {0} words")]
    CapExceeded(usize),
    #[error("the presentation is not length-preserving")]
    NotLengthPreserving,
    #[error("the presentation is not declared spherical")]
    NotSpherical,
    #[error(transparent)]
    Reverse(#[from] ReverseError),
    #[error("the words are not positively equivalent")]
    NotEquivalent,
    #[error("coset head is not minimal: multiplying by `{h}` lowers the fraction sizes")]
    MinimalityViolation { h: String },
}

/// An element of the positive monoid, stored as the lexicographically least
/// member of its class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    pub canonical: PositiveWord,
}

impl MonoidElement {
    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }
}

pub struct Monoid {
    p: Presentation,
    cap: usize,
    cache: RwLock<HashMap<PositiveWord, Arc<Vec<PositiveWord>>>>,
}

/// One positive rewrite `v → v′` at a position, as a type 1 step.
fn rewrites(p: &Presentation, w: &PositiveWord) -> Vec<(Step, PositiveWord)> {
    let gens = w.gens();
    let mut out = Vec::new();
    for pos in 0..gens.len() {
        for (rel, r) in p.relations().iter().enumerate() {
            for orient in Orientation::BOTH {
                let (v, v2) = r.sides(orient);
                if gens[pos..].starts_with(v.gens()) {
                    let mut next = gens[..pos].to_vec();
                    next.extend_from_slice(v2.gens());
                    next.extend_from_slice(&gens[pos + v.len()..]);
                    out.push((Step::Relation { pos, rel, orient, inverse: false }, PositiveWord::from_gens(next)));
                }
            }
        }
    }
    out
}

impl Monoid {
    pub fn new(p: Presentation) -> Monoid {
        Monoid::with_cap(p, DEFAULT_CAP)
    }

    pub fn with_cap(p: Presentation, cap: usize) -> Monoid {
        Monoid { p, cap, cache: RwLock::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    /// The `≡⁺`-class of `w`, sorted.
    pub fn equiv_class(&self, w: &PositiveWord) -> Result<Arc<Vec<PositiveWord>>, MonoidError> {
        if let Some(c) = self.cache.read().unwrap().get(w) {
            return Ok(Arc::clone(c));
        }
        let mut seen = BTreeSet::new();
        seen.insert(w.clone());
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(cur) = queue.pop_front() {
            for (_, next) in rewrites(&self.p, &cur) {
                if seen.insert(next.clone()) {
                    if seen.len() > self.cap {
                        return Err(MonoidError::CapExceeded(self.cap));
                    }
                    queue.push_back(next);
                }
            }
        }
        let class = Arc::new(seen.into_iter().collect::<Vec<_>>());
        let mut cache = self.cache.write().unwrap();
        for member in class.iter() {
            cache.insert(member.clone(), Arc::clone(&class));
        }
        Ok(class)
    }

    /// Every class currently memoized, each listed once, in sorted order.
    pub fn cached_classes(&self) -> Vec<Vec<PositiveWord>> {
        let cache = self.cache.read().unwrap();
        let mut out: Vec<Vec<PositiveWord>> = Vec::new();
        for (k, c) in cache.iter() {
            if c.first() == Some(k) {
                out.push(c.as_ref().clone());
            }
        }
        out.sort();
        out
    }

    /// Seeds the memo with classes computed elsewhere. Each class must be
    /// closed under the rewrites of this presentation, or it is skipped.
    pub fn seed_classes(&self, classes: impl IntoIterator<Item = Vec<PositiveWord>>) -> usize {
        let mut accepted = 0;
        for mut class in classes {
            class.sort();
            class.dedup();
            let closed = class.len() <= self.cap
                && class.iter().all(|w| rewrites(&self.p, w).iter().all(|(_, n)| class.binary_search(n).is_ok()));
            if class.is_empty() || !closed {
                continue;
            }
            let class = Arc::new(class);
            let mut cache = self.cache.write().unwrap();
            for member in class.iter() {
                cache.insert(member.clone(), Arc::clone(&class));
            }
            accepted += 1;
        }
        accepted
    }

    /// Type 1 steps turning `from` into `to`, shortest first found.
    pub fn class_path(&self, from: &PositiveWord, to: &PositiveWord) -> Result<Vec<Step>, MonoidError> {
        let mut parent: HashMap<PositiveWord, Option<(PositiveWord, Step)>> = HashMap::new();
        parent.insert(from.clone(), None);
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(cur) = queue.pop_front() {
            if cur == *to {
                let mut steps = Vec::new();
                let mut node = cur;
                while let Some(Some((prev, step))) = parent.get(&node).cloned() {
                    steps.push(step);
                    node = prev;
                }
                steps.reverse();
                return Ok(steps);
            }
            for (step, next) in rewrites(&self.p, &cur) {
                if !parent.contains_key(&next) {
                    if parent.len() >= self.cap {
                        return Err(MonoidError::CapExceeded(self.cap));
                    }
                    parent.insert(next.clone(), Some((cur.clone(), step)));
                    queue.push_back(next);
                }
            }
        }
        Err(MonoidError::NotEquivalent)
    }

    pub fn canonical(&self, w: &PositiveWord) -> Result<PositiveWord, MonoidError> {
        Ok(self.equiv_class(w)?[0].clone())
    }

    pub fn element(&self, w: &PositiveWord) -> Result<MonoidElement, MonoidError> {
        Ok(MonoidElement { canonical: self.canonical(w)? })
    }

    pub fn pos_equal(&self, u: &PositiveWord, v: &PositiveWord) -> Result<bool, MonoidError> {
        if self.p.is_length_preserving() && u.len() != v.len() {
            return Ok(false);
        }
        Ok(self.equiv_class(u)?.binary_search(v).is_ok())
    }

    fn divisors(&self, g: &PositiveWord, left: bool) -> Result<Vec<PositiveWord>, MonoidError> {
        let mut out = BTreeSet::new();
        for member in self.equiv_class(g)?.iter() {
            for k in 0..=member.len() {
                let piece = if left { member.prefix(k) } else { member.suffix(k) };
                out.insert(self.canonical(&piece)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Canonical forms of all left divisors of `g`, including ε and `g`.
    pub fn left_divisors(&self, g: &PositiveWord) -> Result<Vec<PositiveWord>, MonoidError> {
        self.divisors(g, true)
    }

    pub fn right_divisors(&self, g: &PositiveWord) -> Result<Vec<PositiveWord>, MonoidError> {
        self.divisors(g, false)
    }

    pub fn left_divides(&self, d: &PositiveWord, g: &PositiveWord) -> Result<bool, MonoidError> {
        for member in self.equiv_class(g)?.iter() {
            if member.len() >= d.len() && self.pos_equal(&member.prefix(d.len()), d)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn right_divides(&self, d: &PositiveWord, g: &PositiveWord) -> Result<bool, MonoidError> {
        for member in self.equiv_class(g)?.iter() {
            if member.len() >= d.len() && self.pos_equal(&member.suffix(d.len()), d)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Least common right-multiple of `u` and `v`, read off from right reversing `u⁻¹v`.
    pub fn right_lcm(&self, u: &PositiveWord, v: &PositiveWord, budget: usize) -> Result<PositiveWord, MonoidError> {
        let w = u.inverse_word().concat(&v.to_word());
        let r = right_reverse(&self.p, &w, budget)?;
        if !r.converged() {
            return Err(ReverseError::BudgetExhausted(r.steps()).into());
        }
        let letters = r.word().letters();
        let cut = letters.iter().position(|l| !l.is_positive()).unwrap_or(letters.len());
        let a: PositiveWord = letters[..cut].iter().map(|l| l.gen).collect();
        self.canonical(&u.concat(&a))
    }

    /// True when no generator of `s0` right-divides `g`.
    pub fn is_s0_minimal(&self, g: &PositiveWord, s0: &[Gen]) -> Result<bool, MonoidError> {
        Ok(self.equiv_class(g)?.iter().all(|m| m.last().map_or(true, |s| !s0.contains(&s))))
    }

    /// Greedily strips `s0` letters from the right: returns `(head, tail)` with
    /// `head·tail ≡⁺ g`, `tail` over `s0` and `head` `s0`-minimal.
    pub fn strip_s0(&self, g: &PositiveWord, s0: &[Gen]) -> Result<(PositiveWord, PositiveWord), MonoidError> {
        let mut head = self.canonical(g)?;
        let mut tail: Vec<Gen> = Vec::new();
        loop {
            let class = self.equiv_class(&head)?;
            let next = class.iter().find(|m| m.last().is_some_and(|s| s0.contains(&s)));
            let Some(m) = next else { break };
            tail.push(m.last().unwrap());
            head = self.canonical(&m.prefix(m.len() - 1))?;
        }
        tail.reverse();
        Ok((head, PositiveWord::from_gens(tail)))
    }

    /// Size key `(|D|, |N|)` of the left fraction `D⁻¹N` of `w`.
    pub fn left_fraction_key(&self, w: &Word, budget: usize) -> Result<(usize, usize), MonoidError> {
        let f = left_fraction(&self.p, w, budget)?;
        Ok((f.denominator.len(), f.numerator.len()))
    }

    /// Splits `w` as `v·u` with `u` a word over `s0^±` and `v` minimal in its
    /// coset `v⟨s0⟩`, with a `{0,1,2}` derivation from `w` to `v·u`.
    /// The head is checked against every `h` over `s0^±` of length at most 4.
    pub fn coset_head_spherical(&self, w: &Word, s0: &[Gen], budget: usize) -> Result<CosetHead, MonoidError> {
        if !self.p.is_declared_spherical() {
            return Err(MonoidError::NotSpherical);
        }
        if !self.p.is_length_preserving() {
            return Err(MonoidError::NotLengthPreserving);
        }
        let lf = left_fraction(&self.p, w, budget)?;
        let (d, n) = (&lf.denominator, &lf.numerator);

        struct Candidate {
            key: (usize, usize),
            member: PositiveWord,
            cut: usize,
            reversed: Derivation,
            x: PositiveWord,
            y: PositiveWord,
            head: PositiveWord,
            tail: PositiveWord,
        }
        let mut best: Option<Candidate> = None;
        for member in self.equiv_class(d)?.iter() {
            for cut in 0..=member.len() {
                // member = f · D′ with |f| = cut
                let f = member.prefix(cut);
                let d_rest = member.suffix(member.len() - cut);
                let r = right_reverse(&self.p, &f.inverse_word().concat(&n.to_word()), budget)?;
                if !r.converged() {
                    return Err(ReverseError::BudgetExhausted(r.steps()).into());
                }
                let letters = r.word().letters();
                let k = letters.iter().position(|l| !l.is_positive()).unwrap_or(letters.len());
                let x: PositiveWord = letters[..k].iter().map(|l| l.gen).collect();
                let y: PositiveWord = letters[k..].iter().rev().map(|l| l.gen).collect();
                if !y.gens().iter().all(|g| s0.contains(g)) {
                    continue;
                }
                let (head, tail) = self.strip_s0(&x, s0)?;
                let v = d_rest.inverse_word().concat(&head.to_word());
                let key = self.left_fraction_key(&v, budget)?;
                let better = match &best {
                    None => true,
                    Some(b) => (key, d_rest.len(), &head) < (b.key, b.member.len() - b.cut, &b.head),
                };
                if better {
                    best = Some(Candidate { key, member: member.clone(), cut, reversed: r.trace, x, y, head, tail });
                }
            }
        }
        let c = best.expect("the trivial cut always qualifies");

        let mut trace = lf.trace.clone();
        let dlen = d.len();
        for step in self.class_path(d, &c.member)? {
            if let Step::Relation { pos, rel, orient, .. } = step {
                let k = self.p.relations()[rel].sides(orient).0.len();
                trace.push(Step::Relation { pos: dlen - pos - k, rel, orient, inverse: true });
            }
        }
        let offset = c.member.len() - c.cut;
        trace.extend(c.reversed.steps.iter().map(|s| s.at(s.pos() + offset)));
        let target = c.head.concat(&c.tail);
        trace.extend(self.class_path(&c.x, &target)?.into_iter().map(|s| s.at(s.pos() + offset)));

        let v = c.member.suffix(offset).inverse_word().concat(&c.head.to_word());
        let u = c.tail.to_word().concat(&c.y.inverse_word());
        debug_assert_eq!(check_derivation(&self.p, &trace).ok(), Some(v.concat(&u)));
        self.validate_coset_minimality(&v, s0, 4, budget)?;
        Ok(CosetHead { v, u, key: c.key, trace })
    }

    /// Checks that no `h` over `s0^±` with `|h| ≤ max_len` gives `v·h` a
    /// lexicographically smaller left-fraction size key than `v`.
    pub fn validate_coset_minimality(&self, v: &Word, s0: &[Gen], max_len: usize, budget: usize) -> Result<(), MonoidError> {
        let base = self.left_fraction_key(v, budget)?;
        for h in reduced_words(s0, max_len) {
            let key = self.left_fraction_key(&v.concat(&h), budget)?;
            if key < base {
                return Err(MonoidError::MinimalityViolation { h: self.p.render(&h) });
            }
        }
        Ok(())
    }
}

/// All nonempty freely reduced words over `gens^±` of length at most `max_len`.
pub fn reduced_words(gens: &[Gen], max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = gens.iter().flat_map(|&g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters().last().is_some_and(|last| last.cancels(l)) {
                    continue;
                }
                next.push(w.concat(&Word::from_letters(vec![l])));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetHead {
    pub v: Word,
    pub u: Word,
    /// `(|D|, |N|)` for the left fraction of `v`.
    pub key: (usize, usize),
    pub trace: Derivation,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Monoid {
        Monoid::new(Presentation::parse("gens: a b\nrel: aba = bab\nspherical: yes\n").unwrap())
    }

    fn pw(m: &Monoid, s: &str) -> PositiveWord {
        m.presentation().parse_positive(s).unwrap()
    }

    fn show(m: &Monoid, ws: &[PositiveWord]) -> Vec<String> {
        ws.iter().map(|w| m.presentation().render_positive(w)).collect()
    }

    #[test]
    fn classes() {
        let m = a2();
        assert_eq!(show(&m, &m.equiv_class(&pw(&m, "aba")).unwrap()), ["aba", "bab"]);
        assert!(m.pos_equal(&pw(&m, "aba"), &pw(&m, "bab")).unwrap());
        assert!(!m.pos_equal(&pw(&m, "ab"), &pw(&m, "ba")).unwrap());
        assert!(m.pos_equal(&PositiveWord::empty(), &PositiveWord::empty()).unwrap());
        let c = Monoid::new(Presentation::parse("gens: a b c\nrel: ab = ba\nrel: bc = cb\nrel: ac = ca\n").unwrap());
        assert_eq!(c.equiv_class(&pw(&c, "abc")).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let c = Monoid::with_cap(Presentation::parse("gens: a b c\nrel: ab = ba\nrel: bc = cb\nrel: ac = ca\n").unwrap(), 3);
        assert_eq!(c.equiv_class(&pw(&c, "abc")).unwrap_err(), MonoidError::CapExceeded(3));
    }

    #[test]
    fn divisors_and_lcm() {
        let m = a2();
        assert_eq!(m.left_divisors(&pw(&m, "aba")).unwrap().len(), 6);
        assert_eq!(m.left_divisors(&pw(&m, "a")).unwrap().len(), 2);
        assert!(m.right_divides(&pw(&m, "b"), &pw(&m, "ab")).unwrap());
        assert!(!m.right_divides(&pw(&m, "b"), &pw(&m, "ba")).unwrap());
        assert!(m.right_divides(&PositiveWord::empty(), &pw(&m, "ba")).unwrap());
        assert_eq!(m.presentation().render_positive(&m.right_lcm(&pw(&m, "a"), &pw(&m, "b"), 100).unwrap()), "aba");
        assert_eq!(m.presentation().render_positive(&m.right_lcm(&pw(&m, "a"), &pw(&m, "a"), 100).unwrap()), "a");
    }

    #[test]
    fn class_path_replays() {
        let m = a2();
        let from = pw(&m, "abab");
        for to in m.equiv_class(&from).unwrap().iter() {
            let d = Derivation { start: from.to_word(), steps: m.class_path(&from, to).unwrap() };
            assert_eq!(check_derivation(m.presentation(), &d).unwrap(), to.to_word());
        }
    }

    #[test]
    fn minimality_and_strip() {
        let m = a2();
        let b = [Gen(1)];
        assert!(!m.is_s0_minimal(&pw(&m, "ab"), &b).unwrap());
        assert!(m.is_s0_minimal(&pw(&m, "ba"), &b).unwrap());
        assert!(m.is_s0_minimal(&pw(&m, "ab"), &[]).unwrap());
        let r = |g: &str| {
            let (h, t) = m.strip_s0(&pw(&m, g), &b).unwrap();
            (m.presentation().render_positive(&h), m.presentation().render_positive(&t))
        };
        assert_eq!(r("ab"), ("a".into(), "b".into()));
        assert_eq!(r("b"), ("".into(), "b".into()));
        assert_eq!(r("ba"), ("ba".into(), "".into()));
    }

    #[test]
    fn coset_heads() {
        let m = a2();
        let p = m.presentation();
        let b = [Gen(1)];
        for (w, v, u) in [("ab", "a", "b"), ("b", "", "b"), ("ba", "ba", ""), ("B", "", "B")] {
            let h = m.coset_head_spherical(&p.parse_word(w).unwrap(), &b, 1000).unwrap();
            assert_eq!((p.render(&h.v), p.render(&h.u)), (v.to_string(), u.to_string()), "{w}");
            assert_eq!(check_derivation(p, &h.trace).unwrap(), h.v.concat(&h.u));
        }
    }
}
