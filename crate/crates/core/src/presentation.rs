//! Positive presentations `(S, R)`, Coxeter matrices, the text file format and
//! word parsing/rendering.
//!
//! File format (UTF-8, `#` starts a comment):
//!
//! ```text
//! gens: a b c
//! rel: aba = bab
//! coxeter:
//! a c 2
//! b c inf
//! spherical: yes
//! ```
//!
//! Words use lowercase for a generator and uppercase for its inverse when every
//! generator name is a single letter; otherwise they are whitespace-separated
//! tokens `s` / `s^-1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::word::{Gen, Letter, PositiveWord, Sign, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relation {0} has an empty side")]
    EmptyRelationSide(usize),
    #[error("generator list is empty")]
    NoGenerators,
    #[error("invalid generator name `{0}`")]
    BadGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relation {0} uses a generator outside the presentation")]
    ForeignGenerator(usize),
    #[error("invalid Coxeter entry for ({0}, {1}): {2}")]
    InvalidCoxeterEntry(String, String, String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] ParseError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("expected a positive word, found `{0}`")]
    NotPositive(String),
}

/// A positive relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: PositiveWord,
    pub rhs: PositiveWord,
}

impl Relation {
    pub fn new(lhs: PositiveWord, rhs: PositiveWord) -> Relation {
        Relation { lhs, rhs }
    }

    /// The relation read in the given orientation: `(v, v')` with `v = v'`.
    pub fn sides(&self, orient: Orientation) -> (&PositiveWord, &PositiveWord) {
        match orient {
            Orientation::Fwd => (&self.lhs, &self.rhs),
            Orientation::Bwd => (&self.rhs, &self.lhs),
        }
    }

    /// If this is a commutation `st = ts` with `s ≠ t`, returns `(s, t)`.
    pub fn commutation(&self) -> Option<(Gen, Gen)> {
        match (self.lhs.gens(), self.rhs.gens()) {
            (&[s, t], &[t2, s2]) if s != t && s == s2 && t == t2 => Some((s, t)),
            _ => None,
        }
    }
}

/// Direction in which a relation is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// `lhs = rhs`
    Fwd,
    /// `rhs = lhs`
    Bwd,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Fwd, Orientation::Bwd];
}

/// Computed flags of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub right_angled: bool,
    pub length_preserving: bool,
    pub declared_spherical: bool,
    pub relation_count: usize,
    pub max_length_gap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relations: Vec<Relation>,
    declared_spherical: bool,
    compact: bool,
    right_angled: bool,
    length_preserving: bool,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Presentation {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relations: Vec<Relation>,
    ) -> Result<Presentation, PresentationError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(PresentationError::BadGeneratorName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PresentationError::DuplicateGenerator(n.clone()));
            }
        }
        let rank = names.len();
        for (i, r) in relations.iter().enumerate() {
            if r.lhs.is_empty() || r.rhs.is_empty() {
                return Err(PresentationError::EmptyRelationSide(i));
            }
            if r.lhs.gens().iter().chain(r.rhs.gens()).any(|g| g.index() >= rank) {
                return Err(PresentationError::ForeignGenerator(i));
            }
        }
        let compact = names.iter().all(|n| n.len() == 1);
        let right_angled = relations.iter().all(|r| r.commutation().is_some());
        let length_preserving = relations.iter().all(|r| r.lhs.len() == r.rhs.len());
        Ok(Presentation {
            names,
            relations,
            declared_spherical: false,
            compact,
            right_angled,
            length_preserving,
        })
    }

    /// Marks the presentation as spherical (Coxeter group finite). This is an
    /// assertion by the caller; nothing is checked.
    pub fn declare_spherical(mut self, spherical: bool) -> Presentation {
        self.declared_spherical = spherical;
        self
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.names.len() as u32).map(Gen)
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gen(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| Gen(i as u32))
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> Option<&Relation> {
        self.relations.get(i)
    }

    pub fn is_right_angled(&self) -> bool {
        self.right_angled
    }

    pub fn is_length_preserving(&self) -> bool {
        self.length_preserving
    }

    pub fn is_declared_spherical(&self) -> bool {
        self.declared_spherical
    }

    /// Index of a relation `st = ts` (in either orientation), if any.
    pub fn commutation_index(&self, s: Gen, t: Gen) -> Option<usize> {
        self.relations.iter().position(|r| match r.commutation() {
            Some((a, b)) => (a == s && b == t) || (a == t && b == s),
            None => false,
        })
    }

    pub fn commute(&self, s: Gen, t: Gen) -> bool {
        self.commutation_index(s, t).is_some()
    }

    pub fn classify(&self) -> Classification {
        Classification {
            right_angled: self.right_angled,
            length_preserving: self.length_preserving,
            declared_spherical: self.declared_spherical,
            relation_count: self.relations.len(),
            max_length_gap: self
                .relations
                .iter()
                .map(|r| r.lhs.len().abs_diff(r.rhs.len()))
                .max()
                .unwrap_or(0),
        }
    }

    // ---- words --------------------------------------------------------

    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let tokenized = !self.compact || text.contains(char::is_whitespace) || text.contains('^');
        if tokenized {
            text.split_whitespace().map(|tok| self.parse_token(tok)).collect()
        } else {
            text.chars()
                .map(|c| {
                    let lower = c.to_ascii_lowercase().to_string();
                    let g = self
                        .gen(&lower)
                        .ok_or_else(|| ParseError::UnknownGenerator(c.to_string()))?;
                    Ok(if c.is_ascii_uppercase() { Letter::neg(g) } else { Letter::pos(g) })
                })
                .collect()
        }
    }

    fn parse_token(&self, tok: &str) -> Result<Letter, ParseError> {
        let (base, sign) = match tok.split_once('^') {
            Some((b, "-1")) => (b, Sign::Neg),
            Some((b, "1")) | Some((b, "+1")) => (b, Sign::Pos),
            Some(_) => return Err(ParseError::MalformedToken(tok.to_string())),
            None => (tok, Sign::Pos),
        };
        if base.is_empty() {
            return Err(ParseError::MalformedToken(tok.to_string()));
        }
        if let Some(g) = self.gen(base) {
            return Ok(Letter { gen: g, sign });
        }
        // uppercase single letter in a compact alphabet
        if self.compact && base.len() == 1 && base.chars().all(|c| c.is_ascii_uppercase()) {
            if let Some(g) = self.gen(&base.to_ascii_lowercase()) {
                return Ok(Letter { gen: g, sign: sign.flip() });
            }
        }
        if valid_name(base) || base.chars().all(|c| c.is_ascii_alphanumeric()) {
            Err(ParseError::UnknownGenerator(base.to_string()))
        } else {
            Err(ParseError::MalformedToken(tok.to_string()))
        }
    }

    pub fn parse_positive(&self, text: &str) -> Result<PositiveWord, ParseError> {
        self.parse_word(text)?
            .to_positive()
            .ok_or_else(|| ParseError::NotPositive(text.to_string()))
    }

    /// Canonical rendering. The empty word renders as the empty string.
    pub fn render(&self, w: &Word) -> String {
        let mut out = String::new();
        for (i, l) in w.letters().iter().enumerate() {
            self.render_letter_into(&mut out, *l, i > 0);
        }
        out
    }

    fn render_letter_into(&self, out: &mut String, l: Letter, sep: bool) {
        let name = self.name(l.gen);
        if self.compact {
            match l.sign {
                Sign::Pos => out.push_str(name),
                Sign::Neg => out.push_str(&name.to_ascii_uppercase()),
            }
        } else {
            if sep {
                out.push(' ');
            }
            out.push_str(name);
            if l.sign == Sign::Neg {
                out.push_str("^-1");
            }
        }
    }

    pub fn render_letter(&self, l: Letter) -> String {
        let mut s = String::new();
        self.render_letter_into(&mut s, l, false);
        s
    }

    pub fn render_positive(&self, w: &PositiveWord) -> String {
        self.render(&w.to_word())
    }

    /// Like [`render`](Self::render) but shows ε for the empty word.
    pub fn display(&self, w: &Word) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            self.render(w)
        }
    }

    // ---- file format ----------------------------------------------------

    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let mut names: Option<Vec<String>> = None;
        let mut rel_lines: Vec<(usize, String)> = Vec::new();
        let mut cox_lines: Vec<(usize, String)> = Vec::new();
        let mut spherical = false;
        let mut in_coxeter = false;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: &str| PresentationError::Syntax { line: line_no, msg: msg.to_string() };
            if let Some((key, value)) = line.split_once(':') {
                in_coxeter = false;
                let value = value.trim();
                match key.trim() {
                    "gens" => {
                        if names.is_some() {
                            return Err(syntax("duplicate `gens:` line"));
                        }
                        names = Some(value.split_whitespace().map(str::to_string).collect());
                    }
                    "rel" => rel_lines.push((line_no, value.to_string())),
                    "coxeter" => {
                        if !value.is_empty() {
                            return Err(syntax("`coxeter:` takes no value; list triples below it"));
                        }
                        in_coxeter = true;
                    }
                    "spherical" => {
                        spherical = match value {
                            "yes" | "true" => true,
                            "no" | "false" => false,
                            _ => return Err(syntax("expected yes/no")),
                        }
                    }
                    other => return Err(syntax(&format!("unknown key `{other}`"))),
                }
            } else if in_coxeter {
                cox_lines.push((line_no, line.to_string()));
            } else {
                return Err(syntax("expected `key: value`"));
            }
        }

        let names = names.ok_or(PresentationError::Syntax {
            line: 0,
            msg: "missing `gens:` line".to_string(),
        })?;
        // Parse words against a relation-free presentation on the same alphabet.
        let alphabet = Presentation::new(names.clone(), Vec::new())?;
        let mut relations = Vec::new();
        for (line, text) in &rel_lines {
            let (l, r) = text.split_once('=').ok_or(PresentationError::Syntax {
                line: *line,
                msg: "relation must be `lhs = rhs`".to_string(),
            })?;
            let lhs = alphabet.parse_positive(l)?;
            let rhs = alphabet.parse_positive(r)?;
            relations.push(Relation::new(lhs, rhs));
        }
        if !cox_lines.is_empty() {
            let mut m = CoxeterMatrix::new(names.clone());
            for (line, text) in &cox_lines {
                let parts: Vec<&str> = text.split_whitespace().collect();
                let [s, t, v] = parts[..] else {
                    return Err(PresentationError::Syntax {
                        line: *line,
                        msg: "Coxeter entry must be `s t m`".to_string(),
                    });
                };
                let entry = match v {
                    "inf" | "∞" => CoxeterEntry::Infinite,
                    _ => CoxeterEntry::Finite(v.parse().map_err(|_| {
                        PresentationError::InvalidCoxeterEntry(s.into(), t.into(), v.into())
                    })?),
                };
                m.set(s, t, entry)?;
            }
            relations.extend(m.relations()?);
        }
        Ok(Presentation::new(names, relations)?.declare_spherical(spherical))
    }

    /// Serializes back to the file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.names.join(" "));
        for r in &self.relations {
            let _ = writeln!(s, "rel: {} = {}", self.render_positive(&r.lhs), self.render_positive(&r.rhs));
        }
        if self.declared_spherical {
            s.push_str("spherical: yes\n");
        }
        s
    }
}

/// Classification report for a presentation.
pub fn validate(p: &Presentation) -> Classification {
    p.classify()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterEntry {
    Finite(u32),
    Infinite,
}

/// Symmetric Coxeter matrix. Pairs never set are treated as `∞`.
#[derive(Clone, Debug)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    entries: BTreeMap<(usize, usize), CoxeterEntry>,
}

impl CoxeterMatrix {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> CoxeterMatrix {
        CoxeterMatrix { names: names.into_iter().map(Into::into).collect(), entries: BTreeMap::new() }
    }

    pub fn set(&mut self, s: &str, t: &str, m: CoxeterEntry) -> Result<(), PresentationError> {
        let bad = |why: &str| PresentationError::InvalidCoxeterEntry(s.into(), t.into(), why.into());
        let i = self.names.iter().position(|n| n == s).ok_or_else(|| bad("unknown generator"))?;
        let j = self.names.iter().position(|n| n == t).ok_or_else(|| bad("unknown generator"))?;
        if i == j {
            return Err(bad("diagonal entry"));
        }
        if let CoxeterEntry::Finite(v) = m {
            if v < 2 {
                return Err(bad("entries must be >= 2 or inf"));
            }
        }
        let key = (i.min(j), i.max(j));
        if let Some(prev) = self.entries.get(&key) {
            if *prev != m {
                return Err(bad("conflicting symmetric entries"));
            }
        }
        self.entries.insert(key, m);
        Ok(())
    }

    pub fn get(&self, s: usize, t: usize) -> CoxeterEntry {
        self.entries
            .get(&(s.min(t), s.max(t)))
            .copied()
            .unwrap_or(CoxeterEntry::Infinite)
    }

    /// One relation `sts… = tst…` (length `m`) per pair with finite `m`.
    pub fn relations(&self) -> Result<Vec<Relation>, PresentationError> {
        let mut out = Vec::new();
        for (&(i, j), &e) in &self.entries {
            if let CoxeterEntry::Finite(m) = e {
                let (s, t) = (Gen(i as u32), Gen(j as u32));
                let alt = |a: Gen, b: Gen| -> PositiveWord {
                    (0..m).map(|k| if k % 2 == 0 { a } else { b }).collect()
                };
                out.push(Relation::new(alt(s, t), alt(t, s)));
            }
        }
        Ok(out)
    }
}

/// The Artin–Tits presentation attached to a Coxeter matrix.
pub fn artin_presentation(m: &CoxeterMatrix) -> Result<Presentation, PresentationError> {
    Presentation::new(m.names.clone(), m.relations()?)
}
