//! Finite fragments of the Cayley graph of a positive monoid, made of all left
//! divisors of an element, and tracing of signed words inside them.
//!
//! If a word is traced from a vertex of such a fragment and the set of traced
//! words is closed under special transformations of types 0, 1 and 2, then a
//! word that is not traced cannot be reached. [`closure_probe`] tests that
//! closure empirically on random walks.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::monoid::{Monoid, MonoidError};
use crate::presentation::Presentation;
use crate::rewrite::{apply_step, applicable_steps, Step, StepKind};
use crate::word::{Gen, PositiveWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("two edges labelled {label} enter the same vertex")]
    DuplicateInEdge { label: String },
    #[error("`{0}` is not a vertex of the fragment")]
    NotAVertex(String),
    #[error("the probed word is not traced from the start vertex")]
    NotTraced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyFragment {
    pub base: PositiveWord,
    /// Canonical forms, sorted.
    pub vertices: Vec<PositiveWord>,
    /// `(source, generator, target)` as vertex indices.
    pub edges: Vec<(usize, Gen, usize)>,
    index: HashMap<PositiveWord, usize>,
    out_edges: HashMap<(usize, Gen), usize>,
    in_edges: HashMap<(usize, Gen), usize>,
}

impl CayleyFragment {
    pub fn vertex(&self, canonical: &PositiveWord) -> Option<usize> {
        self.index.get(canonical).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// The fragment spanned by the left divisors of `g`.
pub fn divisor_fragment(m: &Monoid, g: &PositiveWord) -> Result<CayleyFragment, CayleyError> {
    let p = m.presentation();
    let vertices = m.left_divisors(g)?;
    let index: HashMap<PositiveWord, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut out_edges = HashMap::new();
    let mut in_edges = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        for s in p.generators() {
            let target = m.canonical(&v.concat(&PositiveWord::from_gens(vec![s])))?;
            if let Some(&j) = index.get(&target) {
                if in_edges.insert((j, s), i).is_some() {
                    return Err(CayleyError::DuplicateInEdge { label: p.name(s).to_string() });
                }
                out_edges.insert((i, s), j);
                edges.push((i, s, j));
            }
        }
    }
    Ok(CayleyFragment { base: g.clone(), vertices, edges, index, out_edges, in_edges })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trace {
    /// Vertex indices visited, one more than the word length.
    Traced(Vec<usize>),
    /// The letter at this position leaves the fragment.
    LeavesAt(usize),
}

impl Trace {
    pub fn is_traced(&self) -> bool {
        matches!(self, Trace::Traced(_))
    }
}

/// Follows `w` from vertex `start`: positive letters along edges, negative
/// letters against them.
pub fn traced_from(f: &CayleyFragment, start: usize, w: &Word) -> Result<Trace, CayleyError> {
    if start >= f.vertices.len() {
        return Err(CayleyError::NotAVertex(format!("#{start}")));
    }
    let mut path = vec![start];
    let mut cur = start;
    for (k, l) in w.letters().iter().enumerate() {
        let next = if l.is_positive() { f.out_edges.get(&(cur, l.gen)) } else { f.in_edges.get(&(cur, l.gen)) };
        match next {
            Some(&n) => {
                cur = n;
                path.push(n);
            }
            None => return Ok(Trace::LeavesAt(k)),
        }
    }
    Ok(Trace::Traced(path))
}

/// Resolves a positive word to its vertex.
pub fn vertex_of(m: &Monoid, f: &CayleyFragment, v: &PositiveWord) -> Result<usize, CayleyError> {
    let c = m.canonical(v)?;
    f.vertex(&c).ok_or_else(|| CayleyError::NotAVertex(m.presentation().render_positive(v)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureReport {
    pub walks: usize,
    pub steps: usize,
    /// Words reached by one step from a traced word that are not traced.
    pub violations: Vec<(Word, Step)>,
}

/// Random walks of `{0,1,2}` steps starting at `w`; records every successor
/// that stops being traced from `start`.
pub fn closure_probe(
    p: &Presentation,
    f: &CayleyFragment,
    start: usize,
    w: &Word,
    walks: usize,
    walk_len: usize,
    seed: u64,
) -> Result<ClosureReport, CayleyError> {
    if !traced_from(f, start, w)?.is_traced() {
        return Err(CayleyError::NotTraced);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ClosureReport::default();
    for _ in 0..walks {
        report.walks += 1;
        let mut cur = w.clone();
        for _ in 0..walk_len {
            let steps = applicable_steps(p, &cur, &StepKind::FINITE, None).expect("no insertion requested");
            let Some(step) = steps.choose(&mut rng) else { break };
            let next = apply_step(p, &cur, step).expect("enumerated step applies");
            report.steps += 1;
            if !traced_from(f, start, &next)?.is_traced() {
                report.violations.push((cur.clone(), *step));
                break;
            }
            cur = next;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCertificate {
    pub traced: Word,
    pub untraced: Word,
    pub start: usize,
    pub fragment: CayleyFragment,
    pub path: Vec<usize>,
    pub leaves_at: usize,
}

/// A certificate that `w ⇝ w′` fails, when `w` is traced from `v` in the
/// divisor fragment of `g` and `w′` is not. `None` proves nothing.
pub fn non_reachability_certificate(
    m: &Monoid,
    g: &PositiveWord,
    v: &PositiveWord,
    w: &Word,
    w2: &Word,
) -> Result<Option<TraceCertificate>, CayleyError> {
    let f = divisor_fragment(m, g)?;
    let start = vertex_of(m, &f, v)?;
    let (a, b) = (traced_from(&f, start, w)?, traced_from(&f, start, w2)?);
    Ok(match (a, b) {
        (Trace::Traced(path), Trace::LeavesAt(k)) => Some(TraceCertificate {
            traced: w.clone(),
            untraced: w2.clone(),
            start,
            fragment: f,
            path,
            leaves_at: k,
        }),
        _ => None,
    })
}

/// Graphviz description of the fragment.
pub fn to_dot(p: &Presentation, f: &CayleyFragment) -> String {
    let label = |i: usize| {
        let s = p.render_positive(&f.vertices[i]);
        if s.is_empty() { "1".to_string() } else { s }
    };
    let mut out = String::from("digraph fragment {\n  rankdir=LR;\n");
    for i in 0..f.vertices.len() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", label(i));
    }
    for &(i, s, j) in &f.edges {
        let _ = writeln!(out, "  v{i} -> v{j} [label=\"{}\"];", p.name(s));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monoid(text: &str) -> Monoid {
        Monoid::new(Presentation::parse(text).unwrap())
    }

    #[test]
    fn small_fragments() {
        let m = monoid("gens: a b\nrel: aba = bab\n");
        let p = m.presentation();
        let f = divisor_fragment(&m, &p.parse_positive("aba").unwrap()).unwrap();
        assert_eq!(f.vertex_count(), 6);
        let f = divisor_fragment(&m, &p.parse_positive("a").unwrap()).unwrap();
        assert_eq!((f.vertex_count(), f.edges.len()), (2, 1));
        assert!(traced_from(&f, 0, &Word::empty()).unwrap().is_traced());
        assert!(to_dot(p, &f).contains("v0 -> v1"));
    }

    #[test]
    fn edges_multiply_out() {
        let m = monoid("gens: a b\nrel: abab = baba\n");
        let p = m.presentation();
        let f = divisor_fragment(&m, &p.parse_positive("ababb").unwrap()).unwrap();
        for &(i, s, j) in &f.edges {
            let prod = f.vertices[i].concat(&PositiveWord::from_gens(vec![s]));
            assert!(m.pos_equal(&prod, &f.vertices[j]).unwrap());
        }
    }

    #[test]
    fn certificate_is_one_sided() {
        let m = monoid("gens: a b\nrel: aba = bab\n");
        let p = m.presentation();
        let g = p.parse_positive("aba").unwrap();
        let a = p.parse_positive("a").unwrap();
        let w = p.parse_word("Ab").unwrap();
        assert!(non_reachability_certificate(&m, &g, &a, &w, &w).unwrap().is_none());
        let far = p.parse_word("bb").unwrap();
        assert!(non_reachability_certificate(&m, &g, &a, &w, &far).unwrap().is_some());
    }
}
