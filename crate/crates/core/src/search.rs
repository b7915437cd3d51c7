//! Bounded derivation search, dead words, greedy Dehn runs and the
//! translation of Dehn transformations into special transformations.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::presentation::Presentation;
use crate::rewrite::{
    apply_step, applicable_steps, dehn_steps, Derivation, DehnStep, InsertionBound, PairOrder, Step, StepError, StepKind,
};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    BreadthFirst,
    IterativeDeepening,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_steps: usize,
    pub max_word_length: usize,
    pub max_insertions: usize,
    pub max_visited: usize,
    pub strategy: Strategy,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_steps: 12, max_word_length: 16, max_insertions: 0, max_visited: 200_000, strategy: Strategy::BreadthFirst }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub visited: usize,
    pub depth_reached: usize,
    /// True when the visited cap cut the search short.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Derivation),
    Exhausted(SearchStats),
    /// The start word admits no step and differs from the target.
    Dead,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Derivation> {
        match self {
            SearchOutcome::Found(d) => Some(d),
            _ => None,
        }
    }
}

fn successors(
    p: &Presentation,
    w: &Word,
    kinds: &[StepKind],
    limits: &SearchLimits,
    insertions_used: usize,
) -> Vec<(Step, Word)> {
    let allow_inf = kinds.contains(&StepKind::Inf) && insertions_used < limits.max_insertions;
    let finite: Vec<StepKind> = kinds.iter().copied().filter(|k| *k != StepKind::Inf).collect();
    let mut steps = applicable_steps(p, w, &finite, None).expect("no insertion kinds");
    if allow_inf {
        let bound = InsertionBound { max_len: limits.max_word_length };
        steps.extend(applicable_steps(p, w, &[StepKind::Inf], Some(bound)).expect("bounded insertions"));
    }
    steps
        .into_iter()
        .map(|s| {
            let next = apply_step(p, w, &s).expect("enumerated step applies");
            (s, next)
        })
        .filter(|(_, n)| n.len() <= limits.max_word_length)
        .collect()
}

/// Searches for a derivation from `w` to `target` using steps of `kinds`.
pub fn bounded_derivation_search(
    p: &Presentation,
    w: &Word,
    target: &Word,
    kinds: &[StepKind],
    limits: &SearchLimits,
) -> SearchOutcome {
    if w == target {
        return SearchOutcome::Found(Derivation::new(w.clone()));
    }
    let can_insert = kinds.contains(&StepKind::Inf) && limits.max_insertions > 0;
    if !can_insert && applicable_steps(p, w, &without_inf(kinds), None).expect("finite kinds").is_empty() {
        return SearchOutcome::Dead;
    }
    match limits.strategy {
        Strategy::BreadthFirst => bfs(p, w, target, kinds, limits),
        Strategy::IterativeDeepening => iddfs(p, w, target, kinds, limits),
    }
}

fn without_inf(kinds: &[StepKind]) -> Vec<StepKind> {
    kinds.iter().copied().filter(|k| *k != StepKind::Inf).collect()
}

struct Node {
    word: Word,
    insertions: usize,
    parent: Option<(usize, Step)>,
}

fn bfs(p: &Presentation, w: &Word, target: &Word, kinds: &[StepKind], limits: &SearchLimits) -> SearchOutcome {
    let mut nodes = vec![Node { word: w.clone(), insertions: 0, parent: None }];
    let mut best: HashMap<Word, usize> = HashMap::from([(w.clone(), 0)]);
    let mut layer = vec![0usize];
    let mut stats = SearchStats::default();
    for depth in 0..limits.max_steps {
        let mut next_layer = Vec::new();
        for &id in &layer {
            let (word, ins) = (nodes[id].word.clone(), nodes[id].insertions);
            for (step, next) in successors(p, &word, kinds, limits, ins) {
                let ins2 = ins + usize::from(step.kind() == StepKind::Inf);
                if best.get(&next).is_some_and(|&b| b <= ins2) {
                    continue;
                }
                if best.len() >= limits.max_visited && !best.contains_key(&next) {
                    stats.truncated = true;
                    stats.visited = best.len();
                    stats.depth_reached = depth;
                    return SearchOutcome::Exhausted(stats);
                }
                best.insert(next.clone(), ins2);
                nodes.push(Node { word: next.clone(), insertions: ins2, parent: Some((id, step)) });
                let nid = nodes.len() - 1;
                if next == *target {
                    return SearchOutcome::Found(rebuild(&nodes, nid, w));
                }
                next_layer.push(nid);
            }
        }
        stats.depth_reached = depth + 1;
        if next_layer.is_empty() {
            break;
        }
        layer = next_layer;
    }
    stats.visited = best.len();
    SearchOutcome::Exhausted(stats)
}

fn rebuild(nodes: &[Node], mut id: usize, start: &Word) -> Derivation {
    let mut steps = Vec::new();
    while let Some((parent, step)) = nodes[id].parent {
        steps.push(step);
        id = parent;
    }
    steps.reverse();
    Derivation { start: start.clone(), steps }
}

fn iddfs(p: &Presentation, w: &Word, target: &Word, kinds: &[StepKind], limits: &SearchLimits) -> SearchOutcome {
    let mut stats = SearchStats::default();
    for depth in 1..=limits.max_steps {
        let mut path = Vec::new();
        let mut on_path = HashSet::from([w.clone()]);
        let mut visited = 0usize;
        if dfs(p, w, target, kinds, limits, depth, 0, &mut path, &mut on_path, &mut visited) {
            return SearchOutcome::Found(Derivation { start: w.clone(), steps: path });
        }
        stats.visited += visited;
        stats.depth_reached = depth;
        if stats.visited >= limits.max_visited {
            stats.truncated = true;
            break;
        }
    }
    SearchOutcome::Exhausted(stats)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    p: &Presentation,
    w: &Word,
    target: &Word,
    kinds: &[StepKind],
    limits: &SearchLimits,
    depth: usize,
    insertions: usize,
    path: &mut Vec<Step>,
    on_path: &mut HashSet<Word>,
    visited: &mut usize,
) -> bool {
    if w == target {
        return true;
    }
    if depth == 0 || *visited >= limits.max_visited {
        return false;
    }
    for (step, next) in successors(p, w, kinds, limits, insertions) {
        if !on_path.insert(next.clone()) {
            continue;
        }
        *visited += 1;
        path.push(step);
        let ins = insertions + usize::from(step.kind() == StepKind::Inf);
        if dfs(p, &next, target, kinds, limits, depth - 1, ins, path, on_path, visited) {
            return true;
        }
        path.pop();
        on_path.remove(&next);
    }
    false
}

/// True when `w` is nonempty and admits no step of `kinds`.
pub fn is_dead(p: &Presentation, w: &Word, kinds: &[StepKind]) -> Result<bool, StepError> {
    if kinds.contains(&StepKind::Inf) {
        return Err(StepError::UnboundedInsertion);
    }
    Ok(!w.is_empty() && applicable_steps(p, w, kinds, None)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DehnTraceItem {
    Zero(Step),
    Dehn(DehnStep),
}

/// Type 0 steps freely reducing `w`, always cancelling the leftmost pair.
pub fn free_reduction_steps(w: &Word) -> (Vec<Step>, Word) {
    let mut cur = w.clone();
    let mut steps = Vec::new();
    while let Some(i) = cur.letters().windows(2).position(|p| p[0].cancels(p[1])) {
        let order = if cur.letters()[i].is_positive() { PairOrder::PosNeg } else { PairOrder::NegPos };
        steps.push(Step::Remove { pos: i, order });
        cur = cur.splice(i, 2, &[]);
    }
    (steps, cur)
}

/// Greedy Dehn algorithm: free-reduce, then apply the first Dehn step, until
/// neither applies.
pub fn dehn_run(p: &Presentation, w: &Word) -> (Word, Vec<DehnTraceItem>) {
    let mut cur = w.clone();
    let mut trace = Vec::new();
    loop {
        let (zeros, reduced) = free_reduction_steps(&cur);
        trace.extend(zeros.into_iter().map(DehnTraceItem::Zero));
        cur = reduced;
        let Some(step) = dehn_steps(p, &cur).into_iter().next() else { break };
        cur = step.apply(&cur).expect("enumerated Dehn step applies");
        trace.push(DehnTraceItem::Dehn(step));
    }
    (cur, trace)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DehnError {
    #[error("relation {0} has sides whose lengths differ by more than 2")]
    LengthHypothesis(usize),
    #[error("the Dehn step does not apply to the word")]
    NotApplicable,
    #[error("no special derivation found for the Dehn step at position {0}")]
    Untranslatable(usize),
}

/// Depth of the fallback search in [`dehn_to_special`].
pub const DEHN_FALLBACK_DEPTH: usize = 3;

/// A `{0,1,2}` derivation from `w` to the result of the Dehn step `ds`.
///
/// Tries, inside the factor: a single type 1 or 2 step; one such step followed
/// by free reduction; a bounded search.
pub fn dehn_to_special(p: &Presentation, w: &Word, ds: &DehnStep) -> Result<Derivation, DehnError> {
    for (i, r) in p.relations().iter().enumerate() {
        if r.lhs.len().abs_diff(r.rhs.len()) > 2 {
            return Err(DehnError::LengthHypothesis(i));
        }
    }
    let target = ds.apply(w).ok_or(DehnError::NotApplicable)?;
    let u = &ds.factor;
    let u2 = &ds.replacement;
    let shift = |steps: Vec<Step>| -> Derivation {
        Derivation { start: w.clone(), steps: steps.into_iter().map(|s| s.at(s.pos() + ds.pos)).collect() }
    };
    let moves = [StepKind::One, StepKind::TwoR, StepKind::TwoL];
    for s in applicable_steps(p, u, &moves, None).expect("finite kinds") {
        let next = apply_step(p, u, &s).expect("enumerated step applies");
        if next == *u2 {
            return Ok(shift(vec![s]));
        }
        let (zeros, reduced) = free_reduction_steps(&next);
        if reduced == *u2 {
            let mut steps = vec![s];
            steps.extend(zeros);
            return Ok(shift(steps));
        }
    }
    let limits = SearchLimits {
        max_steps: DEHN_FALLBACK_DEPTH,
        max_word_length: u.len() + 4,
        max_insertions: 0,
        max_visited: 100_000,
        strategy: Strategy::BreadthFirst,
    };
    match bounded_derivation_search(p, u, u2, &StepKind::FINITE, &limits) {
        SearchOutcome::Found(d) => Ok(shift(d.steps)),
        _ => Err(DehnError::Untranslatable(ds.pos)),
    }
    .map(|d| {
        debug_assert_eq!(crate::rewrite::check_derivation(p, &d).ok(), Some(target));
        d
    })
}

/// Runs the greedy Dehn algorithm on `w` and translates the whole run into one
/// `{0,1,2}` derivation. Returns the final word with it.
pub fn dehn_derivation(p: &Presentation, w: &Word) -> Result<(Word, Derivation), DehnError> {
    let (end, trace) = dehn_run(p, w);
    let mut d = Derivation::new(w.clone());
    let mut cur = w.clone();
    for item in &trace {
        match item {
            DehnTraceItem::Zero(s) => {
                cur = apply_step(p, &cur, s).expect("free reduction applies");
                d.push(*s);
            }
            DehnTraceItem::Dehn(ds) => {
                let part = dehn_to_special(p, &cur, ds)?;
                cur = ds.apply(&cur).ok_or(DehnError::NotApplicable)?;
                d.extend(part.steps);
            }
        }
    }
    Ok((end, d))
}
