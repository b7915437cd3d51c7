//! JSON encoding of steps and derivations.
//!
//! A step is `{"kind": "0r|0l|1|2r|2l|inf", "pos": n, ...}` where `0r` removes
//! `s s⁻¹` and `0l` removes `s⁻¹ s`. Type 1 steps carry `rel`, `orient` and
//! `sign` (`-1` when the rewritten factor is negative); type 2 steps carry
//! `rel`, `orient` and `split`; insertions carry `letter` and `sign`.
//! A derivation is `{"schema": 1, "start": w, "steps": [...], "end": w′}`;
//! `end` is recomputed and compared on load.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Orientation, ParseError, Presentation};
use crate::rewrite::{check_derivation, Derivation, DerivationError, PairOrder, Step};
use crate::word::{Letter, Sign};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub kind: String,
    pub pos: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub start: String,
    pub steps: Vec<StepJson>,
    pub end: String,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("step {index}: {msg}")]
    BadStep { index: usize, msg: String },
    #[error(transparent)]
    Word(#[from] ParseError),
    #[error(transparent)]
    Replay(#[from] DerivationError),
    #[error("recorded end `{recorded}` differs from replayed end `{actual}`")]
    EndMismatch { recorded: String, actual: String },
}

fn orient_str(o: Orientation) -> String {
    match o {
        Orientation::Fwd => "fwd",
        Orientation::Bwd => "bwd",
    }
    .to_string()
}

pub fn step_to_json(p: &Presentation, step: &Step) -> StepJson {
    let mut j = StepJson { kind: String::new(), pos: step.pos(), rel: None, orient: None, split: None, letter: None, sign: None };
    match *step {
        Step::Remove { order, .. } => {
            j.kind = match order {
                PairOrder::PosNeg => "0r",
                PairOrder::NegPos => "0l",
            }
            .into();
        }
        Step::Relation { rel, orient, inverse, .. } => {
            j.kind = "1".into();
            j.rel = Some(rel);
            j.orient = Some(orient_str(orient));
            j.sign = Some(if inverse { -1 } else { 1 });
        }
        Step::ReverseRight { rel, orient, split, .. } | Step::ReverseLeft { rel, orient, split, .. } => {
            j.kind = if matches!(step, Step::ReverseRight { .. }) { "2r" } else { "2l" }.into();
            j.rel = Some(rel);
            j.orient = Some(orient_str(orient));
            j.split = Some(split);
        }
        Step::Insert { letter, .. } => {
            j.kind = "inf".into();
            j.letter = Some(p.name(letter.gen).to_string());
            j.sign = Some(letter.sign.as_i8());
        }
    }
    j
}

pub fn step_from_json(p: &Presentation, j: &StepJson, index: usize) -> Result<Step, TraceError> {
    let bad = |msg: &str| TraceError::BadStep { index, msg: msg.to_string() };
    let orient = || match j.orient.as_deref() {
        Some("fwd") | None => Ok(Orientation::Fwd),
        Some("bwd") => Ok(Orientation::Bwd),
        Some(other) => Err(bad(&format!("unknown orientation `{other}`"))),
    };
    let rel = || j.rel.ok_or_else(|| bad("missing `rel`"));
    let split = || j.split.ok_or_else(|| bad("missing `split`"));
    let pos = j.pos;
    Ok(match j.kind.as_str() {
        "0r" => Step::Remove { pos, order: PairOrder::PosNeg },
        "0l" => Step::Remove { pos, order: PairOrder::NegPos },
        "1" => {
            let inverse = match j.sign.unwrap_or(1) {
                1 => false,
                -1 => true,
                _ => return Err(bad("sign must be 1 or -1")),
            };
            Step::Relation { pos, rel: rel()?, orient: orient()?, inverse }
        }
        "2r" => Step::ReverseRight { pos, rel: rel()?, orient: orient()?, split: split()? },
        "2l" => Step::ReverseLeft { pos, rel: rel()?, orient: orient()?, split: split()? },
        "inf" => {
            let name = j.letter.as_deref().ok_or_else(|| bad("missing `letter`"))?;
            let gen = p.gen(name).ok_or_else(|| bad(&format!("unknown generator `{name}`")))?;
            let sign = Sign::from_i8(j.sign.unwrap_or(1)).ok_or_else(|| bad("sign must be 1 or -1"))?;
            Step::Insert { pos, letter: Letter { gen, sign } }
        }
        other => return Err(bad(&format!("unknown kind `{other}`"))),
    })
}

/// Encodes `d` after replaying it; fails if the derivation is invalid.
pub fn derivation_to_json(p: &Presentation, d: &Derivation) -> Result<DerivationJson, DerivationError> {
    let end = check_derivation(p, d)?;
    Ok(DerivationJson {
        schema: SCHEMA_VERSION,
        start: p.render(&d.start),
        steps: d.steps.iter().map(|s| step_to_json(p, s)).collect(),
        end: p.render(&end),
    })
}

pub fn derivation_to_string(p: &Presentation, d: &Derivation) -> Result<String, DerivationError> {
    let j = derivation_to_json(p, d)?;
    Ok(serde_json::to_string_pretty(&j).expect("derivation JSON serializes"))
}

/// Decodes a derivation, replays it and checks the recorded end word.
pub fn derivation_from_str(p: &Presentation, text: &str) -> Result<Derivation, TraceError> {
    let j: DerivationJson = serde_json::from_str(text)?;
    if j.schema != SCHEMA_VERSION {
        return Err(TraceError::Schema(j.schema));
    }
    let start = p.parse_word(&j.start)?;
    let steps = j
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| step_from_json(p, s, i))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Derivation { start, steps };
    let end = check_derivation(p, &d)?;
    let recorded = p.parse_word(&j.end)?;
    if recorded != end {
        return Err(TraceError::EndMismatch { recorded: j.end, actual: p.render(&end) });
    }
    Ok(d)
}
