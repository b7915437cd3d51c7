//! Bundled presentations and a replay suite for the worked examples pinned in
//! `data/manifest.json`.

use serde::Deserialize;

use crate::cayley::{divisor_fragment, traced_from, vertex_of};
use crate::monoid::Monoid;
use crate::presentation::Presentation;
use crate::raag::{eliminate_infinity, lift_derivation, phi};
use crate::rewrite::{applicable_steps, check_derivation, connect_words, StepKind};
use crate::search::is_dead;
use crate::word::Word;

const BUNDLED: &[(&str, &str)] = &[
    ("a2.txt", include_str!("../data/a2.txt")),
    ("i2_4.txt", include_str!("../data/i2_4.txt")),
    ("ra3.txt", include_str!("../data/ra3.txt")),
    ("f2xf2.txt", include_str!("../data/f2xf2.txt")),
    ("fig2.txt", include_str!("../data/fig2.txt")),
];

pub const MANIFEST: &str = include_str!("../data/manifest.json");

/// Text of a bundled presentation file, by file name with or without `.txt`.
pub fn bundled_text(name: &str) -> Option<&'static str> {
    let key = if name.ends_with(".txt") { name.to_string() } else { format!("{name}.txt") };
    BUNDLED.iter().find(|(n, _)| *n == key).map(|(_, t)| *t)
}

pub fn bundled(name: &str) -> Option<Presentation> {
    bundled_text(name).map(|t| Presentation::parse(t).expect("bundled presentation parses"))
}

pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

#[derive(Deserialize)]
struct Manifest {
    examples: Examples,
}

#[derive(Deserialize)]
struct Examples {
    commuting_derivation: WordList,
    stuck_word: Single,
    product_derivation: WordList,
    divisor_fragment: Fragment,
    lifted_derivation: Lifted,
    eliminated_derivation: WordList,
}

#[derive(Deserialize)]
struct WordList {
    presentation: String,
    words: Vec<String>,
}

#[derive(Deserialize)]
struct Single {
    presentation: String,
    word: String,
}

#[derive(Deserialize)]
struct Fragment {
    presentation: String,
    element: String,
    vertex: String,
    expected_vertices: usize,
    traced: String,
    untraced: String,
}

#[derive(Deserialize)]
struct Lifted {
    presentation: String,
    plain: Vec<String>,
    augmented: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn parse_all(p: &Presentation, words: &[String]) -> Vec<Word> {
    words.iter().map(|w| p.parse_word(w).expect("manifest word parses")).collect()
}

fn kinds_summary(p: &Presentation, w: &Word, kinds: &[StepKind]) -> String {
    let steps = applicable_steps(p, w, kinds, None).expect("finite kinds");
    let mut parts = Vec::new();
    for k in kinds {
        let n = steps.iter().filter(|s| s.kind() == *k).count();
        parts.push(format!("{k:?}={n}"));
    }
    parts.join(" ")
}

fn replay_words(p: &Presentation, words: &[Word], kinds: &[StepKind]) -> Result<(), String> {
    let d = connect_words(p, words, kinds).map_err(|i| format!("no single step connects words {i} and {}", i + 1))?;
    let end = check_derivation(p, &d).map_err(|e| e.to_string())?;
    if end.is_empty() {
        Ok(())
    } else {
        Err(format!("ends at {}", p.render(&end)))
    }
}

/// Replays every pinned example and reports each claim literally.
pub fn run_all() -> Vec<ExampleReport> {
    let m: Manifest = serde_json::from_str(MANIFEST).expect("manifest parses");
    let e = m.examples;
    let finite = [StepKind::Zero, StepKind::One, StepKind::TwoR, StepKind::TwoL];
    let zero_two = [StepKind::Zero, StepKind::TwoR, StepKind::TwoL];
    let mut out = Vec::new();

    {
        let p = bundled(&e.commuting_derivation.presentation).unwrap();
        let words = parse_all(&p, &e.commuting_derivation.words);
        let r = replay_words(&p, &words, &finite);
        out.push(ExampleReport {
            name: "commuting derivation reaches the empty word",
            passed: r.is_ok(),
            detail: r.err().unwrap_or_else(|| format!("{} steps", words.len() - 1)),
        });
    }
    {
        let p = bundled(&e.stuck_word.presentation).unwrap();
        let w = p.parse_word(&e.stuck_word.word).unwrap();
        let dead = is_dead(&p, &w, &finite).unwrap();
        out.push(ExampleReport {
            name: "stuck word admits no type 0, 1 or 2 step",
            passed: dead,
            detail: format!("applicable: {}", kinds_summary(&p, &w, &finite)),
        });
        let dead02 = is_dead(&p, &w, &zero_two).unwrap();
        out.push(ExampleReport {
            name: "stuck word admits no type 0 or 2 step",
            passed: dead02,
            detail: format!("applicable: {}", kinds_summary(&p, &w, &zero_two)),
        });
    }
    {
        let p = bundled(&e.product_derivation.presentation).unwrap();
        let words = parse_all(&p, &e.product_derivation.words);
        let r = replay_words(&p, &words, &finite);
        out.push(ExampleReport {
            name: "product derivation reaches the empty word",
            passed: r.is_ok(),
            detail: r.err().unwrap_or_else(|| format!("{} steps", words.len() - 1)),
        });
        let dead02 = is_dead(&p, &words[0], &zero_two).unwrap();
        out.push(ExampleReport {
            name: "product word admits no type 0 or 2 step",
            passed: dead02,
            detail: format!("applicable: {}", kinds_summary(&p, &words[0], &finite)),
        });
    }
    {
        let f = &e.divisor_fragment;
        let mon = Monoid::new(bundled(&f.presentation).unwrap());
        let p = mon.presentation().clone();
        let g = p.parse_positive(&f.element).unwrap();
        let frag = divisor_fragment(&mon, &g).unwrap();
        let v = vertex_of(&mon, &frag, &p.parse_positive(&f.vertex).unwrap()).unwrap();
        let n = frag.vertex_count();
        out.push(ExampleReport {
            name: "divisor fragment vertex count",
            passed: n == f.expected_vertices,
            detail: format!("expected {}, found {n}", f.expected_vertices),
        });
        let t = traced_from(&frag, v, &p.parse_word(&f.traced).unwrap()).unwrap();
        out.push(ExampleReport {
            name: "word traced in the fragment",
            passed: t.is_traced(),
            detail: format!("{:?}", t),
        });
        let u = traced_from(&frag, v, &p.parse_word(&f.untraced).unwrap()).unwrap();
        out.push(ExampleReport {
            name: "word not traced in the fragment",
            passed: !u.is_traced(),
            detail: format!("{:?}", u),
        });
    }
    {
        let l = &e.lifted_derivation;
        let p = bundled(&l.presentation).unwrap();
        let words = parse_all(&p, &l.plain);
        let kinds = [StepKind::Zero, StepKind::One, StepKind::Inf];
        let result = connect_words(&p, &words, &kinds)
            .map_err(|i| format!("no step connects words {i} and {}", i + 1))
            .and_then(|d| lift_derivation(&p, &d).map_err(|e| e.to_string()))
            .and_then(|a| a.words(&p).map_err(|e| e.to_string()));
        let (passed, detail) = match result {
            Ok(aug) => {
                let shown: Vec<String> = aug.iter().map(|w| w.render(&p)).collect();
                let ok = shown == l.augmented && aug.iter().zip(&words).all(|(a, w)| phi(a) == *w);
                (ok, shown.join(" | "))
            }
            Err(e) => (false, e),
        };
        out.push(ExampleReport { name: "lifted derivation matches the augmented row", passed, detail });

        let target = parse_all(&p, &e.eliminated_derivation.words);
        let result = connect_words(&p, &words, &kinds)
            .map_err(|i| format!("no step connects words {i}"))
            .and_then(|d| eliminate_infinity(&p, &d).map_err(|e| e.to_string()))
            .and_then(|d| d.words(&p).map_err(|e| e.to_string()));
        let (passed, detail) = match result {
            Ok(ws) => {
                let shown: Vec<String> = ws.iter().map(|w| p.render(w)).collect();
                (ws == target, shown.join(" | "))
            }
            Err(e) => (false, e),
        };
        out.push(ExampleReport { name: "eliminated derivation matches the projected row", passed, detail });
    }
    out
}
