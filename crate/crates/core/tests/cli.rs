use std::path::PathBuf;
use std::process::Command;

use artin_special::raag::generate_01inf_derivation;
use artin_special::rewrite::check_derivation;
use artin_special::trace::{derivation_from_str, derivation_to_string};
use artin_special::worked::{bundled, bundled_names};
use artin_special::StepKind;
use serde_json::Value;

fn artin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_artin")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("artin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bundled_presentations_validate() {
    for name in bundled_names() {
        let (code, out, err) = artin(&["validate", "-p", name, "--json"]);
        assert_eq!(code, 0, "{name}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["generators"].as_array().is_some_and(|g| !g.is_empty()));
    }
    let (code, _, _) = artin(&["validate", "-p", "/definitely/missing.txt"]);
    assert_eq!(code, 66);
}

#[test]
fn fuzz_output_is_reproducible() {
    let args = ["fuzz-raag", "--count", "6", "--seed", "17", "--json"];
    let (c1, a, _) = artin(&args);
    let (c2, b, _) = artin(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["failures"], 0);
    let (_, other, _) = artin(&["fuzz-raag", "--count", "6", "--seed", "18", "--json"]);
    assert_ne!(a, other);
}

#[test]
fn emitted_traces_replay() {
    let cases: [(&str, &[&str]); 5] = [
        ("ra3", &["wp-raag", "-w", "aBcAbC"]),
        ("a2", &["reverse", "-w", "ABab"]),
        ("a2", &["reverse", "-w", "abAB", "--side", "left"]),
        ("ra3", &["search", "-w", "aBcAbC"]),
        ("a2", &["dehn", "-w", "abaBAB"]),
    ];
    for (name, rest) in cases {
        let mut args = vec!["-p", name, "--json"];
        args.extend_from_slice(rest);
        let (code, out, err) = artin(&args);
        assert_eq!(code, 0, "{rest:?}: {err}");
        let p = bundled(name).unwrap();
        let d = derivation_from_str(&p, &out).unwrap_or_else(|e| panic!("{rest:?}: {e}"));
        assert!(d.uses_only(&StepKind::FINITE));
        let file = scratch(&format!("{}.json", rest[0]));
        std::fs::write(&file, &out).unwrap();
        let (code, _, _) = artin(&["replay", "-p", name, "--in", file.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
}

#[test]
fn eliminate_inf_round_trip() {
    let p = bundled("ra3").unwrap();
    let w = p.parse_word("aBcAbC").unwrap();
    let d = generate_01inf_derivation(&p, &w).unwrap();
    let input = scratch("elim-in.json");
    let output = scratch("elim-out.json");
    std::fs::write(&input, derivation_to_string(&p, &d).unwrap()).unwrap();
    let (code, _, err) =
        artin(&["eliminate-inf", "-p", "ra3", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let e = derivation_from_str(&p, &std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(e.start, w);
    assert_eq!(e.count(StepKind::Inf), 0);
    assert!(check_derivation(&p, &e).unwrap().is_empty());

    std::fs::write(&input, "{ not json").unwrap();
    let (code, _, _) = artin(&["eliminate-inf", "-p", "ra3", "--in", input.to_str().unwrap()]);
    assert_eq!(code, 66);
}

#[test]
fn dead_word_depends_on_kinds() {
    assert_eq!(artin(&["dead", "-p", "fig2", "-w", "ACdaBDcb", "--kinds", "0,2"]).0, 0);
    // Four type 1 sites exist, so the word is not dead once relations may be applied.
    let (code, out, _) = artin(&["dead", "-p", "fig2", "-w", "ACdaBDcb", "--json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 4);
}

#[test]
fn cayley_certificate() {
    let (code, out, _) =
        artin(&["cayley-trace", "-p", "i2_4", "-g", "ababb", "-v", "a", "-w", "AbbabaB", "--w2", "ababA", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["word"]["traced"], true);
    assert_eq!(v["word"]["path"].as_array().unwrap().last().unwrap(), "abab");
    assert_eq!(v["certificate"], true);
    let (_, dot, _) = artin(&["cayley-trace", "-p", "i2_4", "-g", "ababb", "-w", "ab", "--dot"]);
    assert!(dot.contains("digraph"));
}

#[test]
fn monoid_commands() {
    let (code, out, _) = artin(&["lcm", "-p", "a2", "-u", "a", "-v", "b", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(["aba", "bab"].contains(&v["lcm"].as_str().unwrap()));
    let (_, out, _) = artin(&["class", "-p", "a2", "-w", "aba", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"].as_array().unwrap().len(), 2);
    assert_eq!(artin(&["minimal", "-p", "a2", "-w", "ab", "--s0", "b"]).0, 1);
    assert_eq!(artin(&["minimal", "-p", "a2", "-w", "ba", "--s0", "b"]).0, 0);
}
