mod common;

use artin_special::rewrite::{apply_step, applicable_steps, check_derivation, dehn_steps, simulate_type2, InsertionBound};
use artin_special::worked::bundled;
use artin_special::{artin_presentation, CoxeterEntry, CoxeterMatrix, Gen, Letter, Presentation, StepKind, Word};
use common::{BraidEmbedding, A2, I2_4};
use proptest::prelude::*;

fn word_strategy(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len).prop_map(|v| {
        v.into_iter().map(|(g, pos)| if pos { Letter::pos(Gen(g)) } else { Letter::neg(Gen(g)) }).collect()
    })
}

fn dihedral() -> impl Strategy<Value = (Presentation, BraidEmbedding)> {
    prop_oneof![Just((bundled("a2").unwrap(), A2)), Just((bundled("i2_4").unwrap(), I2_4))]
}

proptest! {
    #[test]
    fn free_reduce_is_reduced_and_idempotent(w in word_strategy(3, 16)) {
        let r = w.free_reduce();
        prop_assert!(r.letters().windows(2).all(|p| !p[0].cancels(p[1])));
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(r.len() <= w.len() && (w.len() - r.len()) % 2 == 0);
    }

    #[test]
    fn render_and_parse_round_trip(w in word_strategy(3, 12)) {
        let p = bundled("ra3").unwrap();
        let text = p.render(&w);
        prop_assert_eq!(p.parse_word(&text).unwrap(), w.clone());
        let spaced: Vec<String> = w.letters().iter().map(|&l| p.render_letter(l)).collect();
        prop_assert_eq!(p.parse_word(&spaced.join(" ")).unwrap(), w);
    }

    #[test]
    fn coxeter_relation_count(entries in prop::collection::vec(prop_oneof![Just(0u32), 2u32..6], 6)) {
        let names = ["a", "b", "c", "d"];
        let mut m = CoxeterMatrix::new(names);
        let mut finite = 0;
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let e = entries[k];
                k += 1;
                if e == 0 {
                    m.set(names[i], names[j], CoxeterEntry::Infinite).unwrap();
                } else {
                    m.set(names[i], names[j], CoxeterEntry::Finite(e)).unwrap();
                    finite += 1;
                }
            }
        }
        let p = artin_presentation(&m).unwrap();
        prop_assert_eq!(p.relations().len(), finite);
        prop_assert!(p.relations().iter().all(|r| r.lhs.len() == r.rhs.len() && r.lhs != r.rhs));
    }

    // Every step, insertions included, preserves the element (Burau oracle).
    #[test]
    fn steps_preserve_the_element((p, emb) in dihedral(), w in word_strategy(2, 10), pick in any::<prop::sample::Index>()) {
        let steps = applicable_steps(&p, &w, &StepKind::ALL, Some(InsertionBound { max_len: w.len() + 2 })).unwrap();
        prop_assume!(!steps.is_empty());
        let s = steps[pick.index(steps.len())];
        let next = apply_step(&p, &w, &s).unwrap();
        prop_assert!(emb.equal(&w, &next));
    }

    #[test]
    fn enumeration_is_deterministic((p, _) in dihedral(), w in word_strategy(2, 10)) {
        let a = applicable_steps(&p, &w, &StepKind::FINITE, None).unwrap();
        let b = applicable_steps(&p, &w, &StepKind::FINITE, None).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dehn_steps_shorten((p, emb) in dihedral(), w in word_strategy(2, 12)) {
        for ds in dehn_steps(&p, &w) {
            let next = ds.apply(&w).unwrap();
            prop_assert!(next.len() < w.len());
            prop_assert!(emb.equal(&w, &next));
        }
    }

    #[test]
    fn type2_simulation_matches((p, _) in dihedral(), w in word_strategy(2, 8)) {
        for s in applicable_steps(&p, &w, &[StepKind::TwoR, StepKind::TwoL], None).unwrap() {
            let d = simulate_type2(&p, &w, &s).unwrap();
            prop_assert!(d.uses_only(&[StepKind::Zero, StepKind::One, StepKind::Inf]));
            prop_assert_eq!(check_derivation(&p, &d).unwrap(), apply_step(&p, &w, &s).unwrap());
        }
    }
}

#[test]
fn parse_errors_are_reported() {
    let p = bundled("a2").unwrap();
    assert!(p.parse_word("abz").is_err());
    assert!(Presentation::parse("gens: a b\nrel: ab = \n").is_err());
    assert!(Presentation::parse("gens: a b\nrel: ac = ca\n").is_err());
}

#[test]
fn commuting_factor_steps() {
    let p = Presentation::parse("gens: a b\nrel: ab = ba\n").unwrap();
    let w = p.parse_word("Aba").unwrap();
    let found: Vec<String> = dehn_steps(&p, &w).iter().map(|d| p.render(&d.apply(&w).unwrap())).collect();
    assert!(found.contains(&"b".to_string()));
    let q = bundled("i2_4").unwrap();
    assert!(dehn_steps(&q, &q.parse_word("abab").unwrap()).is_empty());
}
