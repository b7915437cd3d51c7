//! Bounded search for derivations, with and without insertions, and dead words.

use artin_special::search::{bounded_derivation_search, is_dead, SearchLimits, SearchOutcome, Strategy};
use artin_special::trace::derivation_to_string;
use artin_special::worked::bundled;
use artin_special::{StepKind, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = bundled("ra3").expect("bundled presentation");
    let w = p.parse_word("aBcAbC")?;
    for strategy in [Strategy::BreadthFirst, Strategy::IterativeDeepening] {
        let limits = SearchLimits { max_steps: 8, strategy, ..Default::default() };
        match bounded_derivation_search(&p, &w, &Word::empty(), &StepKind::FINITE, &limits) {
            SearchOutcome::Found(d) => println!("{strategy:?}: {} steps", d.len()),
            other => println!("{strategy:?}: {other:?}"),
        }
    }

    let limits = SearchLimits { max_steps: 8, ..Default::default() };
    if let SearchOutcome::Found(d) = bounded_derivation_search(&p, &w, &Word::empty(), &StepKind::FINITE, &limits) {
        println!("{}", derivation_to_string(&p, &d)?);
    }

    // Insertions widen the search; they are counted and capped separately.
    let a2 = bundled("a2").expect("bundled presentation");
    let (u, t) = (a2.parse_word("abA")?, a2.parse_word("Bab")?);
    let kinds = [StepKind::Zero, StepKind::One, StepKind::TwoR, StepKind::TwoL, StepKind::Inf];
    let limits = SearchLimits { max_steps: 6, max_insertions: 2, max_word_length: 8, ..Default::default() };
    println!("abA -> Bab in a2: {:?} steps", bounded_derivation_search(&a2, &u, &t, &kinds, &limits).found().map(|d| d.len()));

    let fig = bundled("fig2").expect("bundled presentation");
    let w = fig.parse_word("ACdaBDcb")?;
    for kinds in [&[StepKind::Zero, StepKind::TwoR, StepKind::TwoL][..], &StepKind::FINITE[..]] {
        println!("{} dead under {:?}: {}", fig.render(&w), kinds, is_dead(&fig, &w, kinds)?);
    }
    Ok(())
}
