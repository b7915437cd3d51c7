//! The greedy Dehn algorithm and its translation into special transformations.

use artin_special::rewrite::check_derivation;
use artin_special::search::{dehn_derivation, dehn_run, DehnTraceItem};
use artin_special::worked::bundled;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = bundled("a2").expect("bundled presentation");
    for text in ["abaBAB", "abAB", "babABA", "aabBAA"] {
        let w = p.parse_word(text)?;
        let (end, trace) = dehn_run(&p, &w);
        let dehn = trace.iter().filter(|i| matches!(i, DehnTraceItem::Dehn(_))).count();
        let (_, d) = dehn_derivation(&p, &w)?;
        assert_eq!(check_derivation(&p, &d)?, end);
        println!(
            "{text:>8} -> {:<6} {dehn} Dehn step(s), {} special step(s) ({} of type 1)",
            p.render(&end),
            d.len(),
            d.count(artin_special::StepKind::One)
        );
    }
    Ok(())
}
