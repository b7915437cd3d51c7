//! Building presentations three ways and listing the steps available on a word.
//!
//! ```text
//! cargo run --example presentations
//! ```

use artin_special::rewrite::{apply_step, applicable_steps, InsertionBound};
use artin_special::worked::bundled;
use artin_special::{artin_presentation, CoxeterEntry, CoxeterMatrix, Presentation, StepKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // From text.
    let text = Presentation::parse("gens: a b\nrel: aba = bab\nspherical: yes\n")?;

    // From a Coxeter matrix: m = 4 gives abab = baba, infinity gives no relation.
    let mut m = CoxeterMatrix::new(["a", "b", "c"]);
    m.set("a", "b", CoxeterEntry::Finite(4))?;
    m.set("b", "c", CoxeterEntry::Finite(2))?;
    m.set("a", "c", CoxeterEntry::Infinite)?;
    let coxeter = artin_presentation(&m)?;

    // Bundled.
    let fig = bundled("fig2").expect("bundled presentation");

    for (name, p) in [("text", &text), ("coxeter", &coxeter), ("bundled", &fig)] {
        let c = p.classify();
        println!(
            "{name}: {} generators, {} relations, right-angled {}, length-preserving {}",
            p.rank(),
            c.relation_count,
            c.right_angled,
            c.length_preserving
        );
        print!("{}", p.to_text());
    }

    let w = text.parse_word("aBAb")?;
    let steps = applicable_steps(&text, &w, &StepKind::ALL, Some(InsertionBound { max_len: 6 }))?;
    println!("\n{} steps apply to {}:", steps.len(), text.render(&w));
    for s in steps.iter().filter(|s| s.kind() != StepKind::Inf) {
        let next = apply_step(&text, &w, s)?;
        println!("  {:<5} {:<60} -> {}", format!("{:?}", s.kind()), format!("{s:?}"), text.render(&next));
    }
    Ok(())
}
