//! Right and left reversing, fractions, and the spherical word problem.

use artin_special::reversing::{left_fraction, right_fraction, right_reverse, word_problem_spherical};
use artin_special::trace::derivation_to_string;
use artin_special::worked::bundled;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = bundled("a2").expect("bundled presentation");
    for text in ["Ba", "ABab", "abaBAB", "aBBa"] {
        let w = p.parse_word(text)?;
        let r = right_reverse(&p, &w, 1_000)?;
        let f = right_fraction(&p, &w, 1_000)?;
        let g = left_fraction(&p, &w, 1_000)?;
        println!(
            "{text:>8}  reversed {:<10} right N={} D={}  left D={} N={}  steps {}",
            p.render(r.word()),
            p.render_positive(&f.numerator),
            p.render_positive(&f.denominator),
            p.render_positive(&g.denominator),
            p.render_positive(&g.numerator),
            r.steps()
        );
    }

    let w = p.parse_word("abaBAB")?;
    let (trivial, d) = word_problem_spherical(&p, &w, 1_000)?;
    println!("\n{} represents 1: {trivial}", p.render(&w));
    println!("{}", derivation_to_string(&p, &d)?);
    Ok(())
}
