//! Divisors, lcms, S0-minimal elements and coset heads in a spherical monoid.

use artin_special::monoid::Monoid;
use artin_special::worked::bundled;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = bundled("i2_4").expect("bundled presentation");
    let m = Monoid::new(p.clone());
    let b = p.gen("b").expect("generator b");

    let g = p.parse_positive("abab")?;
    let class = m.equiv_class(&g)?;
    let show = |ws: &[artin_special::PositiveWord]| ws.iter().map(|w| p.render_positive(w)).collect::<Vec<_>>().join(" ");
    println!("class of abab: {}", show(&class));
    println!("left divisors: {}", show(&m.left_divisors(&g)?));

    let (u, v) = (p.parse_positive("ab")?, p.parse_positive("ba")?);
    println!("lcm(ab, ba) = {}", p.render_positive(&m.right_lcm(&u, &v, 1_000)?));

    for text in ["ab", "ba", "abb", "aab"] {
        let w = p.parse_positive(text)?;
        let (head, tail) = m.strip_s0(&w, &[b])?;
        println!(
            "{text:>4}: minimal w.r.t. {{b}} {:<5}  head {} tail {}",
            m.is_s0_minimal(&w, &[b])?,
            p.render_positive(&head),
            p.render_positive(&tail)
        );
    }

    for text in ["abAB", "bbaB", "Abab"] {
        let w = p.parse_word(text)?;
        let h = m.coset_head_spherical(&w, &[b], 1_000)?;
        println!("{text} = ({}) . ({}) via {} steps", p.render(&h.v), p.render(&h.u), h.trace.len());
    }
    Ok(())
}
