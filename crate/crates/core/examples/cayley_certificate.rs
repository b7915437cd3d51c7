//! Tracing words in a divisor fragment of the Cayley graph and using an
//! untraced word as a non-reachability certificate.

use artin_special::cayley::{divisor_fragment, non_reachability_certificate, to_dot, traced_from, vertex_of, Trace};
use artin_special::monoid::Monoid;
use artin_special::worked::bundled;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = bundled("i2_4").expect("bundled presentation");
    let m = Monoid::new(p.clone());
    let g = p.parse_positive("ababb")?;
    let v = p.parse_positive("a")?;
    let f = divisor_fragment(&m, &g)?;
    println!("fragment of ababb: {} vertices, {} edges", f.vertex_count(), f.edges.len());

    let start = vertex_of(&m, &f, &v)?;
    for text in ["AbbabaB", "ababA", "bab"] {
        let w = p.parse_word(text)?;
        match traced_from(&f, start, &w)? {
            Trace::Traced(path) => {
                let names: Vec<String> = path.iter().map(|&i| p.render_positive(&f.vertices[i])).collect();
                println!("{text:>8}: traced through {}", names.join(" -> "));
            }
            Trace::LeavesAt(k) => println!("{text:>8}: leaves the fragment at letter {k}"),
        }
    }

    let (w, w2) = (p.parse_word("AbbabaB")?, p.parse_word("ababA")?);
    if let Some(c) = non_reachability_certificate(&m, &g, &v, &w, &w2)? {
        println!("certificate: {} cannot reach {} (leaves at {})", p.render(&c.traced), p.render(&c.untraced), c.leaves_at);
    }

    if std::env::args().any(|a| a == "--dot") {
        print!("{}", to_dot(&p, &f));
    }
    Ok(())
}
