//! Removing insertion steps from derivations in right-angled presentations.

use artin_special::raag::{
    eliminate_infinity_with_stats, generate_01inf_derivation, lift_derivation, phi, random_right_angled,
    random_trivial_word, raag_word_problem,
};
use artin_special::rewrite::check_derivation;
use artin_special::worked::bundled;
use artin_special::StepKind;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = bundled("ra3").expect("bundled presentation");
    let w = p.parse_word("aBcAbC")?;
    let d = generate_01inf_derivation(&p, &w)?;
    println!("{{0,1,inf}} derivation: {} steps, {} insertions", d.len(), d.count(StepKind::Inf));

    let lifted = lift_derivation(&p, &d)?;
    for (k, a) in lifted.words(&p)?.iter().enumerate().take(6) {
        println!("  {k:>2}  {:<24} phi = {}", a.render(&p), p.render(&phi(a)));
    }

    let (e, stats) = eliminate_infinity_with_stats(&p, &d)?;
    assert!(check_derivation(&p, &e)?.is_empty());
    println!("eliminated: {} -> {} steps, max index {}", stats.input_steps, stats.output_steps, stats.max_index);

    println!("word problem via {{0,1,2}}: {:?}", raag_word_problem(&p, &w)?.map(|d| d.len()));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let q = random_right_angled(4, 0.5, &mut rng);
        let w = random_trivial_word(&q, 10, &mut rng);
        let d = generate_01inf_derivation(&q, &w)?;
        let (e, s) = eliminate_infinity_with_stats(&q, &d)?;
        println!(
            "{} relations, {:<12} {} -> {} steps, inf left {}",
            q.relations().len(),
            q.render(&w),
            s.input_steps,
            s.output_steps,
            e.count(StepKind::Inf)
        );
    }
    Ok(())
}
