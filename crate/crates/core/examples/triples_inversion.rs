//! Recover prime counts from totals and check the identities of the triple.

use semigroup_moments::rat::{self, int, Rat};
use semigroup_moments::triples::{invert_to_primes, WarlimontTriple};

fn main() -> semigroup_moments::Result<()> {
    let totals: Vec<Rat> = [1, 1, 2, 4, 11, 34, 156].iter().map(|&v| int(v)).collect();
    let ones = vec![int(1); totals.len()];
    let inv = invert_to_primes(&totals, &ones)?;
    let primes: Vec<String> = inv.primes.iter().map(rat::to_string).collect();
    println!("primes: {} (integral: {})", primes.join(", "), inv.integral);

    // Square-free weights: a_k = 0 for k >= 2.
    let mut weights = vec![int(0); totals.len()];
    weights[0] = int(1);
    weights[1] = int(1);
    let sq = invert_to_primes(&totals, &weights)?;
    println!("square-free reading integral: {}", sq.integral);

    let tr = WarlimontTriple::from_totals(&totals, &ones)?;
    let beta: Vec<String> = tr.beta().iter().map(rat::to_string).collect();
    println!("beta:   {}", beta.join(", "));
    for (name, result) in [
        ("lemma2 identities", tr.check_lemma2_identities(6)),
        ("lemma3 inequality", tr.check_lemma3(6)),
        ("beta convolution", tr.check_beta_convolution()),
        ("euler product", tr.check_product_identity()),
    ] {
        println!("{name:<20} {}", if result.is_ok() { "ok" } else { "FAILED" });
    }
    Ok(())
}
