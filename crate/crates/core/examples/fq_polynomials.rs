//! Polynomials in k variables over F_q, up to nonzero scalars.

use semigroup_moments::arithfun::{fn_totals, WarlimontFn};
use semigroup_moments::asymptotics::compute_xi;
use semigroup_moments::rat;
use semigroup_moments::semigroups::{wright_log_profile, Semigroup};

fn main() -> semigroup_moments::Result<()> {
    for (q, k) in [(2, 1), (2, 2), (3, 2), (2, 3)] {
        let model = Semigroup::fq_poly(q, k)?;
        let counts = model.counts(5)?;
        let primes = model.primes(5)?;
        println!("F_{q} with k = {k}");
        println!("  counts {}", counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
        println!("  primes {}", primes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
        let b = fn_totals(&WarlimontFn::big_b(), &primes, 5)?;
        println!("  B totals {}", b.iter().map(rat::to_string).collect::<Vec<_>>().join(", "));
        println!("  Wright growth: {}", wright_log_profile(&model, 12)?.is_wright());
    }
    // Three variables: ξ_1 vanishes for B at every moment.
    let model = Semigroup::fq_poly(2, 3)?;
    for m in 1..=3 {
        let xi = compute_xi(&WarlimontFn::big_b(), &model, m, 2)?;
        println!("F_2[x,y,z], M = {m}: xi_1 = {}", xi.xi[1]);
    }
    Ok(())
}
