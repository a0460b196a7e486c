//! Exact moments of d_2 on graphs next to the direct average.

use semigroup_moments::arithfun::{fn_totals, moment_table, WarlimontFn};
use semigroup_moments::rat::{self, int};
use semigroup_moments::semigroups::Semigroup;

fn main() -> semigroup_moments::Result<()> {
    let g = Semigroup::graphs();
    let d2 = WarlimontFn::dk(2)?;
    let totals = fn_totals(&d2, &g.primes(14)?, 14)?;
    let counts = g.counts_rat(14)?;
    let first = moment_table(&d2, &g, 1, 14)?;
    let second = moment_table(&d2, &g, 2, 14)?;
    println!(" n  mean d_2        mu_1           mu_2");
    for n in 0..=14 {
        let mean = &totals[n] / &counts[n];
        println!(
            "{n:>2}  {:<14.10}  {:<13.6e}  {:.6e}",
            rat::to_f64(&mean),
            rat::to_f64(&first.entries[n]),
            rat::to_f64(&second.entries[n])
        );
        assert_eq!(&mean / int(2) - int(1), first.entries[n]);
    }
    Ok(())
}
