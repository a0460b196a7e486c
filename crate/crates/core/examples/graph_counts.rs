//! Unlabeled graphs, graphs with an even number of edges, and their primes
//! (connected graphs for the first model).

use semigroup_moments::semigroups::Semigroup;

fn main() -> semigroup_moments::Result<()> {
    let n = 12;
    for model in [Semigroup::graphs(), Semigroup::even_graphs()] {
        println!("{}", model.name());
        let counts = model.counts(n)?;
        let primes = model.primes(n)?;
        for (i, (g, p)) in counts.iter().zip(&primes).enumerate() {
            println!("  {i:>2}  {g:>22}  {p:>22}");
        }
    }
    Ok(())
}
