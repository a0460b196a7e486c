//! Truncated power series: inverse, log/exp round trip and an Euler product.

use num_bigint::BigInt;
use semigroup_moments::rat::{self, int};
use semigroup_moments::series::{euler_product, TruncatedSeries};

fn show(s: &TruncatedSeries) -> String {
    s.coeffs().iter().map(rat::to_string).collect::<Vec<_>>().join(", ")
}

fn main() -> semigroup_moments::Result<()> {
    let geometric = TruncatedSeries::from_ints([1, -1, 0, 0, 0, 0, 0, 0]);
    println!("1/(1 - x)        = {}", show(&geometric.inverse()?));

    let s = TruncatedSeries::from_ints([1, 1, 2, 4, 11, 34, 156, 1044]);
    let log = s.log()?;
    println!("log of graph gf  = {}", show(&log));
    assert_eq!(log.exp()?, s);

    // One prime of each degree, all prime powers allowed: the partition numbers.
    let t: Vec<BigInt> = (0..8).map(|n| BigInt::from((n > 0) as i64)).collect();
    let a = vec![int(1); 8];
    println!("partitions       = {}", show(&euler_product(&t, &a, 7)?));
    Ok(())
}
