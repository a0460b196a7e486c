//! The polynomials φ_s and the count-ratio expansion
//! G_{n-1}/G_n = Σ ψ_s(n) 2^{-sn} for graphs and polynomial rings.

use semigroup_moments::polyasym::PolyExpansion;
use semigroup_moments::semigroups::Semigroup;

fn print_psi(label: &str, psi: &PolyExpansion) {
    println!("{label}, base {}", psi.base());
    for (s, p) in psi.terms().iter().enumerate().skip(1) {
        println!("  psi_{s}(n) = {p}");
    }
}

fn main() -> semigroup_moments::Result<()> {
    let graphs = Semigroup::graphs();
    if let Some(phi) = graphs.phi(4) {
        for (s, p) in phi.iter().enumerate() {
            println!("phi_{s}(n) = {p}");
        }
    }
    print_psi("graphs", &graphs.ratio_expansion(5)?);
    print_psi("F_3[x,y]", &Semigroup::fq_poly(3, 2)?.ratio_expansion(4)?);
    Ok(())
}
