//! ξ constants and τ polynomials for a few functions and moments.

use semigroup_moments::arithfun::WarlimontFn;
use semigroup_moments::asymptotics::moment_expansion;
use semigroup_moments::rat;
use semigroup_moments::semigroups::Semigroup;

fn main() -> semigroup_moments::Result<()> {
    let cases = [
        (Semigroup::graphs(), WarlimontFn::dk(2)?, 1),
        (Semigroup::graphs(), WarlimontFn::dk(2)?, 2),
        (Semigroup::even_graphs(), WarlimontFn::dstar(), 2),
        (Semigroup::fq_poly(2, 2)?, WarlimontFn::big_b(), 1),
    ];
    for (model, f, m) in cases {
        let e = moment_expansion(&f, &model, m, 5)?;
        let xi: Vec<String> = e.xi.xi.iter().map(rat::to_string).collect();
        println!("{} on {}, M = {m}: xi = [{}]", f.name(), model.name(), xi.join(", "));
        for s in 1..5 {
            println!("  tau_{s}(n) = {}", e.tau.term(s));
        }
    }
    match moment_expansion(&WarlimontFn::big_b(), &Semigroup::fq_poly(2, 3)?, 1, 3) {
        Ok(_) => println!("unexpected expansion on F_2[x,y,z]"),
        Err(e) => println!("F_2[x,y,z]: {e}"),
    }
    Ok(())
}
