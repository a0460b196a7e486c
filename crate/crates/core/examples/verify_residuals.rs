//! Residuals of the R-term expansion against exact moments, normalized by
//! q^{-Rn} n^{d_1 R - d_2}.

use semigroup_moments::arithfun::WarlimontFn;
use semigroup_moments::asymptotics::verify_expansion;
use semigroup_moments::diagnostics::Criterion;
use semigroup_moments::rat;
use semigroup_moments::semigroups::Semigroup;

fn main() -> semigroup_moments::Result<()> {
    let g = Semigroup::graphs();
    let d2 = WarlimontFn::dk(2)?;
    for order in 1..=4 {
        let report = verify_expansion(&d2, &g, 1, order, 8..=20, true)?;
        let ratios: Vec<String> = report
            .residuals
            .iter()
            .map(|r| format!("{:.3}", rat::to_f64(&r.ratio)))
            .collect();
        let verdict = if report.check(Criterion::Stable) { "stable" } else { "not stable" };
        println!("R = {order}: {verdict}\n  {}", ratios.join(" "));
    }
    Ok(())
}
