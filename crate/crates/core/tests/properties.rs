mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use semigroup_moments::arithfun::{exact_moment, fn_totals, moment_table, PowerTotals, WarlimontFn};
use semigroup_moments::asymptotics::{
    compute_nu, compute_nu_by_compositions, count_level_residuals, mean_trend, moment_expansion,
};
use semigroup_moments::diagnostics::{strictly_decreasing_abs, Criterion};
use semigroup_moments::rat::{self, int, Rat};
use semigroup_moments::semigroups::{wright_log_profile, Semigroup};
use semigroup_moments::series::euler_product;
use semigroup_moments::triples::{invert_to_primes, Denominator, WarlimontTriple};

#[test]
fn parity_split_matches_brute_force() {
    for n in 0..=6 {
        let (all, even) = common::brute_force_graph_orbits(n);
        let g = Semigroup::graphs().count(n).unwrap();
        let e = Semigroup::even_graphs().count(n).unwrap();
        assert_eq!(g.clone(), BigInt::from(all));
        assert_eq!(&g - &e, BigInt::from(all - even), "odd-edge graphs on {n} vertices");
    }
}

#[test]
fn euler_round_trip_on_random_triples() {
    let mut rng = common::seeded(12);
    for _ in 0..40 {
        let (t, a) = common::random_admissible(&mut rng, 12);
        let totals = euler_product(&t, &a, 12).unwrap().into_coeffs();
        let inv = invert_to_primes(&totals, &a).unwrap();
        let back: Vec<Rat> = t.iter().map(rat::from_big).collect();
        assert_eq!(inv.primes[1..], back[1..]);
    }
}

#[test]
fn count_level_expansion_is_bounded() {
    let g = Semigroup::graphs();
    for f in [WarlimontFn::dk(2).unwrap(), WarlimontFn::dstar()] {
        for moment in [1, 2] {
            for order in 1..=4 {
                let table = count_level_residuals(&f, &g, moment, order, 20).unwrap();
                assert!(table.check(Criterion::Bounded), "{} M = {moment} R = {order}", f.name());
            }
        }
    }
}

#[test]
fn lemma4_and_growth_conditions_on_graphs() {
    let tr = Semigroup::graphs().triple(20).unwrap();
    for order in 1..=4 {
        assert!(tr.lemma4_table(order, 20, Denominator::Totals).check(Criterion::Bounded));
        assert!(tr.lemma4_table(order, 20, Denominator::Primes).check(Criterion::Bounded));
        let t5 = tr.theorem5_tables(order, 20);
        assert!(t5.totals_convolution.check(Criterion::Stable));
        assert!(t5.primes_convolution.check(Criterion::Stable));
        assert!(t5.beta_approximation.check(Criterion::Bounded));
        assert!(t5.primes_approximation.check(Criterion::Bounded));
    }
}

#[test]
fn middle_term_breaks_the_inclusive_inequality() {
    // With the s = n/2 term the inequality fails on every model; without it
    // it holds.
    let cases = [
        (Semigroup::graphs(), 10),
        (Semigroup::even_graphs(), 8),
        (Semigroup::fq_poly(2, 2).unwrap(), 2),
    ];
    for (model, first_bad) in cases {
        let tr = model.triple(14).unwrap();
        let bad = (1..=14).find(|&n| tr.lemma3_lhs_inclusive(n) > tr.totals()[n]);
        assert_eq!(bad, Some(first_bad), "{}", model.name());
        assert_eq!(tr.check_lemma3(14), Ok(()));
    }
    let fq = Semigroup::fq_poly(2, 2).unwrap().triple(2).unwrap();
    assert_eq!(fq.lemma3_lhs_inclusive(2), int(71));
    assert_eq!(fq.totals()[2], int(56));
}

#[test]
fn averages_converge_on_all_models() {
    let cases = [
        (Semigroup::graphs(), WarlimontFn::dk(2).unwrap(), 18),
        (Semigroup::even_graphs(), WarlimontFn::dstar(), 18),
        (Semigroup::fq_poly(2, 2).unwrap(), WarlimontFn::big_b(), 12),
    ];
    for (model, f, n_max) in cases {
        let trend = mean_trend(&f, &model, n_max).unwrap();
        let from = n_max / 2;
        assert!(strictly_decreasing_abs(&trend.mean_gap[from..]), "{}", model.name());
        assert!(strictly_decreasing_abs(&trend.variance[from..]), "{}", model.name());
    }
}

#[test]
fn first_moment_matches_direct_average() {
    let g = Semigroup::graphs();
    let d3 = WarlimontFn::dk(3).unwrap();
    let table = moment_table(&d3, &g, 1, 10).unwrap();
    let totals = fn_totals(&d3, &g.primes(10).unwrap(), 10).unwrap();
    let counts = g.counts_rat(10).unwrap();
    for n in 0..=10 {
        let direct = &totals[n] / (int(3) * &counts[n]) - int(1);
        assert_eq!(table.entries[n], direct);
    }
}

#[test]
fn tau_degrees_respect_bounds() {
    let g = Semigroup::graphs();
    for moment in 1..=3 {
        let e = moment_expansion(&WarlimontFn::dk(2).unwrap(), &g, moment, 6).unwrap();
        assert_eq!(e.tau.degree_violation(), None);
        for s in 1..6 {
            assert!(e.tau.term(s).degree().unwrap_or(0) < 2 * s);
        }
    }
    let fq = Semigroup::fq_poly(3, 2).unwrap();
    let e = moment_expansion(&WarlimontFn::dk(2).unwrap(), &fq, 2, 6).unwrap();
    assert!(e.tau.tau.terms().iter().all(|p| p.degree().unwrap_or(0) == 0));
}

#[test]
fn log_profile_residuals_are_small() {
    let g = wright_log_profile(&Semigroup::graphs(), 30).unwrap();
    let law = g.law.clone().unwrap();
    for row in &g.rows[9..] {
        let n = row.n as f64;
        assert!(row.residual.unwrap().abs() < n.powf(law.b), "n = {}", row.n);
    }
    let fq = wright_log_profile(&Semigroup::fq_poly(2, 2).unwrap(), 30).unwrap();
    assert!(fq.rows.iter().all(|r| r.residual.unwrap().abs() < 1.0));
    assert!(!wright_log_profile(&Semigroup::fq_poly(2, 1).unwrap(), 5).unwrap().is_wright());
}

#[test]
fn second_moment_on_even_graphs_is_nonnegative() {
    let e = Semigroup::even_graphs();
    let pt = PowerTotals::compute(&WarlimontFn::dstar(), &e, 2, 12).unwrap();
    for n in 0..=12 {
        assert!(pt.moment(n) >= int(0));
        assert_eq!(pt.moment(n), exact_moment(&WarlimontFn::dstar(), &e, 2, n).unwrap());
    }
}

fn admissible() -> impl Strategy<Value = (Vec<i64>, Vec<(i64, i64)>)> {
    (
        proptest::collection::vec(0i64..=3, 10),
        proptest::collection::vec((0i64..=5, 1i64..=3), 9),
    )
}

fn triple_from((t, a): (Vec<i64>, Vec<(i64, i64)>)) -> WarlimontTriple {
    let mut primes = vec![BigInt::from(0)];
    primes.extend(t.into_iter().map(BigInt::from));
    let mut weights = vec![int(1), int(1)];
    weights.extend(a.into_iter().skip(1).map(|(n, d)| rat::frac(n, d)));
    WarlimontTriple::from_primes(&primes, &weights, 10).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn identities_hold_on_admissible_triples(data in admissible()) {
        let tr = triple_from(data);
        prop_assert_eq!(tr.check_lemma2_identities(10), Ok(()));
        prop_assert_eq!(tr.check_lemma3(10), Ok(()));
        prop_assert_eq!(tr.check_beta_convolution(), Ok(()));
        prop_assert_eq!(tr.check_product_identity(), Ok(()));
    }

    #[test]
    fn nu_paths_agree_on_random_ratios(
        base in 2i64..=5,
        coeffs in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 0..4), 5),
    ) {
        use semigroup_moments::polyasym::{Poly, PolyExpansion};
        let mut terms = vec![Poly::zero()];
        terms.extend(coeffs.iter().map(|c| Poly::from_ints(c)));
        let psi = PolyExpansion::new(int(base), terms).unwrap();
        prop_assert_eq!(compute_nu(&psi, 6).unwrap(), compute_nu_by_compositions(&psi, 6).unwrap());
    }

    #[test]
    fn dk_totals_equal_convolution(k in 2u32..=4, n in 0usize..=12) {
        let g = Semigroup::even_graphs();
        let counts = g.counts(n).unwrap();
        let totals = fn_totals(&WarlimontFn::dk(k).unwrap(), &g.primes(n).unwrap(), n).unwrap();
        let conv = common::k_fold_convolution(&counts, k as usize);
        prop_assert_eq!(totals[n].clone(), rat::from_big(&conv[n]));
    }

    #[test]
    fn constant_function_powers_agree(m in 0u32..=5, n in 0usize..=10) {
        let fq = Semigroup::fq_poly(3, 2).unwrap();
        let primes = fq.primes(n).unwrap();
        let one = WarlimontFn::one();
        prop_assert_eq!(
            fn_totals(&one.power(m), &primes, n).unwrap(),
            fn_totals(&one, &primes, n).unwrap()
        );
    }
}
