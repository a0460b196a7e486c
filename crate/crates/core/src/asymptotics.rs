//! Expansion of normalized moments in powers of `q^{-n}`.
//!
//! The pipeline is
//!
//! 1. `ξ_s = (-1)^M Σ_{m=1}^M (-1)^m C(M,m) Σ_{r<=s} β_r (F^m)_{s-r}`, with
//!    `β` the inverse of the count series and `(F^m)_j` the totals of the
//!    pointwise power `F^m`;
//! 2. `ν_{s,t}`, the coefficient of `q^{-sn}` in `G_{n-t}/G_n`, obtained
//!    from the ratio expansion `ψ`;
//! 3. `τ_s = Σ_{t<=s} ξ_t ν_{s,t}`, so that
//!    `μ_{F,M}(n) = Σ_{s<R} τ_s(n) q^{-sn} + O(n^{d_1 R - d_2} q^{-Rn})`.
//!
//! Everything here is exact. [`verify_expansion`] compares the truncated
//! expansion against exactly computed moments.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::arithfun::{PowerTotals, WarlimontFn};
use crate::diagnostics::{Criterion, Table};
use crate::polyasym::{Poly, PolyExpansion};
use crate::rat::{self, Rat};
use crate::semigroups::Semigroup;
use crate::triples::derive_beta;
use crate::{Error, Result};

/// How `(F^m)_j` enters the `ξ` sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum XiConvention {
    /// Plain totals `(F^m)_j`. Reproduces the published tables.
    #[default]
    Unnormalized,
    /// Totals divided by `(F_1^+)^m`. Kept for comparison only; for `d_2` on
    /// graphs it gives `ξ_1 = 1/2` where the tables need `ξ_1 = 1`.
    Normalized,
}

/// `ξ_0 = 0, ξ_1, ..., ξ_{R-1}` for a fixed moment `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiVector {
    pub moment: u32,
    pub xi: Vec<Rat>,
}

impl XiVector {
    pub fn order(&self) -> usize {
        self.xi.len()
    }
}

/// `ξ` from the count inverse `β` and the power totals. The sum runs over
/// `0 <= m <= M`; the `m = 0` term is `(β * G)_s`, which vanishes except at
/// `s = 0` where it makes `ξ_0 = 0`.
pub fn xi_from_totals(beta: &[Rat], totals: &PowerTotals, order: usize, convention: XiConvention) -> XiVector {
    let moment = totals.totals.len() - 1;
    let mut xi = vec![Rat::zero(); order];
    for (s, slot) in xi.iter_mut().enumerate() {
        let mut acc = Rat::zero();
        for m in 0..=moment {
            let mut conv: Rat = (0..=s).map(|r| &beta[r] * &totals.totals[m][s - r]).sum();
            if convention == XiConvention::Normalized {
                conv /= num_traits::pow(totals.f1_plus.clone(), m);
            }
            let c = Rat::from_integer(BigInt::from(rat::binomial(moment as u64, m as u64)));
            if (moment - m).is_multiple_of(2) {
                acc += c * conv;
            } else {
                acc -= c * conv;
            }
        }
        *slot = acc;
    }
    XiVector {
        moment: moment as u32,
        xi,
    }
}

pub fn compute_xi(f: &WarlimontFn, semigroup: &Semigroup, moment: u32, order: usize) -> Result<XiVector> {
    compute_xi_with(f, semigroup, moment, order, XiConvention::Unnormalized)
}

pub fn compute_xi_with(
    f: &WarlimontFn,
    semigroup: &Semigroup,
    moment: u32,
    order: usize,
    convention: XiConvention,
) -> Result<XiVector> {
    check_moment_and_order(moment, order)?;
    let totals = PowerTotals::compute(f, semigroup, moment, order - 1)?;
    let beta = derive_beta(&totals.counts);
    Ok(xi_from_totals(&beta, &totals, order, convention))
}

fn check_moment_and_order(moment: u32, order: usize) -> Result<()> {
    if moment == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    if order == 0 {
        return Err(Error::InvalidParameter("R must be at least 1".into()));
    }
    Ok(())
}

/// `ν_{s,t}` for `1 <= t <= s < R`; other entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuTable {
    base: Rat,
    nu: Vec<Vec<Poly>>,
}

impl NuTable {
    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.nu.len()
    }

    pub fn get(&self, s: usize, t: usize) -> &Poly {
        &self.nu[s][t]
    }

    /// `(s, t, ν_{s,t})` for `1 <= t <= s < R`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.nu
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().enumerate().skip(1).take(s).map(move |(t, p)| (s, t, p)))
    }
}

/// `ν` from the products `Π_{j<t} ψ(n - j)`, each factor being the ratio
/// expansion re-expanded at `n - j`.
pub fn compute_nu(psi: &PolyExpansion, order: usize) -> Result<NuTable> {
    let psi = truncated(psi, order)?;
    let mut nu = vec![vec![Poly::zero(); order]; order];
    let mut product = PolyExpansion::one(psi.base().clone(), order)?;
    for t in 1..order {
        product = product.mul(&psi.shift_substitute(t as u32 - 1))?;
        for (s, row) in nu.iter_mut().enumerate().skip(t) {
            row[t] = product.term(s).clone();
        }
    }
    Ok(NuTable {
        base: psi.base().clone(),
        nu,
    })
}

/// `ν_{s,t} = Σ_{i_1+...+i_t = s} ψ_{i_1}(n) ψ_{i_2}(n-1) ... ψ_{i_t}(n-t+1)
/// q^{i_2 + 2 i_3 + ... + (t-1) i_t}`, summed over compositions directly.
pub fn compute_nu_by_compositions(psi: &PolyExpansion, order: usize) -> Result<NuTable> {
    let psi = truncated(psi, order)?;
    let q = psi.base().clone();
    let mut nu = vec![vec![Poly::zero(); order]; order];
    for (s, row) in nu.iter_mut().enumerate().skip(1) {
        for (t, slot) in row.iter_mut().enumerate().skip(1).take(s) {
            let mut acc = Poly::zero();
            for parts in compositions(s, t) {
                let mut term = Poly::constant(Rat::one());
                let mut q_exp = 0i64;
                for (j, &i) in parts.iter().enumerate() {
                    term = term.mul(&psi.term(i).shift(j as i64));
                    q_exp += (j * i) as i64;
                }
                acc = acc.add(&term.scale(&rat::pow(&q, q_exp)));
            }
            *slot = acc;
        }
    }
    Ok(NuTable { base: q, nu })
}

fn truncated(psi: &PolyExpansion, order: usize) -> Result<PolyExpansion> {
    if order == 0 || psi.order() < order {
        return Err(Error::InvalidParameter(format!(
            "need ψ_0..ψ_{} but the expansion has {} terms",
            order.saturating_sub(1),
            psi.order()
        )));
    }
    Ok(psi.truncate(order))
}

/// Compositions of `s` into exactly `t` positive parts.
fn compositions(s: usize, t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=s.saturating_sub(t - 1) {
        for mut rest in compositions(s - first, t - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `τ_0 = 0, τ_1, ..., τ_{R-1}` as an expansion in `q^{-n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauExpansion {
    pub tau: PolyExpansion,
    pub degree_bounds: Option<(u32, u32)>,
}

impl TauExpansion {
    pub fn term(&self, s: usize) -> &Poly {
        self.tau.term(s)
    }

    pub fn order(&self) -> usize {
        self.tau.order()
    }

    /// `Σ_{s<R} τ_s(n) q^{-sn}`.
    pub fn eval(&self, n: i64) -> Rat {
        self.tau.eval(n)
    }

    /// First `s` with `deg τ_s > d_1 s - d_2`, if any.
    pub fn degree_violation(&self) -> Option<usize> {
        let (d1, d2) = self.degree_bounds?;
        (1..self.order()).find(|&s| {
            self.term(s)
                .degree()
                .is_some_and(|d| d as i64 > d1 as i64 * s as i64 - d2 as i64)
        })
    }
}

pub fn compute_tau(xi: &XiVector, nu: &NuTable) -> Result<TauExpansion> {
    let order = xi.order().min(nu.order());
    let mut terms = vec![Poly::zero(); order];
    for (s, slot) in terms.iter_mut().enumerate().skip(1) {
        for t in 1..=s {
            if !xi.xi[t].is_zero() {
                *slot = slot.add(&nu.get(s, t).scale(&xi.xi[t]));
            }
        }
    }
    Ok(TauExpansion {
        tau: PolyExpansion::new(nu.base().clone(), terms)?,
        degree_bounds: None,
    })
}

/// All stages of the expansion for one `(F, M, R)`.
#[derive(Clone, Debug)]
pub struct MomentExpansion {
    pub psi: PolyExpansion,
    pub nu: NuTable,
    pub xi: XiVector,
    pub tau: TauExpansion,
}

/// Builds `ψ, ν, ξ, τ` up to index `R - 1`. Fails for models whose ratio
/// has no expansion in powers of `q^{-n}` with polynomial coefficients
/// (growth exponent `a != 1`, explicit sequences).
pub fn moment_expansion(f: &WarlimontFn, semigroup: &Semigroup, moment: u32, order: usize) -> Result<MomentExpansion> {
    check_moment_and_order(moment, order)?;
    let psi = semigroup.ratio_expansion(order)?;
    let nu = compute_nu(&psi, order)?;
    let xi = compute_xi(f, semigroup, moment, order)?;
    let mut tau = compute_tau(&xi, &nu)?;
    tau.degree_bounds = semigroup.degree_bounds();
    Ok(MomentExpansion { psi, nu, xi, tau })
}

/// A value of `λ_s(n) = ξ_s q^{s n^a} G_{n-s} / G_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaValue {
    Exact(Rat),
    /// `q^{s n^a}` is irrational; value rounded to `f64`.
    Approx(f64),
}

pub fn lambda_pointwise(f: &WarlimontFn, semigroup: &Semigroup, moment: u32, s: usize, n: usize) -> Result<LambdaValue> {
    if s == 0 || n < s {
        return Err(Error::InvalidParameter(format!("λ_s(n) needs n >= s >= 1, got s = {s}, n = {n}")));
    }
    let law = semigroup.growth().ok_or_else(|| {
        Error::InvalidParameter(format!("{} is not a Wright semigroup", semigroup.name()))
    })?;
    let xi = compute_xi(f, semigroup, moment, s + 1)?.xi.swap_remove(s);
    if xi.is_zero() {
        return Ok(LambdaValue::Exact(Rat::zero()));
    }
    let counts = semigroup.counts_rat(n)?;
    let ratio = xi * &counts[n - s] / &counts[n];
    let exponent = s as i64 * (n as i64).pow(law.a);
    Ok(match law.base.pow_exact(exponent) {
        Some(qe) => LambdaValue::Exact(ratio * qe),
        None => LambdaValue::Approx((rat::ln_abs(&ratio) + exponent as f64 * law.base.ln()).exp() * sign(&ratio)),
    })
}

fn sign(r: &Rat) -> f64 {
    if r < &Rat::zero() {
        -1.0
    } else {
        1.0
    }
}

/// One row of [`MomentReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub n: usize,
    pub moment: Rat,
    /// `μ_{F,M}(n) - Σ_{s<R} τ_s(n) q^{-sn}`.
    pub residual: Rat,
    /// `residual · q^{Rn} / n^{d_1 R - d_2}`.
    pub ratio: Rat,
}

#[derive(Clone, Debug)]
pub struct MomentReport {
    pub function: String,
    pub moment: u32,
    pub order: usize,
    pub expansion: MomentExpansion,
    pub residuals: Vec<Residual>,
}

impl MomentReport {
    pub fn ratio_table(&self) -> Table {
        let mut t = Table::new(format!("residual * q^(R n) / n^(d1 R - d2), R = {}", self.order));
        for r in &self.residuals {
            t.push(r.n, Some(r.ratio.clone()));
        }
        t
    }

    pub fn check(&self, criterion: Criterion) -> bool {
        self.ratio_table().check(criterion)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "xi": self.expansion.xi.xi.iter().map(rat::to_string).collect::<Vec<_>>(),
            "tau": self.expansion.tau.tau.terms().iter().map(poly_strings).collect::<Vec<_>>(),
            "residuals": self.residuals.iter().map(|r| json!({
                "n": r.n,
                "residual": rat::to_string(&r.residual),
                "ratio": rat::to_string(&r.ratio),
            })).collect::<Vec<_>>(),
        })
    }
}

fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rat::to_string).collect()
}

/// Exact residuals of the `R`-term expansion on `n_lo..=n_hi`.
pub fn verify_expansion(
    f: &WarlimontFn,
    semigroup: &Semigroup,
    moment: u32,
    order: usize,
    n_range: std::ops::RangeInclusive<usize>,
    parallel: bool,
) -> Result<MomentReport> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo == 0 || lo > hi {
        return Err(Error::InvalidParameter(format!("bad range {lo}..{hi}: need 1 <= a <= b")));
    }
    let expansion = moment_expansion(f, semigroup, moment, order)?;
    let (d1, d2) = semigroup.degree_bounds().unwrap_or((0, 0));
    let power = d1 as i64 * order as i64 - d2 as i64;
    let totals = PowerTotals::compute(f, semigroup, moment, hi)?;
    let q = expansion.psi.base().clone();
    let row = |n: usize| {
        let mu = totals.moment(n);
        let residual = &mu - expansion.tau.eval(n as i64);
        let ratio = &residual * rat::pow(&q, (order * n) as i64) / rat::pow(&rat::int(n as i64), power);
        Residual {
            n,
            moment: mu,
            residual,
            ratio,
        }
    };
    let residuals = if parallel {
        (lo..=hi).into_par_iter().map(row).collect()
    } else {
        (lo..=hi).map(row).collect()
    };
    Ok(MomentReport {
        function: f.name(),
        moment,
        order,
        expansion,
        residuals,
    })
}

/// `(Σ_{∂g=n} (F̃(g) - 1)^M - Σ_{1<=s<R} ξ_s G_{n-s}) / G_{n-R}` for
/// `R <= n <= N`, the count-level form of the expansion that needs no
/// growth assumptions beyond the self-convolution axiom.
pub fn count_level_residuals(f: &WarlimontFn, semigroup: &Semigroup, moment: u32, order: usize, n_max: usize) -> Result<Table> {
    check_moment_and_order(moment, order)?;
    let totals = PowerTotals::compute(f, semigroup, moment, n_max)?;
    let beta = derive_beta(&totals.counts);
    let xi = xi_from_totals(&beta, &totals, order, XiConvention::Unnormalized);
    let g = &totals.counts;
    let mut table = Table::new(format!("(sum (F~ - 1)^M - sum xi_s G_(n-s)) / G_(n-{order})"));
    for n in order..=n_max {
        let approx: Rat = (1..order).map(|s| &xi.xi[s] * &g[n - s]).sum();
        let resid = totals.central_sum(n) - approx;
        let den = &g[n - order];
        table.push(n, (!den.is_zero()).then(|| resid / den));
    }
    Ok(table)
}

/// `|F_n / G_n - F_1^+|` and `(1/G_n) Σ (F(g) - F_1^+)^2` for `n <= N`; both
/// tend to zero on semigroups with `G_{n-1} = o(G_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanTrend {
    pub mean_gap: Vec<Rat>,
    pub variance: Vec<Rat>,
}

pub fn mean_trend(f: &WarlimontFn, semigroup: &Semigroup, n_max: usize) -> Result<MeanTrend> {
    let totals = PowerTotals::compute(f, semigroup, 2, n_max)?;
    let f1 = totals.f1_plus.clone();
    let mut mean_gap = Vec::with_capacity(n_max + 1);
    let mut variance = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let g = &totals.counts[n];
        let mean = &totals.totals[1][n] / g;
        mean_gap.push(rat::abs(&(mean - &f1)));
        // Σ (F - F_1)^2 = (F^2)_n - 2 F_1 F_n + F_1^2 G_n
        let second = &totals.totals[2][n] - rat::int(2) * &f1 * &totals.totals[1][n] + &f1 * &f1 * g;
        variance.push(second / g);
    }
    Ok(MeanTrend { mean_gap, variance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn poly(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(5, 3).len(), 6);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn xi_graphs_d2() {
        let g = Semigroup::graphs();
        let d2 = WarlimontFn::dk(2).unwrap();
        let xi = compute_xi(&d2, &g, 1, 3).unwrap();
        assert_eq!(xi.xi, vec![int(0), int(1), int(2)]);
        let normalized = compute_xi_with(&d2, &g, 1, 3, XiConvention::Normalized).unwrap();
        assert_eq!(normalized.xi[1], frac(1, 2));
        let xi2 = compute_xi(&d2, &g, 2, 3).unwrap();
        assert_eq!(xi2.xi, vec![int(0), int(1), int(4)]);
    }

    #[test]
    fn xi_zero_at_origin() {
        for m in 1..=4 {
            let xi = compute_xi(&WarlimontFn::dk(3).unwrap(), &Semigroup::even_graphs(), m, 2).unwrap();
            assert_eq!(xi.xi[0], int(0));
        }
    }

    #[test]
    fn xi_vanishes_for_b_in_three_variables() {
        let s = Semigroup::fq_poly(2, 3).unwrap();
        for m in 1..=3 {
            assert_eq!(compute_xi(&WarlimontFn::big_b(), &s, m, 2).unwrap().xi[1], int(0));
        }
    }

    #[test]
    fn nu_paths_agree() {
        for model in [Semigroup::graphs(), Semigroup::fq_poly(3, 2).unwrap()] {
            let psi = model.ratio_expansion(6).unwrap();
            assert_eq!(compute_nu(&psi, 6).unwrap(), compute_nu_by_compositions(&psi, 6).unwrap());
        }
    }

    #[test]
    fn nu_graph_values() {
        let psi = Semigroup::graphs().ratio_expansion(5).unwrap();
        let nu = compute_nu(&psi, 5).unwrap();
        assert_eq!(nu.get(2, 2), &poly(&[0, -8, 8]));
        assert_eq!(nu.get(3, 3), &poly(&[0, 128, -192, 64]));
        assert_eq!(nu.get(4, 2), &poly(&[0, -106496, 245376, -203488, 77216, -13472, 864]));
        for s in 1..5 {
            assert_eq!(nu.get(s, 1), psi.term(s));
        }
        assert_eq!(nu.entries().count(), 10);
    }

    #[test]
    fn tau_graphs_d2() {
        let e = moment_expansion(&WarlimontFn::dk(2).unwrap(), &Semigroup::graphs(), 1, 4).unwrap();
        assert_eq!(e.tau.term(1), &poly(&[0, 2]));
        assert_eq!(e.tau.term(2), &poly(&[0, 0, -4, 4]));
        assert_eq!(e.tau.term(3), &poly(&[0, 1024, -2016, 1320, -368, 40]));
        assert_eq!(e.tau.degree_violation(), None);
    }

    #[test]
    fn tau_fq_b() {
        let e = moment_expansion(&WarlimontFn::big_b(), &Semigroup::fq_poly(2, 2).unwrap(), 1, 4).unwrap();
        assert!(e.tau.term(1).is_zero());
        assert_eq!(e.tau.term(2), &Poly::constant(int(3)));
        assert_eq!(e.tau.term(3), &Poly::constant(frac(3, 2)));
    }

    #[test]
    fn guards() {
        let f = WarlimontFn::big_b();
        let s3 = Semigroup::fq_poly(2, 3).unwrap();
        assert_eq!(moment_expansion(&f, &s3, 1, 3).unwrap_err(), Error::GrowthExponent(2));
        assert!(moment_expansion(&f, &Semigroup::graphs(), 0, 3).is_err());
        assert!(verify_expansion(&f, &Semigroup::graphs(), 1, 2, 0..=4, false).is_err());
    }

    #[test]
    fn lambda_values() {
        let g = Semigroup::graphs();
        let d2 = WarlimontFn::dk(2).unwrap();
        // ξ_1 = 1, so λ_1(4) = 2^4 G_3 / G_4 = 16 * 4 / 11
        assert_eq!(lambda_pointwise(&d2, &g, 1, 1, 4).unwrap(), LambdaValue::Exact(frac(64, 11)));
        let s3 = Semigroup::fq_poly(2, 3).unwrap();
        assert_eq!(
            lambda_pointwise(&WarlimontFn::big_b(), &s3, 2, 1, 3).unwrap(),
            LambdaValue::Exact(int(0))
        );
        match lambda_pointwise(&WarlimontFn::dk(2).unwrap(), &s3, 1, 1, 3).unwrap() {
            LambdaValue::Approx(v) => assert!(v.is_finite() && v > 0.0),
            other => panic!("expected an approximate value, got {other:?}"),
        }
        assert!(lambda_pointwise(&d2, &g, 1, 3, 2).is_err());
        assert!(lambda_pointwise(&d2, &Semigroup::fq_poly(2, 1).unwrap(), 1, 1, 2).is_err());
    }

    #[test]
    fn residual_of_one_term_is_the_moment() {
        let g = Semigroup::graphs();
        let d2 = WarlimontFn::dk(2).unwrap();
        let report = verify_expansion(&d2, &g, 1, 1, 3..=8, false).unwrap();
        for r in &report.residuals {
            assert_eq!(r.residual, r.moment);
            let expected = &r.moment * rat::pow(&int(2), r.n as i64) / int(r.n as i64);
            assert_eq!(r.ratio, expected);
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let g = Semigroup::graphs();
        let d2 = WarlimontFn::dk(2).unwrap();
        let a = verify_expansion(&d2, &g, 2, 3, 4..=12, false).unwrap();
        let b = verify_expansion(&d2, &g, 2, 3, 4..=12, true).unwrap();
        assert_eq!(a.residuals, b.residuals);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn mean_trend_shrinks() {
        let t = mean_trend(&WarlimontFn::dk(2).unwrap(), &Semigroup::graphs(), 12).unwrap();
        assert!(t.mean_gap[12] < t.mean_gap[8]);
        assert!(t.variance[12] < t.variance[8]);
    }
}
