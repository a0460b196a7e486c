//! Triples `(T, t, a)` linked by the Euler product
//! `Σ T_n x^n = Π_m (Σ_k a_k x^{km})^{t_m}`, with `T_0 = a_0 = 1`, `a_1 > 0`
//! and integer `t_m`.
//!
//! For a semigroup, `T` counts elements by degree, `t` counts primes and
//! `a ≡ 1`; for a prime-independent multiplicative function `F`, `T` holds
//! the degree totals `F_n` and `a` the prime-power values `F_k^+`.
//!
//! All sequences are indexed by degree. Entries at index 0 of `t`, `v` and
//! `b` are placeholders equal to zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagnostics::Table;
use crate::rat::{self, Rat};
use crate::series::{euler_product, TruncatedSeries};
use crate::{Error, Result};

/// A failed exact check: which identity, at which index, and both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub n: usize,
    pub detail: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at n = {}: {}", self.check, self.n, self.detail)
    }
}

pub type CheckResult = std::result::Result<(), Failure>;

fn mismatch(check: impl Into<String>, n: usize, lhs: &Rat, rhs: &Rat) -> Failure {
    Failure {
        check: check.into(),
        n,
        detail: format!("lhs = {lhs}, rhs = {rhs}"),
    }
}

/// `v_n = T_n - Σ_{s=1}^{n-1} (s/n) v_s T_{n-s}`, the coefficients of `log Σ T_n x^n`.
pub fn derive_v(totals: &[Rat]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); totals.len()];
    for n in 1..totals.len() {
        let mut acc = totals[n].clone();
        for s in 1..n {
            acc -= rat::frac(s as i64, n as i64) * &v[s] * &totals[n - s];
        }
        v[n] = acc;
    }
    v
}

/// `β_0 = 1`, `β_n = -Σ_{s<n} β_s T_{n-s}`: the coefficients of `1 / Σ T_n x^n`.
pub fn derive_beta(totals: &[Rat]) -> Vec<Rat> {
    let mut beta: Vec<Rat> = Vec::with_capacity(totals.len());
    for n in 0..totals.len() {
        if n == 0 {
            beta.push(Rat::one());
            continue;
        }
        let acc: Rat = (0..n).map(|s| &beta[s] * &totals[n - s]).sum();
        beta.push(-acc);
    }
    beta
}

/// `b_n = n a_n - Σ_{s=1}^{n-1} b_s a_{n-s}`, so that `log Σ a_n x^n = Σ b_s x^s / s`.
pub fn derive_b(weights: &[Rat]) -> Vec<Rat> {
    let mut b = vec![Rat::zero(); weights.len()];
    for n in 1..weights.len() {
        let mut acc = rat::int(n as i64) * &weights[n];
        for s in 1..n {
            acc -= &b[s] * &weights[n - s];
        }
        b[n] = acc;
    }
    b
}

/// The prime sequence recovered from totals and weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeInversion {
    pub primes: Vec<Rat>,
    /// False when some `t_n` came out non-integral, i.e. the totals do not
    /// come from any triple with these weights.
    pub integral: bool,
}

impl PrimeInversion {
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.primes.iter().map(rat::as_integer).collect()
    }
}

/// Solves `n v_n = Σ_{d|n} d t_d b_{n/d}` for `t_n`, degree by degree.
pub fn invert_to_primes(totals: &[Rat], weights: &[Rat]) -> Result<PrimeInversion> {
    let order = totals.len() - 1;
    let weights = padded(weights, order);
    check_leading(totals, &weights)?;
    if order == 0 {
        return Ok(PrimeInversion { primes: vec![Rat::zero()], integral: true });
    }
    let v = derive_v(totals);
    let b = derive_b(&weights);
    let b1 = &b[1];
    if b1.is_zero() {
        return Err(Error::InvalidTriple("b_1 = a_1 must be nonzero".into()));
    }
    let mut t = vec![Rat::zero(); order + 1];
    for n in 1..=order {
        let mut acc = rat::int(n as i64) * &v[n];
        for d in 1..n {
            if n % d == 0 {
                acc -= rat::int(d as i64) * &t[d] * &b[n / d];
            }
        }
        t[n] = acc / (rat::int(n as i64) * b1);
    }
    let integral = t.iter().all(|x| x.is_integer());
    Ok(PrimeInversion { primes: t, integral })
}

fn padded(seq: &[Rat], order: usize) -> Vec<Rat> {
    let mut out = seq.to_vec();
    out.resize(order + 1, Rat::zero());
    out
}

fn check_leading(totals: &[Rat], weights: &[Rat]) -> Result<()> {
    if totals.first().is_none_or(|t| !t.is_one()) {
        return Err(Error::InvalidTriple("T_0 must be 1".into()));
    }
    if weights.first().is_none_or(|a| !a.is_one()) {
        return Err(Error::InvalidTriple("a_0 must be 1".into()));
    }
    if totals.len() > 1 && weights.get(1).is_none_or(|a| !a.is_positive()) {
        return Err(Error::InvalidTriple("a_1 must be positive".into()));
    }
    Ok(())
}

/// A triple known up to degree `N`, with its derived sequences cached.
#[derive(Clone, Debug)]
pub struct WarlimontTriple {
    totals: Vec<Rat>,
    primes: Vec<Rat>,
    weights: Vec<Rat>,
    integral: bool,
    v: Vec<Rat>,
    beta: Vec<Rat>,
    b: Vec<Rat>,
}

impl WarlimontTriple {
    /// Builds the triple from integer prime counts `t[1..=N]` and weights.
    pub fn from_primes(primes: &[BigInt], weights: &[Rat], order: usize) -> Result<Self> {
        let weights = padded(weights, order);
        let totals = euler_product(primes, &weights, order)?.into_coeffs();
        check_leading(&totals, &weights)?;
        let mut t: Vec<Rat> = primes[..=order].iter().map(rat::from_big).collect();
        t[0] = Rat::zero();
        Ok(Self::assemble(totals, t, weights, true))
    }

    /// Builds the triple from totals `T[0..=N]` by inverting the Euler product.
    pub fn from_totals(totals: &[Rat], weights: &[Rat]) -> Result<Self> {
        let order = totals.len() - 1;
        let weights = padded(weights, order);
        let inv = invert_to_primes(totals, &weights)?;
        Ok(Self::assemble(totals.to_vec(), inv.primes, weights, inv.integral))
    }

    fn assemble(totals: Vec<Rat>, primes: Vec<Rat>, weights: Vec<Rat>, integral: bool) -> Self {
        let v = derive_v(&totals);
        let beta = derive_beta(&totals);
        let b = derive_b(&weights);
        Self {
            totals,
            primes,
            weights,
            integral,
            v,
            beta,
            b,
        }
    }

    pub fn order(&self) -> usize {
        self.totals.len() - 1
    }

    pub fn totals(&self) -> &[Rat] {
        &self.totals
    }

    pub fn primes(&self) -> &[Rat] {
        &self.primes
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn v(&self) -> &[Rat] {
        &self.v
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    /// Recomputes the Euler product from `t` and compares with `T`.
    pub fn check_product_identity(&self) -> CheckResult {
        let order = self.order();
        let fail = |detail: String| Failure {
            check: "euler product".into(),
            n: 0,
            detail,
        };
        let t = self
            .primes
            .iter()
            .map(rat::as_integer)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| fail("prime sequence is not integral".into()))?;
        let product = euler_product(&t, &self.weights, order).map_err(|e| fail(e.to_string()))?;
        for n in 0..=order {
            if product.coeff(n) != &self.totals[n] {
                return Err(mismatch("euler product", n, product.coeff(n), &self.totals[n]));
            }
        }
        Ok(())
    }

    /// `β * T = δ` exactly.
    pub fn check_beta_convolution(&self) -> CheckResult {
        let prod = TruncatedSeries::from_vec(self.beta.clone())
            .mul(&TruncatedSeries::from_vec(self.totals.clone()));
        for n in 0..=self.order() {
            let expected = if n == 0 { Rat::one() } else { Rat::zero() };
            if prod.coeff(n) != &expected {
                return Err(mismatch("beta * T = delta", n, prod.coeff(n), &expected));
            }
        }
        Ok(())
    }

    /// The three exact identities relating `v`, `β`, `b` and `t`:
    ///
    /// 1. `v_n = Σ_{d|n} (d/n) t_d b_{n/d}` over all divisors, `d = 1` included;
    /// 2. `β_n = -Σ_{s=1}^n (s/n) v_s β_{n-s}`;
    /// 3. `Σ_{s<R} β_s T_{n-s} = v_n + (1/n) Σ_{r<R} β_r Σ_{s=R-r}^{n-R} s v_s T_{n-r-s}`
    ///    for `1 <= R <= 6` and `n >= 2R - 1`. Below `2R - 1` the inner ranges
    ///    overlap and the identity does not hold.
    pub fn check_lemma2_identities(&self, n_max: usize) -> CheckResult {
        let n_max = n_max.min(self.order());
        for n in 1..=n_max {
            let lhs = &self.v[n];
            let rhs: Rat = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| rat::frac(d as i64, n as i64) * &self.primes[d] * &self.b[n / d])
                .sum();
            if *lhs != rhs {
                return Err(mismatch("divisor sum for v", n, lhs, &rhs));
            }

            let rhs: Rat = -(1..=n)
                .map(|s| rat::frac(s as i64, n as i64) * &self.v[s] * &self.beta[n - s])
                .sum::<Rat>();
            if self.beta[n] != rhs {
                return Err(mismatch("beta from v", n, &self.beta[n], &rhs));
            }

            for r_cap in 1..=6usize {
                if n + 1 < 2 * r_cap {
                    break;
                }
                let (lhs, rhs) = self.lemma2_part3_sides(n, r_cap);
                if lhs != rhs {
                    return Err(mismatch(format!("truncated beta sum (R = {r_cap})"), n, &lhs, &rhs));
                }
            }
        }
        Ok(())
    }

    /// Both sides of the truncated `β` identity at `(n, R)`.
    pub fn lemma2_part3_sides(&self, n: usize, r_cap: usize) -> (Rat, Rat) {
        let lhs: Rat = (0..r_cap.min(n + 1)).map(|s| &self.beta[s] * &self.totals[n - s]).sum();
        let mut inner_total = Rat::zero();
        for r in 0..r_cap {
            let lo = r_cap - r;
            let hi = n as i64 - r_cap as i64;
            let mut inner = Rat::zero();
            let mut s = lo as i64;
            while s <= hi {
                let su = s as usize;
                if n >= r + su {
                    inner += rat::int(s) * &self.v[su] * &self.totals[n - r - su];
                }
                s += 1;
            }
            inner_total += &self.beta[r] * inner;
        }
        let rhs = &self.v[n] + inner_total / rat::int(n as i64);
        (lhs, rhs)
    }

    /// `a_1 Σ_{0 <= s < n/2} T_s t_{n-s} <= T_n`. Needs `t >= 0`.
    ///
    /// For even `n` the term `s = n/2` is left out: the factor carrying
    /// `t_{n/2}` contributes `t a_2 + C(t,2) a_1^2` to `T_n`, which can be
    /// smaller than `a_1 T_{n/2} t_{n/2}` (e.g. `t_5 = 1`, `a = 1, 1, 0, ...`).
    pub fn check_lemma3(&self, n_max: usize) -> CheckResult {
        if let Some(m) = self.primes.iter().position(Signed::is_negative) {
            return Err(Failure {
                check: "lemma 3 precondition".into(),
                n: m,
                detail: format!("t_{m} = {} is negative", self.primes[m]),
            });
        }
        for n in 1..=n_max.min(self.order()) {
            let lhs = self.lemma3_lhs(n);
            if lhs > self.totals[n] {
                return Err(Failure {
                    check: "lemma 3 inequality".into(),
                    n,
                    detail: format!("{lhs} > T_n = {}", self.totals[n]),
                });
            }
        }
        Ok(())
    }

    pub fn lemma3_lhs(&self, n: usize) -> Rat {
        self.lemma3_partial_sum(n, n.div_ceil(2))
    }

    /// The sum with the upper limit `⌊n/2⌋`, including the `s = n/2` term.
    pub fn lemma3_lhs_inclusive(&self, n: usize) -> Rat {
        self.lemma3_partial_sum(n, n / 2 + 1)
    }

    fn lemma3_partial_sum(&self, n: usize, end: usize) -> Rat {
        let sum: Rat = (0..end).map(|s| &self.totals[s] * &self.primes[n - s]).sum();
        &self.weights[1] * sum
    }

    /// `|v_n - a_1 t_n| / D_{n-R}` where `D` is `T` or `t`; rows with a zero
    /// denominator carry no ratio.
    pub fn lemma4_table(&self, r_cap: usize, n_max: usize, denom: Denominator) -> Table {
        let mut table = Table::new(format!("|v_n - a_1 t_n| / {}_(n-{r_cap})", denom.symbol()));
        for n in r_cap.max(1)..=n_max.min(self.order()) {
            let num = (&self.v[n] - &self.weights[1] * &self.primes[n]).abs();
            let d = match denom {
                Denominator::Totals => &self.totals[n - r_cap],
                Denominator::Primes => &self.primes[n - r_cap],
            };
            table.push(n, (!d.is_zero()).then(|| num / d));
        }
        table
    }

    /// Finite-range versions of the four equivalent growth conditions:
    /// self-convolution of `T`, the `β`-approximation of `a_1 t_n`, the
    /// `t`-approximation of `T_n`, and self-convolution of `t`.
    pub fn theorem5_tables(&self, r_cap: usize, n_max: usize) -> Theorem5Tables {
        let n_max = n_max.min(self.order());
        let a1 = &self.weights[1];
        let mut out = Theorem5Tables {
            totals_convolution: Table::new(format!("sum_(s={r_cap})^(n-{r_cap}) T_s T_(n-s) / T_(n-{r_cap})")),
            beta_approximation: Table::new(format!("(a_1 t_n - sum_(s<{r_cap}) beta_s T_(n-s)) / T_(n-{r_cap})")),
            primes_approximation: Table::new(format!("(T_n - a_1 sum_(s<{r_cap}) T_s t_(n-s)) / t_(n-{r_cap})")),
            primes_convolution: Table::new(format!("sum_(s={r_cap})^(n-{r_cap}) t_s t_(n-s) / t_(n-{r_cap})")),
            totals_successive: successive_ratios(&self.totals, "T", n_max),
            primes_successive: successive_ratios(&self.primes, "t", n_max),
        };
        for n in r_cap.max(1)..=n_max {
            let t_den = &self.totals[n - r_cap];
            let p_den = &self.primes[n - r_cap];
            let conv = self_convolution(&self.totals, r_cap, n);
            out.totals_convolution.push(n, (!t_den.is_zero()).then(|| conv / t_den));
            let approx: Rat = (0..r_cap).map(|s| &self.beta[s] * &self.totals[n - s]).sum();
            let resid = a1 * &self.primes[n] - approx;
            out.beta_approximation.push(n, (!t_den.is_zero()).then(|| resid / t_den));
            let approx: Rat = (0..r_cap).map(|s| &self.totals[s] * &self.primes[n - s]).sum();
            let resid = &self.totals[n] - a1 * approx;
            out.primes_approximation.push(n, (!p_den.is_zero()).then(|| resid / p_den));
            let conv = self_convolution(&self.primes, r_cap, n);
            out.primes_convolution.push(n, (!p_den.is_zero()).then(|| conv / p_den));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Denominator {
    Totals,
    Primes,
}

impl Denominator {
    fn symbol(self) -> &'static str {
        match self {
            Self::Totals => "T",
            Self::Primes => "t",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Theorem5Tables {
    pub totals_convolution: Table,
    pub beta_approximation: Table,
    pub primes_approximation: Table,
    pub primes_convolution: Table,
    pub totals_successive: Table,
    pub primes_successive: Table,
}

/// `Σ_{s=R}^{n-R} x_s x_{n-s}`; empty (zero) when `n < 2R`.
pub fn self_convolution(seq: &[Rat], r_cap: usize, n: usize) -> Rat {
    if n < 2 * r_cap {
        return Rat::zero();
    }
    (r_cap..=n - r_cap).map(|s| &seq[s] * &seq[n - s]).sum()
}

/// `x_{n-1} / x_n` for `1 <= n <= n_max`.
pub fn successive_ratios(seq: &[Rat], symbol: &str, n_max: usize) -> Table {
    let mut table = Table::new(format!("{symbol}_(n-1) / {symbol}_n"));
    for n in 1..=n_max.min(seq.len() - 1) {
        table.push(n, (!seq[n].is_zero()).then(|| &seq[n - 1] / &seq[n]));
    }
    table
}

/// Growth diagnostics for a count sequence `G`: the self-convolution ratio
/// `Σ_{s=R}^{n-R} G_s G_{n-s} / G_{n-R}` and the successive ratio
/// `G_{n-1} / G_n`.
#[derive(Clone, Debug)]
pub struct AxiomDiagnostic {
    pub r_cap: usize,
    pub convolution: Table,
    pub successive: Table,
}

pub fn check_axiom_wr(counts: &[Rat], r_cap: usize, n_max: usize) -> Result<AxiomDiagnostic> {
    if counts.first().is_none_or(|g| !g.is_one()) {
        return Err(Error::InvalidParameter("G_0 must be 1".into()));
    }
    if r_cap == 0 {
        return Err(Error::InvalidParameter("R must be positive".into()));
    }
    let n_max = n_max.min(counts.len() - 1);
    let mut convolution = Table::new(format!("sum_(s={r_cap})^(n-{r_cap}) G_s G_(n-s) / G_(n-{r_cap})"));
    for n in r_cap..=n_max {
        let d = &counts[n - r_cap];
        let conv = self_convolution(counts, r_cap, n);
        convolution.push(n, (!d.is_zero()).then(|| conv / d));
    }
    Ok(AxiomDiagnostic {
        r_cap,
        convolution,
        successive: successive_ratios(counts, "G", n_max),
    })
}
