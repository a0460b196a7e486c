//! Concrete additive arithmetical semigroups: exact counts `G_n`, prime
//! counts `G_n^+` by Euler-product inversion, growth metadata, and the count
//! ratio expansion `G_{n-1}/G_n = Σ_s ψ_s(n) q^{-sn}` where one exists.

mod fq;
mod graphs;

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use fq::{fq_poly_count, fq_ratio_expansion, is_prime_power};
pub use graphs::{
    centralizer_order, derive_phi, even_edge_graph_count, graph_count, pair_orbit_count, pair_orbits,
    partitions, psi_from_phi, CycleType,
};

use crate::polyasym::{Poly, PolyExpansion};
use crate::rat::{self, Rat};
use crate::triples::{invert_to_primes, WarlimontTriple};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Graphs,
    EvenGraphs,
    FqPoly { q: u64, k: u32 },
    /// User-supplied counts `G_0..G_N`.
    Explicit(Vec<BigInt>),
}

/// `q = radicand^{1/root}`; the growth base `e^{α(a+1)}` of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthBase {
    pub radicand: Rat,
    pub root: u64,
}

impl GrowthBase {
    /// `q^e` when it is rational, i.e. when `root` divides `e`.
    pub fn pow_exact(&self, e: i64) -> Option<Rat> {
        (e % self.root as i64 == 0).then(|| rat::pow(&self.radicand, e / self.root as i64))
    }

    pub fn ln(&self) -> f64 {
        rat::ln_abs(&self.radicand) / self.root as f64
    }
}

/// Declared growth law `log G_n = α n^{a+1} + β n log n + γ n + O(n^b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthLaw {
    pub alpha: f64,
    pub a: u32,
    pub beta: f64,
    pub gamma: f64,
    pub b: f64,
    pub base: GrowthBase,
}

impl GrowthLaw {
    pub fn leading(&self, n: f64) -> f64 {
        let nlogn = if n > 0.0 { n * n.ln() } else { 0.0 };
        self.alpha * n.powi(self.a as i32 + 1) + self.beta * nlogn + self.gamma * n
    }
}

/// A semigroup with memoized exact counts.
#[derive(Debug)]
pub struct Semigroup {
    kind: Kind,
    cache: Mutex<Vec<BigInt>>,
}

impl Clone for Semigroup {
    fn clone(&self) -> Self {
        Self {
            kind: self.kind.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl Semigroup {
    fn with_kind(kind: Kind) -> Self {
        Self {
            kind,
            cache: Mutex::new(Vec::new()),
        }
    }

    pub fn graphs() -> Self {
        Self::with_kind(Kind::Graphs)
    }

    pub fn even_graphs() -> Self {
        Self::with_kind(Kind::EvenGraphs)
    }

    pub fn fq_poly(q: u64, k: u32) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::InvalidParameter(format!("q = {q} is not a prime power")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("need at least one variable".into()));
        }
        Ok(Self::with_kind(Kind::FqPoly { q, k }))
    }

    pub fn explicit(counts: Vec<BigInt>) -> Result<Self> {
        if counts.first().is_none_or(|g| !g.is_one()) {
            return Err(Error::InvalidParameter("explicit counts must start with G_0 = 1".into()));
        }
        if counts.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("counts must be non-negative".into()));
        }
        Ok(Self::with_kind(Kind::Explicit(counts)))
    }

    /// Selection by name: `graphs`, `even-graphs`, `fq-poly` (needs `q`, `k`).
    pub fn from_name(name: &str, q: Option<u64>, k: Option<u32>) -> Result<Self> {
        match name {
            "graphs" => Ok(Self::graphs()),
            "even-graphs" => Ok(Self::even_graphs()),
            "fq-poly" => {
                let q = q.ok_or_else(|| Error::InvalidParameter("fq-poly needs q".into()))?;
                let k = k.ok_or_else(|| Error::InvalidParameter("fq-poly needs k".into()))?;
                Self::fq_poly(q, k)
            }
            other => Err(Error::UnknownSemigroup(other.to_string())),
        }
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            Kind::Graphs => "graphs",
            Kind::EvenGraphs => "even-graphs",
            Kind::FqPoly { .. } => "fq-poly",
            Kind::Explicit(_) => "explicit",
        }
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        if let Kind::FqPoly { q, k } = self.kind {
            out.insert("q".into(), q.to_string());
            out.insert("k".into(), k.to_string());
        }
        out
    }

    /// Largest degree with a known count, if bounded.
    pub fn max_degree(&self) -> Option<usize> {
        match &self.kind {
            Kind::Explicit(c) => Some(c.len() - 1),
            _ => None,
        }
    }

    fn compute(&self, n: usize) -> BigInt {
        match &self.kind {
            Kind::Graphs => graph_count(n as u64),
            Kind::EvenGraphs => even_edge_graph_count(n as u64),
            Kind::FqPoly { q, k } => fq_poly_count(*q, *k, n as u64),
            Kind::Explicit(c) => c[n].clone(),
        }
    }

    /// `G_0..=G_N`.
    pub fn counts(&self, n_max: usize) -> Result<Vec<BigInt>> {
        if let Some(max) = self.max_degree() {
            if n_max > max {
                return Err(Error::TooLarge { n: n_max, max });
            }
        }
        let mut cache = self.cache.lock().unwrap();
        while cache.len() <= n_max {
            let n = cache.len();
            cache.push(self.compute(n));
        }
        Ok(cache[..=n_max].to_vec())
    }

    pub fn count(&self, n: usize) -> Result<BigInt> {
        Ok(self.counts(n)?.pop().unwrap())
    }

    pub fn counts_rat(&self, n_max: usize) -> Result<Vec<Rat>> {
        Ok(self.counts(n_max)?.iter().map(rat::from_big).collect())
    }

    /// Prime counts `G_0^+ = 0, G_1^+, ..., G_N^+`.
    pub fn primes(&self, n_max: usize) -> Result<Vec<BigInt>> {
        let counts = self.counts_rat(n_max)?;
        let inv = invert_to_primes(&counts, &vec![Rat::one(); n_max + 1])?;
        inv.as_integers().ok_or_else(|| {
            Error::InvalidParameter(format!("{} counts are not freely generated", self.name()))
        })
    }

    /// The triple `(G, G^+, 1)`.
    pub fn triple(&self, n_max: usize) -> Result<WarlimontTriple> {
        WarlimontTriple::from_totals(&self.counts_rat(n_max)?, &vec![Rat::one(); n_max + 1])
    }

    /// Growth law of a Wright semigroup; `None` for models that are not
    /// (one-variable polynomials, explicit sequences).
    pub fn growth(&self) -> Option<GrowthLaw> {
        let ln2 = std::f64::consts::LN_2;
        match self.kind {
            Kind::Graphs | Kind::EvenGraphs => Some(GrowthLaw {
                alpha: ln2 / 2.0,
                a: 1,
                beta: -1.0,
                gamma: 1.0 - ln2 / 2.0,
                b: 0.5,
                base: GrowthBase {
                    radicand: rat::int(2),
                    root: 1,
                },
            }),
            Kind::FqPoly { q, k } if k >= 2 => {
                let lnq = (q as f64).ln();
                let k_fact: f64 = (1..=k).map(f64::from).product();
                let harmonic: f64 = (1..=k).map(|i| 1.0 / f64::from(i)).sum();
                let root: u64 = (1..k as u64).product();
                Some(GrowthLaw {
                    alpha: lnq / k_fact,
                    a: k - 1,
                    beta: 0.0,
                    gamma: lnq * harmonic,
                    b: if k == 2 { 0.5 } else { f64::from(k - 1) },
                    base: GrowthBase {
                        radicand: rat::int(q as i64),
                        root,
                    },
                })
            }
            _ => None,
        }
    }

    pub fn is_wright(&self) -> bool {
        self.growth().is_some()
    }

    /// Degree parameters `(d_1, d_2)` with `deg ψ_s <= d_1 s - d_2`, for
    /// models that carry a ratio expansion.
    pub fn degree_bounds(&self) -> Option<(u32, u32)> {
        match self.kind {
            Kind::Graphs | Kind::EvenGraphs => Some((2, 1)),
            Kind::FqPoly { k: 2, .. } => Some((0, 0)),
            _ => None,
        }
    }

    /// `φ_0..=φ_{s_max}` for the graph models. For graphs with an even number
    /// of edges the same polynomials apply with an extra global factor `1/2`.
    pub fn phi(&self, s_max: usize) -> Option<Vec<Poly>> {
        matches!(self.kind, Kind::Graphs | Kind::EvenGraphs).then(|| derive_phi(s_max))
    }

    /// `ψ_0 = 0, ψ_1, ..., ψ_{R-1}` with `G_{n-1}/G_n = Σ_s ψ_s(n) q^{-sn} + O(...)`.
    pub fn ratio_expansion(&self, order: usize) -> Result<PolyExpansion> {
        if order == 0 {
            return Err(Error::InvalidParameter("R must be positive".into()));
        }
        match &self.kind {
            Kind::Graphs | Kind::EvenGraphs => psi_from_phi(&derive_phi(order - 1), order),
            Kind::FqPoly { q, k } => {
                if *k >= 3 {
                    return Err(Error::GrowthExponent(k - 1));
                }
                fq_ratio_expansion(*q, *k, order)
            }
            Kind::Explicit(_) => Err(Error::NoRatioExpansion(
                "explicit count sequences carry no ratio expansion".into(),
            )),
        }
    }
}

/// One row of [`wright_log_profile`].
#[derive(Clone, Debug, PartialEq)]
pub struct LogProfileRow {
    pub n: usize,
    pub log_count: f64,
    /// `log G_n` minus the declared `α n^{a+1} + β n log n + γ n`.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogProfile {
    pub law: Option<GrowthLaw>,
    pub rows: Vec<LogProfileRow>,
}

impl LogProfile {
    pub fn is_wright(&self) -> bool {
        self.law.is_some()
    }
}

/// `log G_n` and its residual against the declared growth law, `1 <= n <= N`.
///
/// This is the only floating-point computation in the crate and is a
/// diagnostic; the logarithm of each exact count is taken from its leading
/// bits, so the values are accurate to `f64` precision for any size.
pub fn wright_log_profile(model: &Semigroup, n_max: usize) -> Result<LogProfile> {
    let counts = model.counts(n_max)?;
    let law = model.growth();
    let rows = (1..=n_max)
        .map(|n| {
            let log_count = rat::ln_big(&counts[n]);
            let residual = law.as_ref().map(|l| log_count - l.leading(n as f64));
            LogProfileRow { n, log_count, residual }
        })
        .collect();
    Ok(LogProfile { law, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_by_name() {
        assert_eq!(Semigroup::from_name("graphs", None, None).unwrap().name(), "graphs");
        let fq = Semigroup::from_name("fq-poly", Some(4), Some(2)).unwrap();
        assert_eq!(fq.params().get("q").unwrap(), "4");
        assert!(matches!(Semigroup::from_name("trees", None, None), Err(Error::UnknownSemigroup(_))));
        assert!(Semigroup::from_name("fq-poly", Some(6), Some(2)).is_err());
        assert!(Semigroup::from_name("fq-poly", Some(2), None).is_err());
    }

    #[test]
    fn graph_primes_are_connected_counts() {
        let g = Semigroup::graphs();
        let p = g.primes(7).unwrap();
        assert_eq!(p, [0, 1, 1, 2, 6, 21, 112, 853].map(BigInt::from).to_vec());
    }

    #[test]
    fn explicit_model() {
        let m = Semigroup::explicit([1, 1, 1, 1].map(BigInt::from).to_vec()).unwrap();
        assert_eq!(m.primes(3).unwrap(), [0, 1, 0, 0].map(BigInt::from).to_vec());
        assert!(matches!(m.counts(4), Err(Error::TooLarge { .. })));
        assert!(m.ratio_expansion(3).is_err());
        assert!(Semigroup::explicit(vec![BigInt::from(2)]).is_err());
    }

    #[test]
    fn ratio_expansion_guards() {
        let fq3 = Semigroup::fq_poly(2, 3).unwrap();
        assert_eq!(fq3.ratio_expansion(3), Err(Error::GrowthExponent(2)));
        let fq1 = Semigroup::fq_poly(2, 1).unwrap();
        assert!(fq1.ratio_expansion(3).is_err());
        assert!(!fq1.is_wright());
    }

    #[test]
    fn growth_bases() {
        let g = Semigroup::graphs().growth().unwrap();
        assert!((g.base.ln() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((g.alpha * 2.0 - g.base.ln()).abs() < 1e-15);
        let f = Semigroup::fq_poly(2, 3).unwrap().growth().unwrap();
        assert_eq!(f.a, 2);
        assert!((f.alpha * 3.0 - f.base.ln()).abs() < 1e-15);
        assert_eq!(f.base.pow_exact(4), Some(rat::int(4)));
        assert_eq!(f.base.pow_exact(3), None);
    }

    #[test]
    fn concurrent_counts_agree() {
        let g = std::sync::Arc::new(Semigroup::graphs());
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let g = g.clone();
                std::thread::spawn(move || g.counts(10 + i).unwrap()[..=10].to_vec())
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
