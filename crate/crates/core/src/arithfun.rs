//! Prime-independent multiplicative functions on a semigroup.
//!
//! Such a function is fixed by its values `F_k^+ = F(k p)` on prime powers.
//! Its degree totals `F_n = Σ_{∂g = n} F(g)` are the coefficients of
//! `Π_m (Σ_k F_k^+ x^{km})^{G_m^+}`, and its normalized moments are
//! `μ_{F,M}(n) = (1/G_n) Σ_{∂g = n} (F(g)/F_1^+ - 1)^M`, expanded with the
//! binomial theorem into totals of the pointwise powers `F^m`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::rat::{self, Rat};
use crate::semigroups::{partitions, Semigroup};
use crate::series::euler_product;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    One,
    Divisor(u32),
    Unitary,
    PrimeDivisor,
    Custom(Vec<Rat>),
}

/// A function given by its prime-power values, optionally raised to a
/// pointwise power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WarlimontFn {
    rule: Rule,
    power: u32,
}

impl WarlimontFn {
    fn new(rule: Rule) -> Self {
        Self { rule, power: 1 }
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self::new(Rule::One)
    }

    /// `d_k`, the number of ordered `k`-fold decompositions: `binom(n+k-1, k-1)`.
    pub fn dk(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("d_k needs k >= 2, got {k}")));
        }
        Ok(Self::new(Rule::Divisor(k)))
    }

    /// Unitary divisor function: 2 on every prime power.
    pub fn dstar() -> Self {
        Self::new(Rule::Unitary)
    }

    /// `B(Σ k_i p_i) = Π k_i`: `n` on the `n`-th prime power.
    pub fn big_b() -> Self {
        Self::new(Rule::PrimeDivisor)
    }

    /// Explicit values `F_1^+, F_2^+, ...`.
    pub fn custom(values: Vec<Rat>) -> Result<Self> {
        match values.first() {
            Some(v) if v.is_positive() => {}
            _ => return Err(Error::InvalidParameter("F_1^+ must be positive".into())),
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("prime-power values must be non-negative".into()));
        }
        Ok(Self::new(Rule::Custom(values)))
    }

    /// `one`, `d2`, `d3`, ..., `dstar`, `bigB`, or `custom` with values.
    pub fn from_name(name: &str, custom: Option<Vec<Rat>>) -> Result<Self> {
        match name {
            "one" => Ok(Self::one()),
            "dstar" => Ok(Self::dstar()),
            "bigB" => Ok(Self::big_b()),
            "custom" => Self::custom(
                custom.ok_or_else(|| Error::InvalidParameter("custom needs a value list".into()))?,
            ),
            d if d.starts_with('d') => {
                let k: u32 = d[1..].parse().map_err(|_| Error::UnknownFunction(name.to_string()))?;
                Self::dk(k)
            }
            _ => Err(Error::UnknownFunction(name.to_string())),
        }
    }

    pub fn name(&self) -> String {
        let base = match &self.rule {
            Rule::One => "one".to_string(),
            Rule::Divisor(k) => format!("d{k}"),
            Rule::Unitary => "dstar".to_string(),
            Rule::PrimeDivisor => "bigB".to_string(),
            Rule::Custom(_) => "custom".to_string(),
        };
        if self.power == 1 {
            base
        } else {
            format!("{base}^{}", self.power)
        }
    }

    /// `F^m`, the pointwise power; `m = 0` gives the constant function.
    pub fn power(&self, m: u32) -> Self {
        Self {
            rule: self.rule.clone(),
            power: self.power * m,
        }
    }

    fn base_value(&self, k: usize) -> Result<Rat> {
        if k == 0 {
            return Ok(Rat::one());
        }
        Ok(match &self.rule {
            Rule::One => Rat::one(),
            Rule::Divisor(d) => {
                Rat::from_integer(BigInt::from(rat::binomial((k + *d as usize - 1) as u64, (*d - 1) as u64)))
            }
            Rule::Unitary => rat::int(2),
            Rule::PrimeDivisor => rat::int(k as i64),
            Rule::Custom(v) => v.get(k - 1).cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("custom values stop at F_{}^+, need F_{k}^+", v.len()))
            })?,
        })
    }

    /// `F_k^+`, with `F_0^+ = 1`.
    pub fn prime_power_value(&self, k: usize) -> Result<Rat> {
        Ok(num_traits::pow(self.base_value(k)?, self.power as usize))
    }

    /// `F_0^+ = 1, F_1^+, ..., F_N^+`.
    pub fn values(&self, n_max: usize) -> Result<Vec<Rat>> {
        (0..=n_max).map(|k| self.prime_power_value(k)).collect()
    }

    pub fn f1_plus(&self) -> Rat {
        self.prime_power_value(1).expect("F_1^+ always exists")
    }
}

/// Degree totals `F_0 = 1, F_1, ..., F_N` from prime counts `primes[1..=N]`.
pub fn fn_totals(f: &WarlimontFn, primes: &[BigInt], n_max: usize) -> Result<Vec<Rat>> {
    Ok(euler_product(primes, &f.values(n_max)?, n_max)?.into_coeffs())
}

pub const ORACLE_MAX_DEGREE: usize = 10;

/// `F_n` by explicit enumeration of prime factorization shapes, without any
/// power series.
///
/// An element of degree `n` picks, for each degree `m`, a multiset of
/// exponents `{e}` assigned to distinct primes of degree `m`, with
/// `Σ_m m Σ e = n`. If the exponent `e` is used `c_e` times among `j`
/// primes, there are `G_m^+ (G_m^+ - 1) ... (G_m^+ - j + 1) / Π c_e!` such
/// assignments, each contributing `Π F_e^+`.
pub fn oracle_prime_multiset(f: &WarlimontFn, primes: &[BigInt], n: usize) -> Result<Rat> {
    if n > ORACLE_MAX_DEGREE {
        return Err(Error::TooLarge { n, max: ORACLE_MAX_DEGREE });
    }
    if primes.len() <= n {
        return Err(Error::InvalidParameter(format!("need prime counts up to degree {n}")));
    }
    let values = f.values(n)?;
    Ok(enumerate_shapes(1, n, primes, &values))
}

fn enumerate_shapes(m: usize, rest: usize, primes: &[BigInt], values: &[Rat]) -> Rat {
    if rest == 0 {
        return Rat::one();
    }
    if m > rest {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    // exponent sum k at degree m uses m * k of the remaining degree
    for k in 0..=rest / m {
        let below = enumerate_shapes(m + 1, rest - m * k, primes, values);
        if below.is_zero() {
            continue;
        }
        let here: Rat = if k == 0 {
            Rat::one()
        } else {
            partitions(k as u64, 1)
                .iter()
                .map(|shape| shape_weight(&primes[m], shape, values))
                .sum()
        };
        total += here * below;
    }
    total
}

fn shape_weight(available: &BigInt, shape: &[(u64, u64)], values: &[Rat]) -> Rat {
    let used: u64 = shape.iter().map(|&(_, c)| c).sum();
    let mut ways = BigInt::one();
    for i in 0..used {
        ways *= available - BigInt::from(i);
    }
    if ways.is_zero() {
        return Rat::zero();
    }
    let mut w = Rat::from_integer(ways);
    for &(e, c) in shape {
        w /= Rat::from_integer(BigInt::from(rat::factorial(c)));
        w *= num_traits::pow(values[e as usize].clone(), c as usize);
    }
    w
}

/// Exact `μ_{F,M}(n)` for `0 <= n <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub function: String,
    pub moment: u32,
    pub entries: Vec<Rat>,
}

/// Totals of `F^0, F^1, ..., F^M` on a semigroup, computed once.
#[derive(Clone, Debug)]
pub struct PowerTotals {
    pub counts: Vec<Rat>,
    /// `totals[m][n] = (F^m)_n`, unnormalized.
    pub totals: Vec<Vec<Rat>>,
    pub f1_plus: Rat,
}

impl PowerTotals {
    pub fn compute(f: &WarlimontFn, semigroup: &Semigroup, moment: u32, n_max: usize) -> Result<Self> {
        let primes = semigroup.primes(n_max)?;
        let totals = (0..=moment)
            .into_par_iter()
            .map(|m| fn_totals(&f.power(m), &primes, n_max))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            counts: semigroup.counts_rat(n_max)?,
            totals,
            f1_plus: f.f1_plus(),
        })
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// `Σ_{∂g = n} (F̃(g) - 1)^M = (-1)^M Σ_m (-1)^m C(M,m) (F^m)_n / (F_1^+)^m`.
    pub fn central_sum(&self, n: usize) -> Rat {
        let moment = self.totals.len() - 1;
        let mut acc = Rat::zero();
        for m in 0..=moment {
            let c = Rat::from_integer(BigInt::from(rat::binomial(moment as u64, m as u64)));
            let term = c * &self.totals[m][n] / num_traits::pow(self.f1_plus.clone(), m);
            if (moment - m).is_multiple_of(2) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    pub fn moment(&self, n: usize) -> Rat {
        self.central_sum(n) / &self.counts[n]
    }
}

pub fn moment_table(f: &WarlimontFn, semigroup: &Semigroup, moment: u32, n_max: usize) -> Result<MomentTable> {
    if moment == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    let pt = PowerTotals::compute(f, semigroup, moment, n_max)?;
    Ok(MomentTable {
        function: f.name(),
        moment,
        entries: (0..=n_max).map(|n| pt.moment(n)).collect(),
    })
}

/// `μ_{F,M}(n)`.
pub fn exact_moment(f: &WarlimontFn, semigroup: &Semigroup, moment: u32, n: usize) -> Result<Rat> {
    Ok(moment_table(f, semigroup, moment, n)?.entries.swap_remove(n))
}

/// Multiset coefficient `C(g + j - 1, j)`: ways to pick `j` primes of one
/// degree with repetition out of `g`.
pub fn multiset_count(available: &BigUint, j: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..j {
        acc = acc * (available + BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn graph_primes(n: usize) -> Vec<BigInt> {
        Semigroup::graphs().primes(n).unwrap()
    }

    #[test]
    fn value_rules() {
        let d2 = WarlimontFn::dk(2).unwrap();
        assert_eq!(d2.values(4).unwrap(), vec![int(1), int(2), int(3), int(4), int(5)]);
        assert_eq!(WarlimontFn::dk(3).unwrap().prime_power_value(2).unwrap(), int(6));
        assert!(WarlimontFn::dk(1).is_err());
        let ds = WarlimontFn::dstar();
        assert_eq!(ds.prime_power_value(1).unwrap(), int(2));
        assert_eq!(ds.prime_power_value(7).unwrap(), int(2));
        let b = WarlimontFn::big_b();
        assert_eq!(b.prime_power_value(5).unwrap(), int(5));
        assert_eq!(b.f1_plus(), int(1));
        assert_eq!(d2.power(2).values(3).unwrap(), vec![int(1), int(4), int(9), int(16)]);
        assert_eq!(d2.power(1), d2);
        assert_eq!(d2.power(2).name(), "d2^2");
    }

    #[test]
    fn names_and_custom() {
        assert_eq!(WarlimontFn::from_name("d3", None).unwrap(), WarlimontFn::dk(3).unwrap());
        assert!(matches!(WarlimontFn::from_name("sigma", None), Err(Error::UnknownFunction(_))));
        let c = WarlimontFn::from_name("custom", Some(vec![frac(1, 2), int(3)])).unwrap();
        assert_eq!(c.prime_power_value(2).unwrap(), int(3));
        assert!(c.prime_power_value(3).is_err());
        assert!(WarlimontFn::custom(vec![int(0)]).is_err());
        assert!(WarlimontFn::custom(vec![int(1), int(-1)]).is_err());
    }

    #[test]
    fn totals_on_graphs() {
        let primes = graph_primes(4);
        let d2 = WarlimontFn::dk(2).unwrap();
        assert_eq!(fn_totals(&d2, &primes, 4).unwrap(), vec![int(1), int(2), int(5), int(12), int(34)]);
        assert_eq!(oracle_prime_multiset(&d2, &primes, 4).unwrap(), int(34));
        let one = WarlimontFn::one();
        for n in 0..=4 {
            assert_eq!(
                oracle_prime_multiset(&one, &primes, n).unwrap(),
                Rat::from_integer(Semigroup::graphs().count(n).unwrap())
            );
        }
    }

    #[test]
    fn oracle_guard() {
        let primes = graph_primes(11);
        assert!(matches!(
            oracle_prime_multiset(&WarlimontFn::one(), &primes, 11),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn moments() {
        let g = Semigroup::graphs();
        let d2 = WarlimontFn::dk(2).unwrap();
        assert_eq!(exact_moment(&d2, &g, 1, 2).unwrap(), frac(1, 4));
        // the identity has normalized value 1 / F_1^+
        assert_eq!(exact_moment(&d2, &g, 1, 0).unwrap(), frac(-1, 2));
        assert_eq!(exact_moment(&WarlimontFn::big_b(), &g, 1, 0).unwrap(), int(0));
        let e = Semigroup::even_graphs();
        assert_eq!(exact_moment(&WarlimontFn::dstar(), &e, 2, 3).unwrap(), int(0));
        assert!(moment_table(&d2, &g, 0, 3).is_err());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(&BigUint::from(3u32), 2), BigUint::from(6u32));
        assert_eq!(multiset_count(&BigUint::from(0u32), 0), BigUint::from(1u32));
    }
}
