//! Polynomials in `n` and asymptotic expansions `Σ_{s<R} p_s(n) q^{-sn}`.
//!
//! Writing `y = q^{-n}`, an expansion is a truncated power series in `y`
//! whose coefficients are polynomials in `n`. Substituting `n -> n - c`
//! turns `q^{-sn}` into `q^{cs} q^{-sn}`, which is how products of shifted
//! count ratios are assembled.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{self, Rat};
use crate::{Error, Result};

/// Polynomial in `n` with exact coefficients, index = power of `n`.
/// Never has trailing zero coefficients; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// From integer coefficients in ascending powers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat::int(c)).collect())
    }

    /// Falling factorial `n (n-1) ... (n-k+1)`.
    pub fn falling_factorial(k: usize) -> Self {
        (0..k).fold(Self::constant(Rat::one()), |acc, i| {
            acc.mul(&Self::new(vec![rat::int(-(i as i64)), Rat::one()]))
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, n: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_int(&self, n: i64) -> Rat {
        self.eval(&rat::int(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(n - c)` expanded in powers of `n`.
    pub fn shift(&self, c: i64) -> Self {
        if c == 0 {
            return self.clone();
        }
        // Horner in the shifted variable: p(n - c) = (...(a_d (n-c) + a_{d-1})(n-c) ...).
        let linear = Self::new(vec![rat::int(-c), Rat::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(&linear).add(&Self::constant(a.clone())))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "n")?;
                    } else {
                        write!(f, "n^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(rat::to_string))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| rat::parse(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

/// `Σ_{s=0}^{R-1} p_s(n) q^{-sn}` with exact base `q > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpansion {
    base: Rat,
    terms: Vec<Poly>,
}

impl PolyExpansion {
    pub fn new(base: Rat, terms: Vec<Poly>) -> Result<Self> {
        if base <= Rat::one() {
            return Err(Error::InvalidParameter(format!("expansion base must exceed 1, got {base}")));
        }
        if terms.is_empty() {
            return Err(Error::InvalidParameter("expansion needs at least one term".into()));
        }
        Ok(Self { base, terms })
    }

    /// The constant expansion `1` with `order` terms.
    pub fn one(base: Rat, order: usize) -> Result<Self> {
        let mut terms = vec![Poly::zero(); order];
        if let Some(t) = terms.first_mut() {
            *t = Poly::constant(Rat::one());
        }
        Self::new(base, terms)
    }

    /// A single term `p(n) q^{-sn}` inside an expansion with `order` terms.
    pub fn monomial(base: Rat, s: usize, p: Poly, order: usize) -> Result<Self> {
        let mut terms = vec![Poly::zero(); order];
        if s < order {
            terms[s] = p;
        }
        Self::new(base, terms)
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    /// Number of stored terms `R`.
    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, s: usize) -> &Poly {
        &self.terms[s]
    }

    pub fn terms(&self) -> &[Poly] {
        &self.terms
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order());
        Self {
            base: self.base.clone(),
            terms: self.terms[..order].to_vec(),
        }
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base.to_string(), other.base.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let order = self.order().min(other.order());
        let terms = (0..order).map(|s| self.terms[s].add(&other.terms[s])).collect();
        Ok(Self { base: self.base.clone(), terms })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            base: self.base.clone(),
            terms: self.terms.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let order = self.order().min(other.order());
        let mut terms = vec![Poly::zero(); order];
        for (u, p) in self.terms[..order].iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (v, r) in other.terms[..order - u].iter().enumerate() {
                if !r.is_zero() {
                    terms[u + v] = terms[u + v].add(&p.mul(r));
                }
            }
        }
        Ok(Self { base: self.base.clone(), terms })
    }

    /// The expansion of the same quantity at `n - c`: term `s` becomes
    /// `p_s(n - c) q^{cs}`.
    pub fn shift_substitute(&self, c: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(s, p)| p.shift(c as i64).scale(&rat::pow(&self.base, c as i64 * s as i64)))
            .collect();
        Self { base: self.base.clone(), terms }
    }

    /// `1/e = Σ_r (1 - e)^r`, defined when the leading term is exactly 1.
    pub fn geometric_inverse(&self) -> Result<Self> {
        if self.terms[0] != Poly::constant(Rat::one()) {
            return Err(Error::GeometricLeadingTerm);
        }
        let one = Self::one(self.base.clone(), self.order())?;
        let deficit = one.add(&self.scale(&rat::int(-1)))?;
        let mut power = one.clone();
        let mut acc = one;
        // deficit has no constant term, so deficit^r vanishes for r >= R.
        for _ in 1..self.order() {
            power = power.mul(&deficit)?;
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Exact value of the truncated sum at integer `n`.
    pub fn eval(&self, n: i64) -> Rat {
        let y = rat::pow(&self.base, -n);
        let mut weight = Rat::one();
        let mut acc = Rat::zero();
        for p in &self.terms {
            if !p.is_zero() {
                acc += p.eval_int(n) * &weight;
            }
            weight *= &y;
        }
        acc
    }

    /// Largest degree among the terms.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.iter().filter_map(Poly::degree).max()
    }
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    base: String,
    terms: Vec<Poly>,
}

/// JSON form `{ "base": "p/q", "terms": [[c0, c1, ...], ...] }`.
impl Serialize for PolyExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            base: rat::to_string(&self.base),
            terms: self.terms.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ExpansionJson::deserialize(deserializer)?;
        let base = rat::parse(&raw.base).map_err(D::Error::custom)?;
        Self::new(base, raw.terms).map_err(D::Error::custom)
    }
}
