//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of `x^0..=x^N`;
//! everything above `x^N` is unknown. Binary operations on series of orders
//! `N1` and `N2` produce a series of order `min(N1, N2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{self, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// The series `x` (or `0` at order zero).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    /// Builds a series of the given order from a prefix of coefficients.
    /// Missing coefficients are zero; extra ones are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order + 1, Rat::zero());
        Self { coeffs }
    }

    /// Series whose order is `coeffs.len() - 1`.
    pub fn from_vec(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        Self::from_vec(values.into_iter().map(rat::int).collect())
    }

    pub fn from_bigints(values: &[BigInt]) -> Self {
        Self::from_vec(values.iter().map(rat::from_big).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rat> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: out })
    }

    /// Formal logarithm of a series with constant term 1, through the
    /// derivative recursion `n L_n = n s_n - Σ_{k<n} k L_k s_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm(self.coeffs[0].to_string()));
        }
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for n in 1..=self.order() {
            let mut acc = rat::int(n as i64) * &self.coeffs[n];
            for k in 1..n {
                if !out[k].is_zero() && !self.coeffs[n - k].is_zero() {
                    acc -= rat::int(k as i64) * &out[k] * &self.coeffs[n - k];
                }
            }
            out[n] = acc / rat::int(n as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// Formal exponential of a series with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm(self.coeffs[0].to_string()));
        }
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        out[0] = Rat::one();
        for n in 1..=self.order() {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += rat::int(k as i64) * &self.coeffs[k] * &out[n - k];
                }
            }
            out[n] = acc / rat::int(n as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// `self^e` by binary exponentiation; `s^0 = 1`.
    pub fn int_pow(&self, e: &BigUint) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base);
            }
            if i + 1 < bits {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn pow(&self, e: u64) -> Self {
        self.int_pow(&BigUint::from(e))
    }

    /// Substitutes `x -> x^m`, keeping the coefficients up to `order`.
    pub fn dilate(&self, m: usize, order: usize) -> Self {
        assert!(m >= 1);
        let mut out = vec![Rat::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = k * m;
            if idx > order {
                break;
            }
            out[idx] = c.clone();
        }
        Self { coeffs: out }
    }
}

/// `Π_{m=1}^{N} (Σ_k a_k x^{km})^{t_m}` truncated at `x^N`.
///
/// Both sequences are indexed by degree: `t[m]` is the exponent of the
/// degree-`m` factor (`t[0]` is ignored) and must be present for
/// `1 <= m <= N`. Entries of `a` past its end are zero. Negative exponents
/// are applied through the series inverse.
pub fn euler_product(t: &[BigInt], a: &[Rat], order: usize) -> Result<TruncatedSeries> {
    if a.first().is_none_or(|a0| !a0.is_one()) {
        let found = a.first().map_or_else(|| "nothing".to_string(), |v| v.to_string());
        return Err(Error::EulerLeadingTerm(found));
    }
    if t.len() < order + 1 {
        return Err(Error::InvalidParameter(format!(
            "exponent sequence has {} entries, need t_1..t_{order}",
            t.len().saturating_sub(1)
        )));
    }
    let mut acc = TruncatedSeries::one(order);
    for (m, tm) in t.iter().enumerate().take(order + 1).skip(1) {
        if tm.is_zero() {
            continue;
        }
        // The factor only involves powers of x^m, so work in z = x^m first.
        let reduced_order = order / m;
        let base = TruncatedSeries::from_coeffs(a.to_vec(), reduced_order);
        let mut factor = base.int_pow(tm.magnitude());
        if tm.sign() == Sign::Minus {
            factor = factor.inverse()?;
        }
        acc = acc.mul(&factor.dilate(m, order));
    }
    Ok(acc)
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// JSON form: an array of canonical rational strings, index = power of x.
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(rat::to_string))
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(D::Error::custom("a series needs at least one coefficient"));
        }
        let coeffs = raw
            .iter()
            .map(|s| rat::parse(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }
}
