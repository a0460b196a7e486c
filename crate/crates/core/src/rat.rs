//! Exact rational scalars and the handful of integer helpers shared by the
//! other modules.
//!
//! [`Rat`] is always kept in lowest terms with a positive denominator. Its
//! canonical string form is `"p/q"`, or `"p"` when `q = 1`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_big(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

/// Canonical string form, `"p/q"` or `"p"`.
pub fn to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(num, den))
}

/// `r^e` for a possibly negative exponent; `r` must be nonzero when `e < 0`.
pub fn pow(r: &Rat, e: i64) -> Rat {
    let mag = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Exact integer value of `r`, if it has denominator one.
pub fn as_integer(r: &Rat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

/// `ln |r|` for a nonzero rational, robust to values far outside `f64` range.
pub fn ln_abs(r: &Rat) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

/// `ln |v|` for a nonzero big integer.
pub fn ln_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        let f: f64 = num_traits::ToPrimitive::to_f64(&v.abs()).unwrap_or(f64::INFINITY);
        return f.ln();
    }
    let shift = bits - 64;
    let top: BigInt = v.abs() >> shift;
    let f: f64 = num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::INFINITY);
    f.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let s = if r.is_negative() { -1.0 } else { 1.0 };
    s * ln_abs(r).exp()
}

pub fn gcd_u(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(to_string(&frac(-128, 3)), "-128/3");
        assert_eq!(to_string(&frac(6, 3)), "2");
        assert_eq!(parse("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse("17").unwrap(), int(17));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(factorial(5), BigUint::from(120u32));
    }

    #[test]
    fn logs_of_huge_values() {
        let big = BigInt::one() << 5000u32;
        assert!((ln_big(&big) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert!((to_f64(&frac(3, 8)) - 0.375).abs() < 1e-15);
    }
}
