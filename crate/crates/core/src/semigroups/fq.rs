//! Nonzero polynomials in `k` variables over `F_q`, up to scalars, graded by
//! total degree.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::polyasym::{Poly, PolyExpansion};
use crate::rat::{self, Rat};
use crate::{Error, Result};

/// `G_n = (q^{C(n+k,k)} - q^{C(n-1+k,k)}) / (q - 1)`, with `G_0 = 1`.
pub fn fq_poly_count(q: u64, k: u32, n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let k = k as u64;
    let qb = BigUint::from(q);
    let hi = exp_u32(&rat::binomial(n + k, k));
    let lo = exp_u32(&rat::binomial(n - 1 + k, k));
    BigInt::from((qb.pow(hi) - qb.pow(lo)) / (qb - BigUint::one()))
}

fn exp_u32(e: &BigUint) -> u32 {
    u32::try_from(e).expect("monomial count exceeds u32; degree too large")
}

/// For two variables,
/// `G_{n-1}/G_n = q^{-n-1} (1 - q^{-n}) / (1 - q^{-n-1})
///  = q^{-1} q^{-n} + Σ_{s>=2} q^{-s}(1 - q) q^{-sn}`.
pub fn fq_ratio_expansion(q: u64, k: u32, order: usize) -> Result<PolyExpansion> {
    if k != 2 {
        return Err(Error::NoRatioExpansion(format!(
            "the count ratio of F_q[x_1..x_{k}] has a constant-coefficient expansion only for k = 2"
        )));
    }
    let qr = rat::int(q as i64);
    let mut terms = vec![Poly::zero(); order];
    for (s, term) in terms.iter_mut().enumerate().skip(1) {
        let c = if s == 1 {
            qr.recip()
        } else {
            rat::pow(&qr, -(s as i64)) * (Rat::one() - &qr)
        };
        *term = Poly::constant(c);
    }
    PolyExpansion::new(qr, terms)
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}
