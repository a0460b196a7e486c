//! Unlabeled graphs counted through the cycle types of vertex permutations.
//!
//! A permutation of cycle type `λ` fixes exactly `2^{c(λ)}` labeled graphs,
//! where `c(λ)` is the number of orbits it induces on vertex pairs. Summing
//! over cycle types with weight `1 / z_λ` gives the number of unlabeled
//! graphs. Restricting to permutations whose non-fixed part has a given
//! type, and keeping `n` symbolic, gives the polynomials `φ_s` of
//! `G_n n! / 2^{C(n,2)} = Σ_s φ_s(n) 2^{-sn}`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::polyasym::{Poly, PolyExpansion};
use crate::rat::{self, Rat};
use crate::Result;

/// A cycle type as `(length, multiplicity)` pairs with distinct lengths.
pub type CycleType = Vec<(u64, u64)>;

/// All partitions of `n` with parts at least `min_part`, as cycle types.
pub fn partitions(n: u64, min_part: u64) -> Vec<CycleType> {
    fn rec(rest: u64, max_part: u64, min_part: u64, cur: &mut Vec<u64>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            let mut ty: CycleType = Vec::new();
            for &p in cur.iter() {
                match ty.last_mut() {
                    Some((len, mult)) if *len == p => *mult += 1,
                    _ => ty.push((p, 1)),
                }
            }
            out.push(ty);
            return;
        }
        let mut p = max_part.min(rest);
        while p >= min_part {
            cur.push(p);
            rec(rest - p, p, min_part, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

/// `z_λ = Π_ℓ ℓ^{m_ℓ} m_ℓ!`, the centralizer order.
pub fn centralizer_order(ty: &CycleType) -> BigUint {
    ty.iter().fold(BigUint::one(), |acc, &(len, mult)| {
        acc * BigUint::from(len).pow(mult as u32) * rat::factorial(mult)
    })
}

/// Lengths (with multiplicities) of the orbits on unordered vertex pairs.
pub fn pair_orbits(ty: &CycleType) -> Vec<(u64, u64)> {
    let mut orbits: Vec<(u64, u64)> = Vec::new();
    for (i, &(l, m)) in ty.iter().enumerate() {
        // pairs inside one cycle of length l
        if l % 2 == 1 {
            orbits.push((l, m * (l - 1) / 2));
        } else {
            orbits.push((l, m * (l / 2 - 1)));
            orbits.push((l / 2, m));
        }
        // pairs across two distinct cycles of the same length
        orbits.push((l, l * m * (m.saturating_sub(1)) / 2));
        for &(l2, m2) in &ty[i + 1..] {
            let g = l.gcd(&l2);
            orbits.push((l * l2 / g, g * m * m2));
        }
    }
    orbits.retain(|&(_, count)| count > 0);
    orbits
}

pub fn pair_orbit_count(ty: &CycleType) -> u64 {
    pair_orbits(ty).iter().map(|&(_, c)| c).sum()
}

/// Number of unlabeled simple graphs on `n` vertices.
pub fn graph_count(n: u64) -> BigInt {
    let n_fact = rat::factorial(n);
    let total: BigUint = partitions(n, 1)
        .iter()
        .map(|ty| (&n_fact / centralizer_order(ty)) << pair_orbit_count(ty))
        .sum();
    BigInt::from(total / n_fact)
}

/// Number of unlabeled simple graphs on `n` vertices with an even number of
/// edges. A permutation fixes `2^c` graphs in total and, among them, the
/// signed count `Π_orbits (1 + (-1)^len)` which is `2^c` when every pair
/// orbit has even length and zero otherwise.
pub fn even_edge_graph_count(n: u64) -> BigInt {
    let n_fact = rat::factorial(n);
    let mut total = BigUint::zero();
    for ty in partitions(n, 1) {
        let perms = &n_fact / centralizer_order(&ty);
        let orbits = pair_orbits(&ty);
        let c: u64 = orbits.iter().map(|&(_, k)| k).sum();
        let all_even = orbits.iter().all(|&(len, _)| len % 2 == 0);
        let fixed = BigUint::one() << c;
        total += &perms * &fixed;
        if all_even {
            total += &perms * &fixed;
        }
    }
    BigInt::from(total / (n_fact * BigUint::from(2u32)))
}

/// `φ_0..=φ_{s_max}` with `G_n n! / 2^{C(n,2)} = Σ_s φ_s(n) 2^{-sn}`.
///
/// A permutation of `n` points whose moved points have cycle type `μ` (all
/// parts at least 2, `k = |μ|` points, level `s = Σ (ℓ_i - 1)`) occurs
/// `n(n-1)...(n-k+1) / z_μ` times and fixes `2^{c}` graphs with
/// `c - C(n,2) = -s n + k s + c_μ - C(k,2)`, `c_μ` being the pair-orbit count
/// of `μ` on its own support. Since the falling factorial vanishes for
/// `k > n`, the sum over all levels is exact for every `n`.
pub fn derive_phi(s_max: usize) -> Vec<Poly> {
    let mut phi = vec![Poly::zero(); s_max + 1];
    phi[0] = Poly::constant(Rat::one());
    for (s, slot) in phi.iter_mut().enumerate().skip(1) {
        for levels in partitions(s as u64, 1) {
            let ty: CycleType = levels.iter().map(|&(j, m)| (j + 1, m)).collect();
            let k: u64 = ty.iter().map(|&(l, m)| l * m).sum();
            let exponent = (k * s as u64 + pair_orbit_count(&ty)) as i64 - (k * (k - 1) / 2) as i64;
            let weight = rat::pow(&rat::int(2), exponent)
                / Rat::from_integer(BigInt::from(centralizer_order(&ty)));
            *slot = slot.add(&Poly::falling_factorial(k as usize).scale(&weight));
        }
    }
    phi
}

/// Ratio expansion `G_{n-1}/G_n = Σ_{s=1}^{R-1} ψ_s(n) 2^{-sn}` obtained from
/// `2n 2^{-n} Φ(n-1) / Φ(n)` with `Φ(n) = Σ_s φ_s(n) 2^{-sn}`. Uses
/// `φ_0..φ_{R-1}`; the returned expansion has `ψ_0 = 0`.
pub fn psi_from_phi(phi: &[Poly], order: usize) -> Result<PolyExpansion> {
    assert!(order >= 1 && phi.len() >= order, "need phi_0..phi_(R-1)");
    let two = rat::int(2);
    let big_phi = PolyExpansion::new(two.clone(), phi[..order].to_vec())?;
    let prefactor = PolyExpansion::monomial(two, 1, Poly::from_ints(&[0, 2]), order)?;
    prefactor
        .mul(&big_phi.shift_substitute(1))?
        .mul(&big_phi.geometric_inverse()?)
}
