//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semigroup_moments::rat::{self, Rat};

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b) as usize] = a.min(b);
        }
    }
}

/// Unlabeled graphs on `n` vertices split by edge parity, found by merging
/// every labeled graph with its images under a transposition and an
/// `n`-cycle (which generate the symmetric group) and counting classes.
/// Returns `(all, even)`.
pub fn brute_force_graph_orbits(n: usize) -> (u64, u64) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let images = |perm: &dyn Fn(usize) -> usize| -> Vec<usize> {
        pairs.iter().map(|&(i, j)| index(perm(i), perm(j))).collect()
    };
    let swap = images(&|v| match v {
        0 => 1,
        1 => 0,
        v => v,
    });
    let rotate = images(&|v| (v + 1) % n);
    let total = 1usize << pairs.len();
    let mut uf = UnionFind::new(total);
    let apply = |g: usize, map: &[usize]| {
        map.iter()
            .enumerate()
            .filter(|&(e, _)| g >> e & 1 == 1)
            .fold(0usize, |acc, (_, &img)| acc | 1 << img)
    };
    if n >= 2 {
        for g in 0..total {
            uf.union(g as u32, apply(g, &swap) as u32);
            uf.union(g as u32, apply(g, &rotate) as u32);
        }
    }
    let mut all = 0;
    let mut even = 0;
    for g in 0..total {
        if uf.find(g as u32) == g as u32 {
            all += 1;
            if g.count_ones() % 2 == 0 {
                even += 1;
            }
        }
    }
    (all, even)
}

/// `[x^n] (Σ G_m x^m)^k` by repeated convolution.
pub fn k_fold_convolution(counts: &[BigInt], k: usize) -> Vec<BigInt> {
    let n = counts.len();
    let mut acc = vec![BigInt::from(0); n];
    acc[0] = BigInt::from(1);
    for _ in 0..k {
        let mut next = vec![BigInt::from(0); n];
        for (i, a) in acc.iter().enumerate() {
            for (j, c) in counts[..n - i].iter().enumerate() {
                next[i + j] += a * c;
            }
        }
        acc = next;
    }
    acc
}

/// Random triple data with small non-negative prime counts and weights
/// `a_0 = a_1 = 1`, `a_k` in `{0, 1/2, 1, ..., 3}`.
pub fn random_admissible(rng: &mut ChaCha8Rng, order: usize) -> (Vec<BigInt>, Vec<Rat>) {
    let mut t = vec![BigInt::from(0)];
    t.extend((1..=order).map(|_| BigInt::from(rng.gen_range(0..=3))));
    let mut a = vec![rat::int(1), rat::int(1)];
    a.extend((2..=order).map(|_| rat::frac(rng.gen_range(0..=6), 2)));
    (t, a)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
