//! Independent oracle: works from raw distances only, enumerating subsets
//! in order of size.

#![allow(dead_code)]

use itertools::Itertools;
use kmetric_core::FiniteMetricSpace;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Distinguisher masks `{x : d(x,u) != d(x,v)}` for every pair `u < v`.
pub fn masks(space: &FiniteMetricSpace) -> Vec<u64> {
    let n = space.len();
    assert!(n <= 63);
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let m = (0..n)
                .filter(|&x| space.dist(x, u) != space.dist(x, v))
                .fold(0u64, |m, x| m | 1 << x);
            out.push(m);
        }
    }
    out
}

/// `dim_k` by exhaustive search, `None` for infinity.
pub fn oracle_dim(space: &FiniteMetricSpace, k: usize) -> Option<usize> {
    let n = space.len();
    let masks = masks(space);
    (k..=n).find(|&size| {
        (0..n).combinations(size).any(|c| {
            let s = c.iter().fold(0u64, |m, &x| m | 1 << x);
            masks.iter().all(|&m| (m & s).count_ones() as usize >= k)
        })
    })
}

/// `(dim_1, dim_2, ...)` up to the first infinite entry.
pub fn oracle_sequence(space: &FiniteMetricSpace) -> Vec<usize> {
    (1..).map_while(|k| oracle_dim(space, k)).collect()
}
