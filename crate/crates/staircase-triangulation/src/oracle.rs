//! Normalized volume of `Delta_n x Delta_{k-1}` from brute-force lattice point
//! counts of its dilates.

use num_bigint::BigInt;
use num_traits::Zero;

/// Number of lattice points of `t * Delta_m` by direct enumeration.
fn simplex_points(m: usize, t: i64) -> i64 {
    fn rec(parts: usize, left: i64) -> i64 {
        if parts == 1 {
            return 1;
        }
        (0..=left).map(|first| rec(parts - 1, left - first)).sum()
    }
    rec(m + 1, t)
}

/// Lattice points of `t * (Delta_n x Delta_{k-1})`.
pub fn product_points(n: usize, k: usize, t: i64) -> i64 {
    simplex_points(n, t) * simplex_points(k - 1, t)
}

/// `d!` times the leading Ehrhart coefficient, via the d-th finite difference.
pub fn normalized_volume(n: usize, k: usize) -> BigInt {
    let d = n + k - 1;
    let mut seq: Vec<BigInt> = (0..=d as i64).map(|t| BigInt::from(product_points(n, k, t))).collect();
    for _ in 0..d {
        seq = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    seq.into_iter().next().unwrap_or_else(BigInt::zero)
}
