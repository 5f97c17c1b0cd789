//! Exact enumeration of involutions restricted by the pattern 231.
//!
//! The crate is organised bottom-up:
//!
//! - [`perm`]: permutations, pattern occurrences, exhaustive oracles
//! - [`fibonacci`]: k-generalized Fibonacci numbers and tiling counts
//! - [`layered`]: layered permutations as compositions
//! - [`series`]: truncated power series with big-integer coefficients
//! - [`enumeration`]: closed-form counts and generating functions
//! - [`bijection`]: one-231 involutions and red/blue tilings
//! - [`verify`]: the identity suites the CLI and acceptance tests run
//!
//! Every count is an exact [`BigUint`].

pub mod bijection;
pub mod enumeration;
pub mod error;
pub mod fibonacci;
pub mod layered;
pub mod perm;
pub mod series;
pub mod verify;

pub use num_bigint::{BigInt, BigUint};

pub use bijection::{
    enumerate_redblue, involution_to_tiling, tiling_to_involution, RedBlueTiling, RedPlacement,
    Tile,
};
pub use error::{Error, Result};
pub use fibonacci::{count_bounded_tilings, fib_k, FibParams};
pub use layered::{
    build_layered, count_pattern_in_layered, decompose_layered, enumerate_layered, Composition,
    LayeredPattern,
};
pub use perm::{
    enumerate_involutions, oracle_count, oracle_count_many, oracle_count_symmetric, Constraint,
    OccurrenceProfile, Permutation, DEFAULT_INVOLUTION_CAP, DEFAULT_SYMMETRIC_CAP,
};
pub use series::{geom_denominator, BiSeries, UniSeries, DEFAULT_TRUNC};
pub use verify::{IdentityReport, VerifyConfig};

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 5), BigUint::ZERO);
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(24, 4), BigUint::from(10626u32));
        let pascal_ok = (1..40)
            .all(|n| (1..n).all(|k| binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)));
        assert!(pascal_ok);
    }
}
