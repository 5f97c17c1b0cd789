//! k-generalized Fibonacci numbers and bounded-part tiling counts.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;

/// Order and index of a k-generalized Fibonacci number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FibParams {
    pub k: usize,
    pub n: i64,
}

impl FibParams {
    pub fn value(self) -> BigUint {
        fib_k(self.k, self.n)
    }
}

// Per-order tables of F_{k,0}, F_{k,1}, ... grown on demand.
fn cache() -> &'static RwLock<HashMap<usize, Vec<BigUint>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Vec<BigUint>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `F_{k,n}`: zero for `n <= 0`, one at `n = 1`, and for `n >= 2` the sum of the
/// previous `k` terms. Order zero gives 1 at `n = 1` and 0 everywhere else.
pub fn fib_k(k: usize, n: i64) -> BigUint {
    if n <= 0 {
        return BigUint::ZERO;
    }
    let idx = n as usize;
    if let Some(v) = cache()
        .read()
        .expect("fibonacci cache poisoned")
        .get(&k)
        .and_then(|t| t.get(idx))
    {
        return v.clone();
    }
    let mut guard = cache().write().expect("fibonacci cache poisoned");
    let table = guard
        .entry(k)
        .or_insert_with(|| vec![BigUint::ZERO, BigUint::from(1u32)]);
    while table.len() <= idx {
        let m = table.len();
        // F_{k,m} = sum of F_{k,m-i} for i = 1..=k, terms with index <= 0 vanish
        let lo = m.saturating_sub(k).max(1);
        let next: BigUint = table[lo..m].iter().sum();
        table.push(next);
    }
    table[idx].clone()
}

/// Number of ordered ways to tile a `1 x n` strip with tiles of length
/// `1..=k`, found by walking every tiling.
///
/// This deliberately does not use the recurrence, so it can serve as an
/// independent check on [`fib_k`].
pub fn count_bounded_tilings(n: usize, k: usize) -> BigUint {
    fn walk(remaining: usize, k: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (1..=k.min(remaining))
            .map(|part| walk(remaining - part, k))
            .sum()
    }
    assert!(k >= 1, "tiles need positive length");
    BigUint::from(walk(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn ordinary_fibonacci() {
        let got: Vec<_> = (0..=6).map(|n| fib_k(2, n)).collect();
        let want: Vec<_> = [0, 1, 1, 2, 3, 5, 8].into_iter().map(big).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn order_zero_and_negative_index() {
        assert_eq!(fib_k(0, 1), big(1));
        assert_eq!(fib_k(0, 5), big(0));
        assert_eq!(fib_k(0, 2), big(0));
        assert_eq!(fib_k(7, -3), big(0));
        assert_eq!(fib_k(7, 0), big(0));
    }

    #[test]
    fn tribonacci() {
        assert_eq!(fib_k(3, 5), big(7));
        assert_eq!(FibParams { k: 3, n: 6 }.value(), big(13));
    }

    #[test]
    fn order_one_is_constant() {
        for n in 1..30 {
            assert_eq!(fib_k(1, n), big(1));
        }
    }

    #[test]
    fn tiling_examples() {
        assert_eq!(count_bounded_tilings(0, 3), big(1));
        assert_eq!(count_bounded_tilings(3, 2), big(3));
        assert_eq!(count_bounded_tilings(5, 3), big(13));
        assert_eq!(count_bounded_tilings(5, 3), fib_k(3, 6));
    }

    #[test]
    fn tilings_match_recurrence() {
        for k in 1..=5 {
            for n in 0..=15 {
                assert_eq!(
                    count_bounded_tilings(n, k),
                    fib_k(k, n as i64 + 1),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn unrestricted_tilings_are_powers_of_two() {
        for n in 1..=12usize {
            for k in n..n + 3 {
                assert_eq!(fib_k(k, n as i64 + 1), big(1 << (n - 1)));
            }
        }
    }

    #[test]
    fn monotone_in_order() {
        for k in 0..8 {
            for n in 1..25 {
                assert!(fib_k(k, n) <= fib_k(k + 1, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn large_values_are_exact() {
        // F_100 of the ordinary sequence
        let f100: BigUint = "354224848179261915075".parse().unwrap();
        assert_eq!(fib_k(2, 100), f100);
    }

    #[test]
    fn concurrent_access_is_consistent() {
        let handles: Vec<_> = (0..8)
            .map(|t| {
                std::thread::spawn(move || (0..60).map(|n| fib_k(3 + t % 3, n)).collect::<Vec<_>>())
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (t, r) in results.iter().enumerate() {
            let fresh: Vec<_> = (0..60).map(|n| fib_k(3 + t % 3, n)).collect();
            assert_eq!(r, &fresh);
        }
    }
}
