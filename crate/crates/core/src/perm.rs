//! Permutations in one-line notation, classical pattern occurrences, and the
//! exhaustive enumerators that every closed form in this crate is checked
//! against.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest `n` the involution enumerator accepts unless a caller raises it.
pub const DEFAULT_INVOLUTION_CAP: usize = 14;

/// Largest `n` the full symmetric-group enumerator accepts by default.
pub const DEFAULT_SYMMETRIC_CAP: usize = 10;

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} is outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("entry {v} repeats")));
            }
        }
        Ok(Permutation { entries })
    }

    /// Builds from entries already known to be a bijection on `1..=n`.
    pub(crate) fn from_trusted(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn empty() -> Self {
        Permutation {
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// The decreasing permutation `k, k-1, ..., 1`.
    pub fn decreasing(k: usize) -> Self {
        Permutation {
            entries: (1..=k).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn is_involution(&self) -> bool {
        is_involution_slice(&self.entries)
    }

    /// Entries written in reverse order.
    pub fn reverse(&self) -> Permutation {
        let mut entries = self.entries.clone();
        entries.reverse();
        Permutation { entries }
    }

    /// Number of index sets `i_1 < ... < i_k` whose values are order-isomorphic
    /// to `pattern`. The empty pattern occurs exactly once.
    pub fn count_occurrences(&self, pattern: &Permutation) -> BigUint {
        BigUint::from(count_occurrences_capped(
            &self.entries,
            &pattern.entries,
            u128::MAX,
        ))
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        count_occurrences_capped(&self.entries, &pattern.entries, 0) > 0
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// Lexicographically first occurrence of `pattern`, as 1-based positions.
    pub fn first_occurrence(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        let matcher = Matcher::new(&pattern.entries);
        let mut chosen = vec![0; pattern.len()];
        if matcher.find_first(&self.entries, 0, 0, &mut chosen) {
            Some(chosen.into_iter().map(|i| i + 1).collect())
        } else {
            None
        }
    }
}

impl fmt::Display for Permutation {
    /// Single digits are concatenated (`4231`); longer permutations use commas.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() <= 9 {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `4231`, `4,2,3,1` or `4 2 3 1`. The empty string is the empty
    /// permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let separated = s.contains(',') || s.contains(char::is_whitespace);
        let entries = if separated {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(entries)
    }
}

pub(crate) fn is_involution_slice(entries: &[usize]) -> bool {
    entries
        .iter()
        .enumerate()
        .all(|(i, &v)| entries[v - 1] == i + 1)
}

/// Per-step value bounds for extending a partial occurrence of a pattern.
///
/// When the `j`-th pattern letter is placed, its value must lie strictly
/// between the values already chosen for its nearest smaller and nearest
/// larger predecessors in the pattern. Those two comparisons fix its rank
/// among all earlier letters.
struct Matcher {
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl Matcher {
    fn new(pattern: &[usize]) -> Self {
        let k = pattern.len();
        let mut below = Vec::with_capacity(k);
        let mut above = Vec::with_capacity(k);
        for j in 0..k {
            let t = pattern[j];
            let lo = (0..j)
                .filter(|&i| pattern[i] < t)
                .max_by_key(|&i| pattern[i]);
            let hi = (0..j)
                .filter(|&i| pattern[i] > t)
                .min_by_key(|&i| pattern[i]);
            below.push(lo);
            above.push(hi);
        }
        Matcher { below, above }
    }

    fn len(&self) -> usize {
        self.below.len()
    }

    fn window(&self, host: &[usize], j: usize, chosen: &[usize]) -> (usize, usize) {
        let lo = self.below[j].map_or(0, |i| host[chosen[i]]);
        let hi = self.above[j].map_or(usize::MAX, |i| host[chosen[i]]);
        (lo, hi)
    }

    /// Counts completions of a partial occurrence, stopping once the running
    /// total exceeds `cap`.
    fn count(
        &self,
        host: &[usize],
        j: usize,
        start: usize,
        chosen: &mut [usize],
        cap: u128,
        total: &mut u128,
    ) {
        let k = self.len();
        let (lo, hi) = self.window(host, j, chosen);
        let last = host.len() + j + 1 - k;
        if j + 1 == k {
            for &v in &host[start..last] {
                if v > lo && v < hi {
                    *total += 1;
                    if *total > cap {
                        return;
                    }
                }
            }
            return;
        }
        for pos in start..last {
            let v = host[pos];
            if v > lo && v < hi {
                chosen[j] = pos;
                self.count(host, j + 1, pos + 1, chosen, cap, total);
                if *total > cap {
                    return;
                }
            }
        }
    }

    fn find_first(&self, host: &[usize], j: usize, start: usize, chosen: &mut [usize]) -> bool {
        let k = self.len();
        if j == k {
            return true;
        }
        let (lo, hi) = self.window(host, j, chosen);
        let last = host.len() + j + 1 - k;
        for pos in start..last {
            let v = host[pos];
            if v > lo && v < hi {
                chosen[j] = pos;
                if self.find_first(host, j + 1, pos + 1, chosen) {
                    return true;
                }
            }
        }
        false
    }
}

/// Exact occurrence count of `pattern` in `host`, except that counting stops
/// as soon as the total exceeds `cap` (the returned value is then `cap + 1`).
pub fn count_occurrences_capped(host: &[usize], pattern: &[usize], cap: u128) -> u128 {
    if pattern.is_empty() {
        return 1;
    }
    if pattern.len() > host.len() {
        return 0;
    }
    let matcher = Matcher::new(pattern);
    let mut chosen = vec![0; pattern.len()];
    let mut total = 0;
    matcher.count(host, 0, 0, &mut chosen, cap, &mut total);
    total
}

/// Exact occurrence counts of several patterns in one permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceProfile {
    pub counts: BTreeMap<Permutation, BigUint>,
}

impl OccurrenceProfile {
    pub fn of<'a>(p: &Permutation, patterns: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let counts = patterns
            .into_iter()
            .map(|t| (t.clone(), p.count_occurrences(t)))
            .collect();
        OccurrenceProfile { counts }
    }

    /// Occurrence count of `pattern`, or `None` if it was not profiled.
    pub fn get(&self, pattern: &Permutation) -> Option<&BigUint> {
        self.counts.get(pattern)
    }

    pub fn avoids(&self, pattern: &Permutation) -> Option<bool> {
        self.get(pattern).map(|c| *c == BigUint::ZERO)
    }
}

/// Involutions of `1..=n` in lexicographic order of one-line notation.
///
/// Generated as matchings: the smallest open position is either a fixed
/// point or paired with a larger open position, tried in increasing order.
pub struct Involutions {
    n: usize,
    entries: Vec<usize>,
    // (position, partner) for every assignment made, in order
    stack: Vec<(usize, usize)>,
    started: bool,
    done: bool,
}

impl Involutions {
    fn new(n: usize) -> Self {
        Involutions {
            n,
            entries: vec![0; n],
            stack: Vec::with_capacity(n),
            started: false,
            done: false,
        }
    }

    fn assign(&mut self, pos: usize, partner: usize) {
        self.entries[pos] = partner + 1;
        self.entries[partner] = pos + 1;
        self.stack.push((pos, partner));
    }

    fn fill_fixed(&mut self) {
        for pos in 0..self.n {
            if self.entries[pos] == 0 {
                self.assign(pos, pos);
            }
        }
    }

    fn advance(&mut self) -> bool {
        while let Some((pos, partner)) = self.stack.pop() {
            self.entries[pos] = 0;
            self.entries[partner] = 0;
            let next = (partner + 1..self.n).find(|&j| self.entries[j] == 0);
            if let Some(j) = next {
                self.assign(pos, j);
                self.fill_fixed();
                return true;
            }
        }
        false
    }
}

impl Iterator for Involutions {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_fixed();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(Permutation {
            entries: self.entries.clone(),
        })
    }
}

/// Every involution of length `n`, refusing `n` above [`DEFAULT_INVOLUTION_CAP`].
pub fn enumerate_involutions(n: usize) -> Result<Involutions> {
    enumerate_involutions_capped(n, DEFAULT_INVOLUTION_CAP)
}

pub fn enumerate_involutions_capped(n: usize, cap: usize) -> Result<Involutions> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(Involutions::new(n))
}

/// All of `S_n` in lexicographic order.
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_lex(&mut succ) {
            self.current = Some(succ);
        }
        Some(Permutation { entries: cur })
    }
}

fn next_lex(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

pub fn enumerate_permutations(n: usize) -> Result<Permutations> {
    enumerate_permutations_capped(n, DEFAULT_SYMMETRIC_CAP)
}

pub fn enumerate_permutations_capped(n: usize, cap: usize) -> Result<Permutations> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(Permutations {
        current: Some((1..=n).collect()),
    })
}

/// "Contains `pattern` exactly `count` times"; `count == 0` is avoidance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub pattern: Permutation,
    pub count: u64,
}

impl Constraint {
    pub fn exactly(pattern: Permutation, count: u64) -> Self {
        Constraint { pattern, count }
    }

    pub fn avoids(pattern: Permutation) -> Self {
        Constraint { pattern, count: 0 }
    }

    pub fn holds_for(&self, entries: &[usize]) -> bool {
        let cap = u128::from(self.count);
        count_occurrences_capped(entries, self.pattern.entries(), cap) == cap
    }
}

fn satisfies_all(entries: &[usize], constraints: &[Constraint]) -> bool {
    constraints.iter().all(|c| c.holds_for(entries))
}

/// Number of involutions of length `n` meeting every constraint, by exhaustive
/// enumeration.
pub fn oracle_count(n: usize, constraints: &[Constraint]) -> Result<BigUint> {
    oracle_count_capped(n, constraints, DEFAULT_INVOLUTION_CAP)
}

pub fn oracle_count_capped(n: usize, constraints: &[Constraint], cap: usize) -> Result<BigUint> {
    let count = enumerate_involutions_capped(n, cap)?
        .filter(|p| satisfies_all(p.entries(), constraints))
        .count();
    Ok(BigUint::from(count))
}

/// Several independent [`oracle_count`] queries answered in one pass over
/// the involutions of length `n`; result `i` answers `constraint_sets[i]`.
pub fn oracle_count_many(n: usize, constraint_sets: &[Vec<Constraint>]) -> Result<Vec<BigUint>> {
    tally_many(enumerate_involutions(n)?, constraint_sets)
}

/// [`oracle_count_many`] over all of `S_n`.
pub fn oracle_count_symmetric_many(
    n: usize,
    constraint_sets: &[Vec<Constraint>],
) -> Result<Vec<BigUint>> {
    tally_many(enumerate_permutations(n)?, constraint_sets)
}

fn tally_many(
    perms: impl Iterator<Item = Permutation> + Send,
    constraint_sets: &[Vec<Constraint>],
) -> Result<Vec<BigUint>> {
    use rayon::prelude::*;
    let counts = perms
        .par_bridge()
        .fold(
            || vec![0u64; constraint_sets.len()],
            |mut acc, p| {
                for (slot, set) in acc.iter_mut().zip(constraint_sets) {
                    if satisfies_all(p.entries(), set) {
                        *slot += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; constraint_sets.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );
    Ok(counts.into_iter().map(BigUint::from).collect())
}

/// Same as [`oracle_count`] but over all of `S_n`.
pub fn oracle_count_symmetric(n: usize, constraints: &[Constraint]) -> Result<BigUint> {
    let count = enumerate_permutations(n)?
        .filter(|p| satisfies_all(p.entries(), constraints))
        .count();
    Ok(BigUint::from(count))
}

/// Shorthand used throughout tests and the verifier.
pub fn perm(entries: &[usize]) -> Permutation {
    Permutation::new(entries.to_vec()).expect("valid permutation literal")
}
