//! Layered permutations and their composition encoding.
//!
//! A composition `[l_1, ..., l_m]` stands for the permutation made of
//! decreasing blocks of lengths `l_1, ..., l_m`, each block's values lying
//! above every earlier block. The same composition is a tiling of a `1 x n`
//! strip by tiles of those lengths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::binomial;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Ordered sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!(
                "part {} is zero",
                pos + 1
            )));
        }
        Ok(Composition { parts })
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    /// `[1, 1, ..., 1, l]` with `ones` leading ones.
    pub fn ones_then(ones: usize, last: usize) -> Result<Self> {
        let mut parts = vec![1; ones];
        parts.push(last);
        Composition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn last(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// Composition with the last part removed.
    pub fn prefix(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.pop();
        Composition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `[1,4]`; whitespace around parts is allowed, `[]` is empty.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("composition {s:?} is not bracketed")))?;
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// A layered permutation used as a pattern, with its gap caps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayeredPattern {
    comp: Composition,
}

impl LayeredPattern {
    pub fn new(comp: Composition) -> Result<Self> {
        if comp.is_empty() {
            return Err(Error::Precondition(
                "layered pattern must be nonempty".into(),
            ));
        }
        Ok(LayeredPattern { comp })
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn to_permutation(&self) -> Permutation {
        build_layered(&self.comp)
    }

    /// Longest blue tile allowed in each of the `m + 1` gaps around the
    /// pattern's layers: `l_1 - 1` before the first, `l_m - 1` after the last,
    /// and `min(l_i, l_{i+1}) - 1` between neighbours.
    pub fn gap_caps(&self) -> Vec<usize> {
        let l = self.comp.parts();
        let m = l.len();
        let mut caps = Vec::with_capacity(m + 1);
        caps.push(l[0] - 1);
        for i in 0..m - 1 {
            caps.push(l[i].min(l[i + 1]) - 1);
        }
        caps.push(l[m - 1] - 1);
        caps
    }
}

pub fn build_layered(c: &Composition) -> Permutation {
    let mut entries = Vec::with_capacity(c.total());
    let mut base = 0;
    for &l in c.parts() {
        entries.extend((base + 1..=base + l).rev());
        base += l;
    }
    Permutation::from_trusted(entries)
}

/// Inverse of [`build_layered`]; `None` when `p` is not layered.
pub fn decompose_layered(p: &Permutation) -> Option<Composition> {
    let e = p.entries();
    let mut parts = Vec::new();
    let mut base = 0;
    let mut i = 0;
    while i < e.len() {
        let top = e[i];
        if top <= base {
            return None;
        }
        let l = top - base;
        if i + l > e.len() {
            return None;
        }
        for (off, &v) in e[i..i + l].iter().enumerate() {
            if v != top - off {
                return None;
            }
        }
        parts.push(l);
        base = top;
        i += l;
    }
    Some(Composition { parts })
}

/// Compositions of `n`, in lexicographic order of their parts read as a
/// sequence (`[1,1,...,1]` first, `[n]` last). There are `2^(n-1)` of them for
/// `n >= 1` and one, the empty composition, for `n = 0`.
pub struct Compositions {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        // successor: drop the last part, bump the one before it, refill with ones
        if cur.len() >= 2 {
            let mut succ = cur.clone();
            let last = succ.pop().unwrap();
            *succ.last_mut().unwrap() += 1;
            succ.extend(std::iter::repeat_n(1, last - 1));
            debug_assert_eq!(succ.iter().sum::<usize>(), self.n);
            self.current = Some(succ);
        }
        Some(Composition { parts: cur })
    }
}

pub fn enumerate_layered(n: usize) -> Compositions {
    Compositions {
        n,
        current: Some(vec![1; n]),
    }
}

/// Occurrences of the layered pattern `pat` in the layered permutation `host`,
/// computed on the compositions: each pattern layer must sit inside one host
/// layer, in increasing layer order, so the count is the sum over increasing
/// layer choices of the product of binomials `C(host_layer, pattern_layer)`.
pub fn count_pattern_in_layered(host: &Composition, pat: &Composition) -> BigUint {
    let t = pat.parts();
    let m = t.len();
    // ways[j]: placements of the first j pattern layers in the host layers seen so far
    let mut ways = vec![BigUint::ZERO; m + 1];
    ways[0] = BigUint::from(1u32);
    for &l in host.parts() {
        for j in (1..=m).rev() {
            if ways[j - 1] != BigUint::ZERO && l >= t[j - 1] {
                let add = &ways[j - 1] * binomial(l, t[j - 1]);
                ways[j] += add;
            }
        }
    }
    std::mem::take(&mut ways[m])
}

/// True when the layered permutation of `host` contains no copy of `pat`.
///
/// Greedy subsequence matching suffices: a pattern layer fits in a host layer
/// exactly when the host layer is at least as long.
pub fn layered_avoids(host: &[usize], pat: &[usize]) -> bool {
    matched_layers(host, pat) < pat.len()
}

fn matched_layers(host: &[usize], pat: &[usize]) -> usize {
    let mut j = 0;
    for &l in host {
        if j < pat.len() && l >= pat[j] {
            j += 1;
        }
    }
    j
}

/// Number of compositions of each `n <= trunc` whose layered permutation
/// avoids `pat`, via the greedy-matching automaton: a state records how many
/// pattern layers have been matched, and appending a part `p` advances it iff
/// `p` covers the next pattern layer.
pub fn count_layered_avoiders(pat: &Composition, trunc: usize) -> Vec<BigUint> {
    let t = pat.parts();
    let m = t.len();
    if m == 0 {
        return vec![BigUint::ZERO; trunc + 1];
    }
    // table[n][j]: compositions of n whose greedy match reached exactly j layers
    let mut table = vec![vec![BigUint::ZERO; m]; trunc + 1];
    table[0][0] = BigUint::from(1u32);
    for n in 1..=trunc {
        for part in 1..=n {
            for j in 0..m {
                if table[n - part][j] == BigUint::ZERO {
                    continue;
                }
                let next = if part >= t[j] { j + 1 } else { j };
                if next < m {
                    let v = table[n - part][j].clone();
                    table[n][next] += v;
                }
            }
        }
    }
    table.into_iter().map(|row| row.into_iter().sum()).collect()
}
