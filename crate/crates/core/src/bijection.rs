//! Involutions with exactly one 231 correspond to tilings of a `1 x n` strip
//! by one red tile of length 4 and any number of blue tiles.
//!
//! Forward: number the cells `1..=n`, reverse each blue tile, and write the
//! red tile starting at `a` as `a+3, a+1, a+2, a`. Inverse: repeatedly cut off
//! the block holding the current maximum.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::binomial;
use crate::error::{Error, Result};
use crate::layered::{decompose_layered, enumerate_layered, Composition};
use crate::perm::{count_occurrences_capped, is_involution_slice, perm, Permutation};

pub const RED_LEN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tile {
    Blue(usize),
    Red,
}

impl Tile {
    pub fn len(self) -> usize {
        match self {
            Tile::Blue(l) => l,
            Tile::Red => RED_LEN,
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tile::Blue(l) => write!(f, "B{l}"),
            Tile::Red => write!(f, "R{RED_LEN}"),
        }
    }
}

/// Left-to-right tiles with exactly one red tile.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RedBlueTiling {
    tiles: Vec<Tile>,
}

/// Where the red tile sits, as split by the three-case count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedPlacement {
    /// The tiling is the red tile alone.
    Alone,
    FarLeft,
    FarRight,
    Interior,
}

impl RedBlueTiling {
    pub fn new(tiles: Vec<Tile>) -> Result<Self> {
        let reds = tiles.iter().filter(|t| matches!(t, Tile::Red)).count();
        if reds != 1 {
            return Err(Error::InvalidTiling(format!(
                "expected exactly one red tile, found {reds}"
            )));
        }
        if tiles.contains(&Tile::Blue(0)) {
            return Err(Error::InvalidTiling("blue tile of length 0".into()));
        }
        Ok(RedBlueTiling { tiles })
    }

    /// Blue tiles from `left`, the red tile, then blue tiles from `right`.
    pub fn from_sides(left: &Composition, right: &Composition) -> Self {
        let mut tiles: Vec<Tile> = left.parts().iter().map(|&l| Tile::Blue(l)).collect();
        tiles.push(Tile::Red);
        tiles.extend(right.parts().iter().map(|&l| Tile::Blue(l)));
        RedBlueTiling { tiles }
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn total(&self) -> usize {
        self.tiles.iter().map(|t| t.len()).sum()
    }

    fn red_index(&self) -> usize {
        self.tiles
            .iter()
            .position(|t| matches!(t, Tile::Red))
            .expect("tiling holds a red tile")
    }

    /// 1-based cell where the red tile starts.
    pub fn red_start(&self) -> usize {
        self.tiles[..self.red_index()]
            .iter()
            .map(|t| t.len())
            .sum::<usize>()
            + 1
    }

    pub fn placement(&self) -> RedPlacement {
        let i = self.red_index();
        match (i == 0, i + 1 == self.tiles.len()) {
            (true, true) => RedPlacement::Alone,
            (true, false) => RedPlacement::FarLeft,
            (false, true) => RedPlacement::FarRight,
            (false, false) => RedPlacement::Interior,
        }
    }

    /// Occurrences of `k...21` in the image, read off the tiles: tiles are
    /// stacked increasingly, so a decreasing subsequence stays inside one
    /// tile. A blue tile of length `l` holds `C(l, k)`.
    pub fn decreasing_occurrences(&self, k: usize) -> BigUint {
        let red_block = perm(&[4, 2, 3, 1]);
        let in_red = BigUint::from(count_occurrences_capped(
            red_block.entries(),
            Permutation::decreasing(k).entries(),
            u128::MAX,
        ));
        self.tiles
            .iter()
            .map(|t| match t {
                Tile::Blue(l) => binomial(*l, k),
                Tile::Red => in_red.clone(),
            })
            .sum()
    }
}

impl fmt::Display for RedBlueTiling {
    /// Space-separated tokens, e.g. `B1 R4 B2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tiles.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for RedBlueTiling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tiles = s
            .split_whitespace()
            .map(|tok| {
                let (kind, len) = tok.split_at(
                    tok.find(|c: char| !c.is_ascii_alphabetic())
                        .unwrap_or(tok.len()),
                );
                let len: usize = len
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad tile length in {tok:?}")))?;
                match (kind, len) {
                    ("B", l) if l >= 1 => Ok(Tile::Blue(l)),
                    ("R", RED_LEN) => Ok(Tile::Red),
                    _ => Err(Error::Parse(format!("bad tile token {tok:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        RedBlueTiling::new(tiles)
    }
}

pub fn tiling_to_involution(t: &RedBlueTiling) -> Permutation {
    let mut entries = Vec::with_capacity(t.total());
    let mut start = 1;
    for tile in t.tiles() {
        match *tile {
            Tile::Blue(l) => entries.extend((start..start + l).rev()),
            Tile::Red => entries.extend([start + 3, start + 1, start + 2, start]),
        }
        start += tile.len();
    }
    debug_assert!(is_involution_slice(&entries));
    debug_assert_eq!(count_occurrences_capped(&entries, &[2, 3, 1], 1), 1);
    Permutation::from_trusted(entries)
}

/// Preimage of a one-231 involution under [`tiling_to_involution`].
///
/// The block holding the current maximum `m` is cut off the right end: it
/// spans from the smallest position reachable from `m`'s position and
/// partner up to `m`. While the 231 has not been met, that block must be a
/// reversed run (blue) or the red pattern; once the red block is cut, what
/// is left avoids 231 and decodes as a layered permutation.
pub fn involution_to_tiling(p: &Permutation) -> Result<RedBlueTiling> {
    if !p.is_involution() {
        return Err(Error::Domain(format!("{p} is not an involution")));
    }
    let count = count_occurrences_capped(p.entries(), &[2, 3, 1], 1);
    if count != 1 {
        let what = if count == 0 { "no" } else { "more than one" };
        return Err(Error::Domain(format!("{p} has {what} 231 occurrence")));
    }

    let e = p.entries();
    let mut tail: Vec<Tile> = Vec::new();
    let mut end = e.len();
    loop {
        // e restricted to 1..=end is an involution of 1..=end holding the 231
        let max_pos = e[end - 1];
        let mut start = max_pos;
        let mut scan = max_pos;
        while scan < end {
            start = start.min(e[scan]);
            scan += 1;
        }
        let block = &e[start - 1..end];
        let len = end - start + 1;
        if len == RED_LEN && block == [start + 3, start + 1, start + 2, start] {
            let prefix = Permutation::from_trusted(e[..start - 1].to_vec());
            let left = decompose_layered(&prefix).ok_or_else(|| {
                Error::Domain(format!(
                    "prefix {prefix} before the red block is not layered"
                ))
            })?;
            let mut tiles: Vec<Tile> = left.parts().iter().map(|&l| Tile::Blue(l)).collect();
            tiles.push(Tile::Red);
            tiles.extend(tail.into_iter().rev());
            return RedBlueTiling::new(tiles);
        }
        let reversed = block.iter().enumerate().all(|(i, &v)| v == end - i);
        if !reversed {
            return Err(Error::Domain(format!(
                "block at positions {start}..={end} of {p} is neither blue nor red"
            )));
        }
        tail.push(Tile::Blue(len));
        end = start - 1;
        if end == 0 {
            return Err(Error::Domain(format!("{p} decodes without a red block")));
        }
    }
}

/// All red/blue tilings of length `n`, ordered by the red tile's position,
/// then by the blue tiles to its left and right (each in composition order).
pub fn enumerate_redblue(n: usize) -> impl Iterator<Item = RedBlueTiling> {
    let blue = n.saturating_sub(RED_LEN);
    let red_fits = n >= RED_LEN;
    (0..=blue)
        .filter(move |_| red_fits)
        .flat_map(move |left_total| {
            enumerate_layered(left_total).flat_map(move |left| {
                enumerate_layered(blue - left_total)
                    .map(move |right| RedBlueTiling::from_sides(&left, &right))
            })
        })
}
