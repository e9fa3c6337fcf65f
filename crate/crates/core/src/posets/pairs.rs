use std::fmt::{self, Display};
use std::str::FromStr;

use super::{mask_elements, subsets_with_size, PosetElement};
use crate::guard::Guards;
use crate::indexset::IndexSet;
use crate::stirling::Kind;
use crate::{Error, Result};

/// A pair `(V, π)`: an `r`-composition `V` of part of `[n]` (components may be
/// empty) and a set partition `π` of the rest.
///
/// Elements are stored 0-based as bitmasks; they print 1-based, e.g.
/// `({1,2},{})||3|4 5|6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositionPartitionPair {
    n: usize,
    components: Vec<u32>,
    /// Sorted by least element.
    blocks: Vec<u32>,
}

impl CompositionPartitionPair {
    pub fn new(n: usize, components: Vec<u32>, mut blocks: Vec<u32>) -> Result<Self> {
        if n > 31 {
            return Err(Error::InvalidStructure(format!("ground set size {n} is too large")));
        }
        let full: u32 = (1u32 << n) - 1;
        let mut seen = 0u32;
        for &m in components.iter().chain(&blocks) {
            if m & !full != 0 || m & seen != 0 {
                return Err(Error::InvalidStructure("parts overlap or leave [n]".into()));
            }
            seen |= m;
        }
        if seen != full {
            return Err(Error::InvalidStructure("parts do not cover [n]".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidStructure("empty block".into()));
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(CompositionPartitionPair { n, components, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.components
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    /// Whether the pair belongs to $\Pi_{S,r}(n)$.
    pub fn is_member(&self, set: &IndexSet) -> bool {
        self.components.iter().all(|c| set.contains(c.count_ones() as u64 + 1))
            && self.blocks.iter().all(|b| set.contains(b.count_ones() as u64))
    }
}

/// All partitions of `mask` into blocks whose sizes lie in `set`.
fn partitions_of(mask: u32, set: &IndexSet) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![vec![]];
    }
    let low = mask & mask.wrapping_neg();
    let rest: Vec<u8> = mask_elements(mask & !low).collect();
    let mut out = Vec::new();
    for pick in 0u32..1 << rest.len() {
        let size = pick.count_ones() as u64 + 1;
        if !set.contains(size) {
            continue;
        }
        let block = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| pick & (1 << i) != 0)
            .fold(low, |acc, (_, &e)| acc | 1 << e);
        for mut tail in partitions_of(mask & !block, set) {
            tail.insert(0, block);
            out.push(tail);
        }
    }
    out
}

impl PosetElement for CompositionPartitionPair {
    const KIND: Kind = Kind::Second;

    fn guard(guards: &Guards) -> usize {
        guards.pair_poset
    }

    fn enumerate(set: &IndexSet, r: usize, n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let total = (r + 1).pow(n as u32);
        for code in 0..total {
            let mut components = vec![0u32; r];
            let mut rest = 0u32;
            let mut c = code;
            for e in 0..n {
                let slot = c % (r + 1);
                c /= r + 1;
                if slot == r {
                    rest |= 1 << e;
                } else {
                    components[slot] |= 1 << e;
                }
            }
            if !components.iter().all(|m| set.contains(m.count_ones() as u64 + 1)) {
                continue;
            }
            for blocks in partitions_of(rest, set) {
                out.push(CompositionPartitionPair {
                    n,
                    components: components.clone(),
                    blocks,
                });
            }
        }
        out
    }

    fn zero(r: usize, n: usize) -> Self {
        CompositionPartitionPair {
            n,
            components: vec![0; r],
            blocks: (0..n).map(|i| 1 << i).collect(),
        }
    }

    fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn leq(&self, other: &Self, set: &IndexSet) -> bool {
        if self.n != other.n || self.r() != other.r() {
            return false;
        }
        if self.components.iter().zip(&other.components).any(|(a, b)| a & !b != 0) {
            return false;
        }
        let mut added = vec![0u64; self.r()];
        let mut merged = vec![0u64; other.blocks.len()];
        for &b in &self.blocks {
            if let Some(i) = other.components.iter().position(|&c| b & !c == 0) {
                added[i] += 1;
            } else if let Some(j) = other.blocks.iter().position(|&c| b & !c == 0) {
                merged[j] += 1;
            } else {
                return false;
            }
        }
        added.iter().all(|&t| set.contains(t + 1)) && merged.iter().all(|&s| set.contains(s))
    }

    fn successors(&self, set: &IndexSet) -> Vec<Self> {
        let count = self.blocks.len();
        let mut out = Vec::new();
        for pick in subsets_with_size(count, |l| l >= 2 && set.contains(l as u64)) {
            let mut merged = 0u32;
            let mut blocks = Vec::new();
            for (i, &b) in self.blocks.iter().enumerate() {
                if pick & (1 << i) != 0 {
                    merged |= b;
                } else {
                    blocks.push(b);
                }
            }
            blocks.push(merged);
            blocks.sort_by_key(|b| b.trailing_zeros());
            out.push(CompositionPartitionPair {
                n: self.n,
                components: self.components.clone(),
                blocks,
            });
        }
        for pick in subsets_with_size(count, |l| l >= 1 && set.contains(l as u64 + 1)) {
            let moved = self
                .blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .fold(0u32, |acc, (_, &b)| acc | b);
            let blocks: Vec<u32> = self
                .blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) == 0)
                .map(|(_, &b)| b)
                .collect();
            for j in 0..self.r() {
                let mut components = self.components.clone();
                components[j] |= moved;
                out.push(CompositionPartitionPair {
                    n: self.n,
                    components,
                    blocks: blocks.clone(),
                });
            }
        }
        out
    }
}

fn write_mask(f: &mut fmt::Formatter<'_>, mask: u32, sep: &str) -> fmt::Result {
    let items: Vec<String> = mask_elements(mask).map(|e| (e + 1).to_string()).collect();
    write!(f, "{}", items.join(sep))
}

impl Display for CompositionPartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            write_mask(f, c, ",")?;
            write!(f, "}}")?;
        }
        write!(f, ")||")?;
        if self.blocks.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, &b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write_mask(f, b, " ")?;
        }
        Ok(())
    }
}

fn parse_elements(text: &str, seps: &[char], input: &str) -> Result<u32> {
    let mut mask = 0u32;
    for tok in text.split(seps).filter(|t| !t.is_empty()) {
        let e: u32 = tok
            .parse()
            .map_err(|_| Error::InvalidStructure(format!("bad element {tok:?} in {input:?}")))?;
        if e == 0 || e > 31 || mask & (1 << (e - 1)) != 0 {
            return Err(Error::InvalidStructure(format!("bad element {tok:?} in {input:?}")));
        }
        mask |= 1 << (e - 1);
    }
    Ok(mask)
}

/// Parses `({1,2},{})||3|4 5|6`; `n` is the largest element mentioned.
impl FromStr for CompositionPartitionPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidStructure(format!("cannot parse pair {s:?}"));
        let (left, right) = s.trim().split_once("||").ok_or_else(bad)?;
        let inner = left
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut components = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(bad)?;
            let close = body.find('}').ok_or_else(bad)?;
            components.push(parse_elements(&body[..close], &[',', ' '], s)?);
            rest = body[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        let right = right.trim();
        let blocks = if right == "{}" || right.is_empty() {
            Vec::new()
        } else {
            right
                .split('|')
                .map(|b| parse_elements(b, &[' ', ','], s))
                .collect::<Result<Vec<_>>>()?
        };
        let all = components.iter().chain(&blocks).fold(0u32, |a, &m| a | m);
        let n = 32 - all.leading_zeros() as usize;
        CompositionPartitionPair::new(n, components, blocks)
    }
}
