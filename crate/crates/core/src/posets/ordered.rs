use std::fmt::{self, Display};
use std::str::FromStr;

use super::{subsets_with_size, PosetElement};
use crate::guard::Guards;
use crate::indexset::IndexSet;
use crate::stirling::oracle::heap_permutations;
use crate::stirling::Kind;
use crate::{Error, Result};

/// A pair `(ℓ, σ)`: `r` linear orders on disjoint parts of `[n]` (possibly
/// empty) and a permutation `σ` of the rest.
///
/// Cycles are written least element first and sorted by least element, so a
/// cycle doubles as a linear order. Prints 1-based, e.g.
/// `(5 3,7 9)||(1 4 6)(2 8 10)(11)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedCompositionPermutationPair {
    n: usize,
    components: Vec<Vec<u8>>,
    cycles: Vec<Vec<u8>>,
}

fn normalise_cycle(mut c: Vec<u8>) -> Vec<u8> {
    if let Some(pos) = c.iter().enumerate().min_by_key(|(_, &e)| e).map(|(i, _)| i) {
        c.rotate_left(pos);
    }
    c
}

impl OrderedCompositionPermutationPair {
    /// Elements are 0-based; cycles are normalised.
    pub fn new(n: usize, components: Vec<Vec<u8>>, cycles: Vec<Vec<u8>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &e in components.iter().chain(&cycles).flatten() {
            let slot = seen
                .get_mut(e as usize)
                .ok_or_else(|| Error::InvalidStructure(format!("element {} outside [n]", e + 1)))?;
            if *slot {
                return Err(Error::InvalidStructure(format!("element {} repeated", e + 1)));
            }
            *slot = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidStructure("parts do not cover [n]".into()));
        }
        if cycles.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidStructure("empty cycle".into()));
        }
        let mut cycles: Vec<Vec<u8>> = cycles.into_iter().map(normalise_cycle).collect();
        cycles.sort();
        Ok(OrderedCompositionPermutationPair { n, components, cycles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<u8>] {
        &self.components
    }

    pub fn cycles(&self) -> &[Vec<u8>] {
        &self.cycles
    }

    /// Whether the pair belongs to $\mathbf{P}_{S,r}(n)$.
    pub fn is_member(&self, set: &IndexSet) -> bool {
        self.components.iter().all(|c| set.contains(c.len() as u64 + 1))
            && self.cycles.iter().all(|c| set.contains(c.len() as u64))
    }

    /// Splits `word` into consecutive cycles of `self` (each written least
    /// element first); returns how many were used.
    fn tile(&self, word: &[u8], starts: &[Option<usize>]) -> Option<u64> {
        let mut pos = 0;
        let mut used = 0;
        while pos < word.len() {
            let idx = starts.get(word[pos] as usize).copied().flatten()?;
            let cycle = &self.cycles[idx];
            if word.get(pos..pos + cycle.len())? != cycle.as_slice() {
                return None;
            }
            pos += cycle.len();
            used += 1;
        }
        Some(used)
    }

    fn with_parts(&self, components: Vec<Vec<u8>>, cycles: Vec<Vec<u8>>) -> Self {
        let mut cycles: Vec<Vec<u8>> = cycles.into_iter().map(normalise_cycle).collect();
        cycles.sort();
        OrderedCompositionPermutationPair {
            n: self.n,
            components,
            cycles,
        }
    }
}

fn all_orders(items: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut buf = items.to_vec();
    heap_permutations(&mut buf, &mut |p: &[u8]| out.push(p.to_vec()));
    out
}

fn all_orders_of_indices(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut buf = items.to_vec();
    heap_permutations(&mut buf, &mut |p: &[usize]| out.push(p.to_vec()));
    out
}

/// All permutations of `rest` (sorted) with cycle sizes in `set`, as lists of
/// normalised cycles sorted by least element.
fn permutations_of(rest: &[u8], set: &IndexSet) -> Vec<Vec<Vec<u8>>> {
    let Some((&low, others)) = rest.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for pick in 0u32..1 << others.len() {
        if !set.contains(pick.count_ones() as u64 + 1) {
            continue;
        }
        let chosen: Vec<u8> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| pick & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let remaining: Vec<u8> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| pick & (1 << i) == 0)
            .map(|(_, &e)| e)
            .collect();
        let tails = permutations_of(&remaining, set);
        for order in all_orders(&chosen) {
            let mut cycle = vec![low];
            cycle.extend(order);
            for tail in &tails {
                let mut cycles = vec![cycle.clone()];
                cycles.extend(tail.iter().cloned());
                out.push(cycles);
            }
        }
    }
    out
}

impl PosetElement for OrderedCompositionPermutationPair {
    const KIND: Kind = Kind::First;

    fn guard(guards: &Guards) -> usize {
        guards.ordered_poset
    }

    fn enumerate(set: &IndexSet, r: usize, n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let total = (r + 1).pow(n as u32);
        for code in 0..total {
            let mut parts = vec![Vec::new(); r + 1];
            let mut c = code;
            for e in 0..n as u8 {
                parts[c % (r + 1)].push(e);
                c /= r + 1;
            }
            let rest = parts.pop().expect("r + 1 parts");
            if !parts.iter().all(|p| set.contains(p.len() as u64 + 1)) {
                continue;
            }
            let perms = permutations_of(&rest, set);
            if perms.is_empty() {
                continue;
            }
            // every choice of linear order on every component
            let mut compositions: Vec<Vec<Vec<u8>>> = vec![vec![]];
            for p in &parts {
                let orders = all_orders(p);
                compositions = compositions
                    .into_iter()
                    .flat_map(|prefix| {
                        orders.iter().map(move |o| {
                            let mut next = prefix.clone();
                            next.push(o.clone());
                            next
                        })
                    })
                    .collect();
            }
            for comp in &compositions {
                for cycles in &perms {
                    out.push(OrderedCompositionPermutationPair {
                        n,
                        components: comp.clone(),
                        cycles: cycles.clone(),
                    });
                }
            }
        }
        out
    }

    fn zero(r: usize, n: usize) -> Self {
        OrderedCompositionPermutationPair {
            n,
            components: vec![Vec::new(); r],
            cycles: (0..n as u8).map(|i| vec![i]).collect(),
        }
    }

    fn block_count(&self) -> usize {
        self.cycles.len()
    }

    fn leq(&self, other: &Self, set: &IndexSet) -> bool {
        if self.n != other.n || self.r() != other.r() {
            return false;
        }
        let mut starts = vec![None; self.n];
        for (i, c) in self.cycles.iter().enumerate() {
            starts[c[0] as usize] = Some(i);
        }
        for (mine, theirs) in self.components.iter().zip(&other.components) {
            let Some(tail) = theirs.strip_prefix(mine.as_slice()) else {
                return false;
            };
            match self.tile(tail, &starts) {
                Some(t) if set.contains(t + 1) => {}
                _ => return false,
            }
        }
        other
            .cycles
            .iter()
            .all(|c| matches!(self.tile(c, &starts), Some(s) if set.contains(s)))
    }

    fn successors(&self, set: &IndexSet) -> Vec<Self> {
        let count = self.cycles.len();
        let mut out = Vec::new();
        for pick in subsets_with_size(count, |l| l >= 2 && set.contains(l as u64)) {
            let chosen: Vec<usize> = (0..count).filter(|i| pick & (1 << i) != 0).collect();
            let kept: Vec<Vec<u8>> = (0..count)
                .filter(|i| pick & (1 << i) == 0)
                .map(|i| self.cycles[i].clone())
                .collect();
            for order in all_orders_of_indices(&chosen) {
                let joined: Vec<u8> = order.iter().flat_map(|&i| self.cycles[i].iter().copied()).collect();
                let mut cycles = kept.clone();
                cycles.push(joined);
                out.push(self.with_parts(self.components.clone(), cycles));
            }
        }
        for pick in subsets_with_size(count, |l| l >= 1 && set.contains(l as u64 + 1)) {
            let chosen: Vec<usize> = (0..count).filter(|i| pick & (1 << i) != 0).collect();
            let kept: Vec<Vec<u8>> = (0..count)
                .filter(|i| pick & (1 << i) == 0)
                .map(|i| self.cycles[i].clone())
                .collect();
            for order in all_orders_of_indices(&chosen) {
                for j in 0..self.r() {
                    let mut components = self.components.clone();
                    components[j].extend(order.iter().flat_map(|&i| self.cycles[i].iter().copied()));
                    out.push(self.with_parts(components, kept.clone()));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

fn join(items: &[u8]) -> String {
    items.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(" ")
}

impl Display for OrderedCompositionPermutationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| if c.is_empty() { "{}".to_string() } else { join(c) })
            .collect();
        write!(f, "({})||", comps.join(","))?;
        if self.cycles.is_empty() {
            return write!(f, "{{}}");
        }
        for c in &self.cycles {
            write!(f, "({})", join(c))?;
        }
        Ok(())
    }
}

fn parse_word(text: &str, input: &str) -> Result<Vec<u8>> {
    let text = text.trim();
    if text == "{}" {
        return Ok(Vec::new());
    }
    text.split_whitespace()
        .map(|tok| match tok.parse::<u8>() {
            Ok(e) if e >= 1 => Ok(e - 1),
            _ => Err(Error::InvalidStructure(format!("bad element {tok:?} in {input:?}"))),
        })
        .collect()
}

/// Parses `(5 3,7 9)||(1 4 6)(2 8 10)(11)`; `n` is the largest element
/// mentioned.
impl FromStr for OrderedCompositionPermutationPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidStructure(format!("cannot parse ordered pair {s:?}"));
        let (left, right) = s.trim().split_once("||").ok_or_else(bad)?;
        let inner = left
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let components = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|w| parse_word(w, s)).collect::<Result<Vec<_>>>()?
        };
        let right = right.trim();
        let mut cycles = Vec::new();
        if right != "{}" {
            let mut rest = right;
            while !rest.is_empty() {
                let body = rest.strip_prefix('(').ok_or_else(bad)?;
                let close = body.find(')').ok_or_else(bad)?;
                cycles.push(parse_word(&body[..close], s)?);
                rest = body[close + 1..].trim_start();
            }
        }
        let n = components
            .iter()
            .chain(&cycles)
            .flatten()
            .map(|&e| e as usize + 1)
            .max()
            .unwrap_or(0);
        OrderedCompositionPermutationPair::new(n, components, cycles)
    }
}
