//! Brute-force counts of $(S,r)$-partitions and $(S,r)$-permutations.
//!
//! Elements are `0..n+r`; the first `r` are special. These enumerators share
//! nothing with the series engine.

use num_bigint::BigInt;

use crate::guard::{check, Guards};
use crate::indexset::IndexSet;
use crate::Result;

/// A set partition with blocks sorted by least element.
pub type Partition = Vec<Vec<usize>>;

/// Counts of $(S,r)$-partitions of `[n+r]`, indexed by `k` (non-special blocks).
pub fn partition_counts(set: &IndexSet, r: usize, n: usize, guards: &Guards) -> Result<Vec<BigInt>> {
    check("n + r (set partitions)", n + r, guards.partitions)?;
    let mut counts = vec![0u64; n + 1];
    walk_partitions(set, r, n, &mut |blocks| {
        counts[blocks.len() - r] += 1;
    });
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// ${n\brace k}_{S,r}$ by enumeration.
pub fn oracle_partitions(set: &IndexSet, r: usize, n: usize, k: usize, guards: &Guards) -> Result<BigInt> {
    let counts = partition_counts(set, r, n, guards)?;
    Ok(counts.get(k).cloned().unwrap_or_default())
}

/// The partitions counted by ${n\brace k}_{S,r}$, blocks sorted by least element.
pub fn partition_witnesses(set: &IndexSet, r: usize, n: usize, k: usize, guards: &Guards) -> Result<Vec<Partition>> {
    check("n + r (set partitions)", n + r, guards.partitions)?;
    let mut out = Vec::new();
    walk_partitions(set, r, n, &mut |blocks| {
        if blocks.len() == k + r {
            let mut p: Partition = blocks.to_vec();
            p.sort_by_key(|b| b[0]);
            out.push(p);
        }
    });
    Ok(out)
}

fn walk_partitions(set: &IndexSet, r: usize, n: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
    let cap = set.max_element().map(|m| m as usize).unwrap_or(usize::MAX);
    let mut blocks: Vec<Vec<usize>> = (0..r).map(|i| vec![i]).collect();
    place(set, cap, r, n + r, &mut blocks, visit);
}

fn place(
    set: &IndexSet,
    cap: usize,
    next: usize,
    total: usize,
    blocks: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if next == total {
        if blocks.iter().all(|b| set.contains(b.len() as u64)) {
            visit(blocks);
        }
        return;
    }
    for i in 0..blocks.len() {
        if blocks[i].len() < cap {
            blocks[i].push(next);
            place(set, cap, next + 1, total, blocks, visit);
            blocks[i].pop();
        }
    }
    blocks.push(vec![next]);
    place(set, cap, next + 1, total, blocks, visit);
    blocks.pop();
}

/// Counts of $(S,r)$-permutations of `[n+r]`, indexed by `k` (non-special cycles).
pub fn permutation_counts(set: &IndexSet, r: usize, n: usize, guards: &Guards) -> Result<Vec<BigInt>> {
    check("n + r (permutations)", n + r, guards.permutations)?;
    let size = n + r;
    let mut counts = vec![0u64; n + 1];
    let mut perm: Vec<usize> = (0..size).collect();
    let mut tally = |p: &[usize]| {
        if let Some(cycles) = admissible_cycles(p, r, set) {
            counts[cycles - r] += 1;
        }
    };
    heap_permutations(&mut perm, &mut tally);
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// ${n\brack k}_{S,r}$ by enumeration.
pub fn oracle_permutations(set: &IndexSet, r: usize, n: usize, k: usize, guards: &Guards) -> Result<BigInt> {
    let counts = permutation_counts(set, r, n, guards)?;
    Ok(counts.get(k).cloned().unwrap_or_default())
}

/// Number of cycles when the specials sit in distinct cycles and every cycle
/// length is in `set`.
fn admissible_cycles(p: &[usize], r: usize, set: &IndexSet) -> Option<usize> {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut specials = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            if x < r {
                specials += 1;
            }
            x = p[x];
        }
        if specials > 1 || !set.contains(len as u64) {
            return None;
        }
        cycles += 1;
    }
    Some(cycles)
}

/// Visits every permutation of `items` (Heap's algorithm, iterative).
pub fn heap_permutations<T>(items: &mut [T], visit: &mut dyn FnMut(&[T])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
