//! Size limits for the brute-force enumerators.
//!
//! The defaults keep every exhaustive check at desk scale. They are limits on
//! work, not on meaning: raising one only makes the enumeration slower.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Max `n + r` for set-partition enumeration.
    pub partitions: usize,
    /// Max `n + r` for permutation enumeration.
    pub permutations: usize,
    /// Max `n` for composition-partition posets.
    pub pair_poset: usize,
    /// Max `n` for ordered composition-permutation posets.
    pub ordered_poset: usize,
    /// Max edge count for orientation enumeration.
    pub orientation_edges: usize,
    /// Max vertex count for clique-partition enumeration.
    pub clique_vertices: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            partitions: 12,
            permutations: 9,
            pair_poset: 7,
            ordered_poset: 5,
            orientation_edges: 20,
            clique_vertices: 10,
        }
    }
}

pub(crate) fn check(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
