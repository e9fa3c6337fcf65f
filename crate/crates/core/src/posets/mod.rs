//! Posets of composition-partition pairs and their Möbius functions.
//!
//! For a $^{+1}$-monoid $S$ the pairs $\Pi_{S,r}(n)$ (and the ordered pairs
//! $\mathbf{P}_{S,r}(n)$) carry a partial order whose Möbius function, summed
//! over the elements with `k` blocks (cycles), gives the inverse Stirling
//! matrices `T` and `U`.
//!
//! Posets are materialised in full: elements, up-sets and down-sets as
//! bitsets. The order is read directly off the definition ([`PosetElement::leq`]);
//! the closure of the two one-step operations is available separately so
//! the two can be compared.

mod bitset;
mod ordered;
mod pairs;

use std::collections::HashMap;
use std::fmt::{self, Display};
use std::hash::Hash;

use num_bigint::BigInt;

use crate::guard::{check, Guards};
use crate::indexset::{IndexSet, MonoidVerdict};
use crate::stirling::Kind;
use crate::{Error, Result};

pub use bitset::BitSet;
pub use ordered::OrderedCompositionPermutationPair;
pub use pairs::CompositionPartitionPair;

/// Bound used when a set's monoid property can only be checked pairwise.
pub const MONOID_CHECK_BOUND: u64 = 64;

/// How to treat sets whose monoid property holds only up to a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonoidPolicy {
    /// Require an exact `yes`.
    #[default]
    Strict,
    /// Also accept `yes up to bound`; the bound is recorded on the universe.
    AllowBounded,
}

/// Elements of one of the two pair posets.
pub trait PosetElement: Clone + Eq + Hash + Ord + Display + fmt::Debug + Sized {
    /// Which inverse matrix the Möbius sums reproduce.
    const KIND: Kind;

    /// Guard on the ground-set size `n`.
    fn guard(guards: &Guards) -> usize;

    /// All elements over `[n]` with `r` components.
    fn enumerate(set: &IndexSet, r: usize, n: usize) -> Vec<Self>;

    /// The least element: empty components, all singletons.
    fn zero(r: usize, n: usize) -> Self;

    /// Number of blocks (cycles).
    fn block_count(&self) -> usize;

    /// The order, decided directly from the definition.
    fn leq(&self, other: &Self, set: &IndexSet) -> bool;

    /// Everything reachable by one application of either operation.
    fn successors(&self, set: &IndexSet) -> Vec<Self>;
}

/// A finite poset on `0..len` stored as up-set and down-set bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    zero: usize,
    /// Indices sorted so that `x < y` implies `x` comes first.
    extension: Vec<usize>,
}

impl Poset {
    /// Builds the poset from a relation, checking the partial-order axioms and
    /// the existence of a unique least element.
    pub fn from_relation(len: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = vec![BitSet::new(len); len];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..len {
                if leq(x, y) {
                    row.insert(y);
                }
            }
        }
        Self::from_up_sets(up)
    }

    /// `up[x]` lists every `y` with `x <= y`.
    pub fn from_up_sets(up: Vec<BitSet>) -> Result<Self> {
        let len = up.len();
        let mut down = vec![BitSet::new(len); len];
        for (x, row) in up.iter().enumerate() {
            if !row.contains(x) {
                return Err(Error::InvalidPoset(format!("not reflexive at {x}")));
            }
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        for x in 0..len {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::InvalidPoset(format!("not antisymmetric: {x} and {y}")));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::InvalidPoset(format!("not transitive through {x} <= {y}")));
                }
            }
        }
        let minima: Vec<usize> = (0..len).filter(|&x| down[x].len() == 1).collect();
        let zero = match minima.as_slice() {
            [z] if up[*z].len() == len => *z,
            _ => {
                return Err(Error::InvalidPoset(format!(
                    "expected a unique least element, found minima {minima:?}"
                )))
            }
        };
        let mut extension: Vec<usize> = (0..len).collect();
        extension.sort_by_key(|&x| (down[x].len(), x));
        Ok(Poset { up, down, zero, extension })
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn zero_hat(&self) -> usize {
        self.zero
    }

    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].len() == 1).collect()
    }

    /// Elements covering `x`.
    pub fn covers(&self, x: usize) -> Vec<usize> {
        self.up[x]
            .iter()
            .filter(|&y| y != x && self.up[x].intersection_len(&self.down[y]) == 2)
            .collect()
    }

    /// $\mu(x, y)$; requires `x <= y`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        if !self.leq(x, y) {
            return Err(Error::NotComparable { x, y });
        }
        let values = self.mobius_from(x)?;
        Ok(values[y].expect("y is above x"))
    }

    /// $\mu(\widehat{0}, x)$ for every `x`.
    pub fn mobius_from_zero(&self) -> Result<Vec<i64>> {
        Ok(self
            .mobius_from(self.zero)?
            .into_iter()
            .map(|v| v.expect("every element is above the least element"))
            .collect())
    }

    /// $\mu(x, \cdot)$ on the up-set of `x`, `None` elsewhere.
    fn mobius_from(&self, x: usize) -> Result<Vec<Option<i64>>> {
        let mut mu: Vec<Option<i64>> = vec![None; self.len()];
        for &z in &self.extension {
            if !self.up[x].contains(z) {
                continue;
            }
            if z == x {
                mu[z] = Some(1);
                continue;
            }
            let mut acc: i64 = 0;
            for w in self.down[z].iter() {
                if w != z {
                    if let Some(v) = mu[w] {
                        acc = acc
                            .checked_add(v)
                            .ok_or_else(|| Error::Inconsistent("Möbius value overflow".into()))?;
                    }
                }
            }
            mu[z] = Some(-acc);
        }
        Ok(mu)
    }
}

/// A materialised $\Pi_{S,r}(n)$ or $\mathbf{P}_{S,r}(n)$.
#[derive(Clone, Debug)]
pub struct Universe<E: PosetElement> {
    set: IndexSet,
    r: usize,
    n: usize,
    verdict: MonoidVerdict,
    elements: Vec<E>,
    index: HashMap<E, usize>,
    poset: Poset,
}

pub type PairUniverse = Universe<CompositionPartitionPair>;
pub type OrderedUniverse = Universe<OrderedCompositionPermutationPair>;

/// Checks the monoid requirement and returns the verdict that was accepted.
pub fn require_monoid(set: &IndexSet, policy: MonoidPolicy) -> Result<MonoidVerdict> {
    let verdict = set.is_plus_one_monoid(MONOID_CHECK_BOUND);
    match (&verdict, policy) {
        (MonoidVerdict::Yes, _) => Ok(verdict),
        (MonoidVerdict::YesUpToBound(_), MonoidPolicy::AllowBounded) => Ok(verdict),
        (MonoidVerdict::YesUpToBound(bound), MonoidPolicy::Strict) => Err(Error::MonoidUnverified {
            set: set.to_string(),
            bound: *bound,
        }),
        (MonoidVerdict::No(_), _) => Err(Error::NotMonoid {
            set: set.to_string(),
            detail: verdict.to_string(),
        }),
    }
}

impl<E: PosetElement> Universe<E> {
    pub fn new(set: &IndexSet, r: usize, n: usize, policy: MonoidPolicy, guards: &Guards) -> Result<Self> {
        check("n (pair poset)", n, E::guard(guards))?;
        let verdict = require_monoid(set, policy)?;
        let mut elements = E::enumerate(set, r, n);
        // more blocks first: a linear extension of the order
        elements.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
        let index: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let poset = Poset::from_relation(elements.len(), |x, y| {
            elements[y].block_count() <= elements[x].block_count() && elements[x].leq(&elements[y], set)
        })?;
        let zero = E::zero(r, n);
        if elements[poset.zero_hat()] != zero {
            return Err(Error::InvalidPoset(format!(
                "least element is {} rather than {zero}",
                elements[poset.zero_hat()]
            )));
        }
        Ok(Universe {
            set: set.clone(),
            r,
            n,
            verdict,
            elements,
            index,
            poset,
        })
    }

    pub fn set(&self) -> &IndexSet {
        &self.set
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The monoid verdict accepted at construction, with its bound if any.
    pub fn verdict(&self) -> &MonoidVerdict {
        &self.verdict
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn zero_hat(&self) -> &E {
        &self.elements[self.poset.zero_hat()]
    }

    /// Number of elements with `k` blocks, `k = 0..=n`.
    pub fn counts_by_blocks(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 1];
        for e in &self.elements {
            counts[e.block_count()] += 1;
        }
        counts
    }

    /// $\sum \mu(\widehat{0}, x)$ over the elements with `k` blocks, `k = 0..=n`.
    pub fn mobius_column_sums(&self) -> Result<Vec<BigInt>> {
        let mu = self.poset.mobius_from_zero()?;
        let mut sums = vec![BigInt::from(0); self.n + 1];
        for (e, m) in self.elements.iter().zip(mu) {
            sums[e.block_count()] += m;
        }
        Ok(sums)
    }

    /// $\mu(x, y)$ between two elements of the universe.
    pub fn mobius(&self, x: &E, y: &E) -> Result<i64> {
        let xi = self.lookup(x)?;
        let yi = self.lookup(y)?;
        self.poset.mobius(xi, yi)
    }

    fn lookup(&self, e: &E) -> Result<usize> {
        self.index_of(e)
            .ok_or_else(|| Error::InvalidStructure(format!("{e} is not an element of this poset")))
    }

    /// The order generated by the one-step operations, as up-set bitsets.
    pub fn operational_up_sets(&self) -> Result<Vec<BitSet>> {
        let len = self.len();
        let mut up = vec![BitSet::new(len); len];
        // successors have fewer blocks, so they sit later in `elements`
        for x in (0..len).rev() {
            let mut row = BitSet::new(len);
            row.insert(x);
            for s in self.elements[x].successors(&self.set) {
                let y = self.lookup(&s)?;
                if y == x {
                    continue;
                }
                if y < x {
                    return Err(Error::InvalidPoset(format!(
                        "operation from {} to {} does not reduce the block count",
                        self.elements[x], s
                    )));
                }
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        Ok(up)
    }

    /// Whether the operational order equals the direct order; on a mismatch
    /// returns the first disagreeing pair.
    pub fn operational_order_mismatch(&self) -> Result<Option<(E, E)>> {
        let up = self.operational_up_sets()?;
        for (x, row) in up.iter().enumerate() {
            if row != self.poset.up_set(x) {
                let y = (0..self.len())
                    .find(|&y| row.contains(y) != self.poset.leq(x, y))
                    .expect("rows differ somewhere");
                return Ok(Some((self.elements[x].clone(), self.elements[y].clone())));
            }
        }
        Ok(None)
    }

    /// Elements above `base` with `j` blocks, against the number of elements
    /// with `j` blocks over a `k`-element ground set (`k` = blocks of `base`).
    pub fn coideal_counts(&self, base: &E, j: usize) -> Result<(usize, usize)> {
        let b = self.lookup(base)?;
        let above = self
            .poset
            .up_set(b)
            .iter()
            .filter(|&y| self.elements[y].block_count() == j)
            .count();
        let k = base.block_count();
        let expected = E::enumerate(&self.set, self.r, k)
            .iter()
            .filter(|e| e.block_count() == j)
            .count();
        Ok((above, expected))
    }

    /// Checks the coideal count for every element and every `j`; returns the
    /// first failure as `(base, j, above, expected)`.
    pub fn coideal_mismatch(&self) -> Result<Option<(E, usize, usize, usize)>> {
        let mut expected_cache: HashMap<usize, Vec<usize>> = HashMap::new();
        for (b, base) in self.elements.iter().enumerate() {
            let k = base.block_count();
            let expected = expected_cache.entry(k).or_insert_with(|| {
                let mut counts = vec![0; k + 1];
                for e in E::enumerate(&self.set, self.r, k) {
                    counts[e.block_count()] += 1;
                }
                counts
            });
            let mut above = vec![0; self.n + 1];
            for y in self.poset.up_set(b).iter() {
                above[self.elements[y].block_count()] += 1;
            }
            for j in 0..=self.n {
                let want = expected.get(j).copied().unwrap_or(0);
                if above[j] != want {
                    return Ok(Some((base.clone(), j, above[j], want)));
                }
            }
        }
        Ok(None)
    }

    /// Hasse diagram in DOT format, nodes in universe order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{e}\"];\n"));
        }
        for x in 0..self.len() {
            for y in self.poset.covers(x) {
                out.push_str(&format!("  n{x} -> n{y};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl<E: PosetElement> Display for Universe<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} poset over S={}, r={}, n={} ({} elements)",
            E::KIND,
            self.set,
            self.r,
            self.n,
            self.len()
        )
    }
}

/// Elements of `0..n` in `mask`, increasing.
pub(crate) fn mask_elements(mask: u32) -> impl Iterator<Item = u8> {
    (0..32u8).filter(move |i| mask & (1 << i) != 0)
}

/// Every subset (as a bitmask over `0..count`) whose size is accepted.
pub(crate) fn subsets_with_size(count: usize, accept: impl Fn(usize) -> bool) -> Vec<u32> {
    (0u32..1 << count)
        .filter(|m| accept(m.count_ones() as usize))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The divisor lattice of 12.
    fn divisors() -> (Vec<usize>, Poset) {
        let d = vec![1, 2, 3, 4, 6, 12];
        let p = Poset::from_relation(d.len(), |x, y| d[y] % d[x] == 0).unwrap();
        (d, p)
    }

    #[test]
    fn mobius_of_divisor_lattice_is_number_theoretic() {
        let (d, p) = divisors();
        let mu = p.mobius_from_zero().unwrap();
        assert_eq!(mu, vec![1, -1, -1, 0, 1, 0]);
        assert_eq!(p.mobius(1, 5).unwrap(), 1); // mu(2, 12) = mu(6)
        assert_eq!(p.mobius(3, 3).unwrap(), 1);
        assert!(matches!(p.mobius(1, 2), Err(Error::NotComparable { .. })));
        assert_eq!(p.covers(0), vec![1, 2]);
        assert_eq!(p.maximal_elements(), vec![5]);
        assert_eq!(d[p.zero_hat()], 1);
    }

    #[test]
    fn axioms_are_enforced() {
        assert!(Poset::from_relation(2, |x, y| x != y).is_err());
        assert!(Poset::from_relation(2, |_, _| true).is_err());
        // 0 < 1 < 2 without 0 < 2
        assert!(Poset::from_relation(3, |x, y| x == y || y == x + 1).is_err());
        // two minima
        assert!(Poset::from_relation(2, |x, y| x == y).is_err());
    }

    #[test]
    fn monoid_policy() {
        assert!(require_monoid(&IndexSet::odd(), MonoidPolicy::Strict).is_ok());
        let bounded: IndexSet = "{1}".parse().unwrap();
        assert!(matches!(
            require_monoid(&bounded, MonoidPolicy::Strict),
            Err(Error::MonoidUnverified { .. })
        ));
        assert_eq!(
            require_monoid(&bounded, MonoidPolicy::AllowBounded).unwrap(),
            MonoidVerdict::YesUpToBound(MONOID_CHECK_BOUND)
        );
        let no: IndexSet = "{1,3,8}".parse().unwrap();
        assert!(matches!(require_monoid(&no, MonoidPolicy::AllowBounded), Err(Error::NotMonoid { .. })));
    }

    #[test]
    fn odd_pairs_with_two_components_on_four_elements() {
        let odd = IndexSet::odd();
        let u = PairUniverse::new(&odd, 2, 4, MonoidPolicy::Strict, &Guards::default()).unwrap();
        let sums = u.mobius_column_sums().unwrap();
        assert_eq!(sums[2], BigInt::from(-16));
        assert_eq!(sums[0], BigInt::from(24));
        let top: CompositionPartitionPair = "({1,2,3,4},{})||{}".parse().unwrap();
        assert_eq!(u.mobius(u.zero_hat(), &top).unwrap(), 9);
        // the 16 elements with two blocks are all atoms
        let zero = u.poset().zero_hat();
        let two_blocks: Vec<usize> = (0..u.len()).filter(|&i| u.elements()[i].block_count() == 2).collect();
        assert_eq!(two_blocks.len(), 16);
        let covers = u.poset().covers(zero);
        assert!(two_blocks.iter().all(|i| covers.contains(i)));
        // n is odd only at n = 3, so maximal elements are pairs with empty partition
        assert!(u.poset().maximal_elements().iter().all(|&i| u.elements()[i].block_count() == 0));
    }

    #[test]
    fn odd_ordered_pairs_with_one_component_on_three_elements() {
        let odd = IndexSet::odd();
        let u = OrderedUniverse::new(&odd, 1, 3, MonoidPolicy::Strict, &Guards::default()).unwrap();
        let sums = u.mobius_column_sums().unwrap();
        assert_eq!(sums[1], BigInt::from(-8));
        let atoms_with_one_cycle = u
            .poset()
            .covers(u.poset().zero_hat())
            .into_iter()
            .filter(|&i| u.elements()[i].block_count() == 1)
            .count();
        assert_eq!(atoms_with_one_cycle, 8);
    }

    #[test]
    fn guard_and_policy_are_applied() {
        let g = Guards::default();
        assert!(matches!(
            PairUniverse::new(&IndexSet::odd(), 1, g.pair_poset + 1, MonoidPolicy::Strict, &g),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            PairUniverse::new(&IndexSet::even(), 1, 3, MonoidPolicy::Strict, &g),
            Err(Error::NotMonoid { .. })
        ));
        let single: IndexSet = "{1}".parse().unwrap();
        let u = PairUniverse::new(&single, 2, 3, MonoidPolicy::AllowBounded, &g).unwrap();
        assert_eq!(u.verdict(), &MonoidVerdict::YesUpToBound(MONOID_CHECK_BOUND));
        assert!(u.to_dot().starts_with("digraph poset {"));
    }
}
