//! Exact arithmetic for $(S,r)$-restricted Stirling numbers and their relatives.
//!
//! A set $S$ of allowed block (or cycle) sizes and a number $r$ of special
//! elements determine the $(S,r)$-Stirling numbers of both kinds. Everything
//! here is computed by extracting coefficients from truncated exponential
//! generating functions over exact rationals, and cross-checked against
//! brute-force enumeration of the underlying combinatorial objects.
//!
//! Module map:
//! - [`series`]: truncated power series over $\mathbb{Q}$.
//! - [`indexset`]: the block-size set $S$, its derivative and monoid test.
//! - [`stirling`]: Stirling/Bell/factorial numbers, oracles and identities.
//! - [`riordan`]: exponential Riordan arrays and their inverses.
//! - [`posets`]: composition-partition posets and their Möbius functions.
//! - [`graphcombi`]: clique partitions and acyclic orientations.
//! - [`polyseq`]: $(S,r)$-poly-Bernoulli and poly-Cauchy numbers.

pub mod error;
pub mod graphcombi;
pub mod guard;
pub mod indexset;
pub mod polyseq;
pub mod posets;
pub mod riordan;
pub mod series;
pub mod stirling;

pub use error::{Error, Result};
pub use guard::Guards;
pub use indexset::{IndexSet, MonoidVerdict, MonoidWitness};
pub use riordan::{RiordanPair, TriMatrix};
pub use series::{EgfSeries, Rational};
pub use stirling::{IntPolynomial, Kind, SRContext};
pub use graphcombi::Graph;
pub use posets::{MonoidPolicy, OrderedUniverse, PairUniverse, Poset};
