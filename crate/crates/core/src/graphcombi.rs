//! Clique partitions, acyclic orientations and the constrained-orientation
//! count on the doubly augmented complete bipartite graph.
//!
//! Vertex labels are fixed so that output is reproducible:
//!
//! * [`Graph::complete_bipartite`]: `A = 0..n1`, `B = n1..n1+n2`.
//! * [`Graph::join_complete_empty`]: the clique `0..n`, then the `r`
//!   independent vertices `n..n+r`.
//! * [`Graph::hat_bipartite`]: `A`, then `A*`, then `ū`; then `B`, `B*`, `v̄`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::guard::{check, Guards};
use crate::indexset::IndexSet;
use crate::series::factorial;
use crate::stirling::SRContext;
use crate::{Error, Result};

/// A simple undirected graph on `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    vertices: usize,
    /// Pairs `(a, b)` with `a < b`, sorted.
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Self> {
        Graph::new(g.vertices, g.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            vertices: g.vertices,
            edges: g.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl Graph {
    /// Rejects loops, duplicates (in either direction) and out-of-range ends.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) leaves 0..{vertices}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a},{b})")));
            }
        }
        Ok(Graph { vertices, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            vertices: n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph { vertices: n, edges }
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|b| (b - 1, b)).collect();
        Graph { vertices: n, edges }
    }

    pub fn complete_bipartite(n1: usize, n2: usize) -> Self {
        let edges = (0..n1).flat_map(|a| (n1..n1 + n2).map(move |b| (a, b))).collect();
        Graph {
            vertices: n1 + n2,
            edges,
        }
    }

    /// $K_n + E_r$: a clique on `n` vertices, `r` pairwise non-adjacent
    /// vertices, and every edge between the two.
    pub fn join_complete_empty(n: usize, r: usize) -> Self {
        let mut g = Graph::complete(n);
        g.vertices = n + r;
        for a in 0..n {
            for b in n..n + r {
                g.edges.insert((a, b));
            }
        }
        g
    }

    /// $\widehat{K}_{n_1+r,n_2+r}$, complete bipartite on
    /// `A ∪ A* ∪ {ū}` and `B ∪ B* ∪ {v̄}`.
    pub fn hat_bipartite(n1: usize, n2: usize, r: usize) -> Self {
        Graph::complete_bipartite(n1 + r + 1, n2 + r + 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn complement(&self) -> Self {
        let edges = (0..self.vertices)
            .flat_map(|a| (a + 1..self.vertices).map(move |b| (a, b)))
            .filter(|e| !self.edges.contains(e))
            .collect();
        Graph {
            vertices: self.vertices,
            edges,
        }
    }

    /// Neighbourhoods as bitmasks (requires at most 64 vertices).
    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertices];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidGraph(e.to_string()))
    }
}

/// One direction per edge: bit `i` set means edge `i` (canonical order)
/// points from its larger end to its smaller end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    bits: u64,
    edges: usize,
}

impl Orientation {
    pub fn new(graph: &Graph, bits: u64) -> Result<Self> {
        let m = graph.edge_count();
        if m > 64 || (m < 64 && bits >> m != 0) {
            return Err(Error::InvalidGraph(format!("{bits:#x} does not fit {m} edges")));
        }
        Ok(Orientation { bits, edges: m })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Directed out-neighbourhoods.
    pub fn out_masks(&self, graph: &Graph) -> Vec<u64> {
        let mut out = vec![0u64; graph.vertex_count()];
        for (i, (a, b)) in graph.edges().into_iter().enumerate() {
            if self.bits & (1 << i) == 0 {
                out[a] |= 1 << b;
            } else {
                out[b] |= 1 << a;
            }
        }
        out
    }

    /// Acyclic iff a topological sort (Kahn) consumes every vertex.
    pub fn is_acyclic(&self, graph: &Graph) -> bool {
        let out = self.out_masks(graph);
        let n = out.len();
        let mut indeg = vec![0u32; n];
        for m in &out {
            for (v, d) in indeg.iter_mut().enumerate() {
                if m & (1 << v) != 0 {
                    *d += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for (w, d) in indeg.iter_mut().enumerate() {
                if out[v] & (1 << w) != 0 {
                    *d -= 1;
                    if *d == 0 {
                        queue.push(w);
                    }
                }
            }
        }
        seen == n
    }

    /// Cycle detection by depth-first search with three colours.
    pub fn has_cycle_dfs(&self, graph: &Graph) -> bool {
        fn visit(v: usize, out: &[u64], colour: &mut [u8]) -> bool {
            colour[v] = 1;
            for w in 0..out.len() {
                if out[v] & (1 << w) != 0
                    && (colour[w] == 1 || (colour[w] == 0 && visit(w, out, colour))) {
                        return true;
                    }
            }
            colour[v] = 2;
            false
        }
        let out = self.out_masks(graph);
        let mut colour = vec![0u8; out.len()];
        (0..out.len()).any(|v| colour[v] == 0 && visit(v, &out, &mut colour))
    }
}

/// Whether `to` reaches `from` in the partial orientation `out`.
fn reaches(out: &[u64], from: usize, to: usize) -> bool {
    let mut seen = 1u64 << from;
    let mut frontier = 1u64 << from;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        if v == to {
            return true;
        }
        let next = out[v] & !seen;
        seen |= next;
        frontier |= next;
    }
    false
}

/// Visits every acyclic orientation of `graph` (as out-masks), orienting one
/// edge at a time and skipping any direction that would close a cycle.
fn for_each_acyclic(graph: &Graph, guards: &Guards, visit: &mut dyn FnMut(&[u64])) -> Result<()> {
    check("edges (orientation)", graph.edge_count(), guards.orientation_edges)?;
    if graph.vertex_count() > 64 {
        return Err(Error::InvalidGraph("more than 64 vertices".into()));
    }
    fn rec(edges: &[(usize, usize)], i: usize, out: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
        let Some(&(a, b)) = edges.get(i) else {
            visit(out);
            return;
        };
        for (s, t) in [(a, b), (b, a)] {
            if !reaches(out, t, s) {
                out[s] |= 1 << t;
                rec(edges, i + 1, out, visit);
                out[s] &= !(1 << t);
            }
        }
    }
    let edges = graph.edges();
    let mut out = vec![0u64; graph.vertex_count()];
    rec(&edges, 0, &mut out, visit);
    Ok(())
}

/// $A(G)$ by exhaustive search.
pub fn count_acyclic_orientations(graph: &Graph, guards: &Guards) -> Result<BigInt> {
    let mut count = 0u64;
    for_each_acyclic(graph, guards, &mut |_| count += 1)?;
    Ok(count.into())
}

/// $A(G)$ by scanning all $2^{|E|}$ orientations with a topological sort.
pub fn count_acyclic_orientations_scan(graph: &Graph, guards: &Guards) -> Result<BigInt> {
    check("edges (orientation)", graph.edge_count(), guards.orientation_edges)?;
    let mut count = 0u64;
    for bits in 0..1u64 << graph.edge_count() {
        if Orientation::new(graph, bits)?.is_acyclic(graph) {
            count += 1;
        }
    }
    Ok(count.into())
}

/// Whether the values at `group` have every multiplicity in `set`.
fn multiplicities_in(values: impl Iterator<Item = u32>, set: &IndexSet) -> bool {
    let mut counts = std::collections::BTreeMap::new();
    for v in values {
        *counts.entry(v).or_insert(0u64) += 1;
    }
    counts.values().all(|&c| set.contains(c))
}

fn pairwise_distinct(values: impl Iterator<Item = u32>) -> bool {
    let mut seen = BTreeSet::new();
    values.into_iter().all(|v| seen.insert(v))
}

/// Acyclic orientations of $\widehat{K}_{n_1+r,n_2+r}$ such that
///
/// * on each side (without `ū`, `v̄`) the number of vertices sharing an
///   outdegree lies in `S`;
/// * the special vertices of each side have pairwise distinct outdegrees;
/// * `ū` is the only source and `v̄` the only sink.
pub fn count_constrained_orientations(
    n1: usize,
    n2: usize,
    r: usize,
    set: &IndexSet,
    guards: &Guards,
) -> Result<BigInt> {
    let graph = Graph::hat_bipartite(n1, n2, r);
    let u_bar = n1 + r;
    let b0 = n1 + r + 1;
    let v_bar = b0 + n2 + r;
    let side_a = 0..n1 + r;
    let side_b = b0..b0 + n2 + r;
    let specials_a = n1..n1 + r;
    let specials_b = b0 + n2..b0 + n2 + r;
    let mut count = 0u64;
    for_each_acyclic(&graph, guards, &mut |out| {
        let outdeg = |v: usize| out[v].count_ones();
        let mut indeg = vec![0u32; out.len()];
        for m in out {
            for (v, d) in indeg.iter_mut().enumerate() {
                if m & (1 << v) != 0 {
                    *d += 1;
                }
            }
        }
        let sources: Vec<usize> = (0..out.len()).filter(|&v| indeg[v] == 0).collect();
        let sinks: Vec<usize> = (0..out.len()).filter(|&v| outdeg(v) == 0).collect();
        if sources != [u_bar] || sinks != [v_bar] {
            return;
        }
        if !pairwise_distinct(specials_a.clone().map(outdeg)) || !pairwise_distinct(specials_b.clone().map(outdeg)) {
            return;
        }
        if multiplicities_in(side_a.clone().map(outdeg), set) && multiplicities_in(side_b.clone().map(outdeg), set) {
            count += 1;
        }
    })?;
    Ok(count.into())
}

/// $\sum_{k} (k+r)!^2 {n_1 \brace k}_{S,r} {n_2 \brace k}_{S,r}$.
pub fn constrained_orientation_formula(n1: usize, n2: usize, r: usize, set: &IndexSet) -> Result<BigInt> {
    let ctx = SRContext::new(set.clone(), r)?;
    let mut total = BigInt::from(0);
    for k in 0..=n1.min(n2) {
        let f = factorial(k + r);
        total += &f * &f * ctx.stirling2(n1, k)? * ctx.stirling2(n2, k)?;
    }
    Ok(total)
}

/// Counts partitions of the vertex set into blocks accepted by `block_ok`,
/// indexed by the number of blocks.
fn partition_counts_by(graph: &Graph, guards: &Guards, block_ok: &dyn Fn(u64) -> bool) -> Result<Vec<BigInt>> {
    let n = graph.vertex_count();
    check("vertices (clique partition)", n, guards.clique_vertices)?;
    fn rec(rest: u64, blocks: usize, block_ok: &dyn Fn(u64) -> bool, counts: &mut [u64]) {
        if rest == 0 {
            counts[blocks] += 1;
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        // every subset of `others`, joined with the least remaining vertex
        let mut sub = others;
        loop {
            let block = sub | low;
            if block_ok(block) {
                rec(rest & !block, blocks + 1, block_ok, counts);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut counts = vec![0u64; n + 1];
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    rec(all, 0, block_ok, &mut counts);
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// ${G \brace k}^c_S$ for every `k = 0..=|V|` (`k` counts all blocks).
pub fn clique_partition_counts(graph: &Graph, set: &IndexSet, guards: &Guards) -> Result<Vec<BigInt>> {
    let adj = graph.adjacency();
    partition_counts_by(graph, guards, &|block| {
        set.contains(block.count_ones() as u64) && is_clique(block, &adj)
    })
}

pub fn clique_partition_count(graph: &Graph, k: usize, set: &IndexSet, guards: &Guards) -> Result<BigInt> {
    Ok(clique_partition_counts(graph, set, guards)?
        .get(k)
        .cloned()
        .unwrap_or_default())
}

/// $B_S(G)^c$.
pub fn clique_partition_total(graph: &Graph, set: &IndexSet, guards: &Guards) -> Result<BigInt> {
    Ok(clique_partition_counts(graph, set, guards)?.into_iter().sum())
}

/// Partitions into independent sets with sizes in `S`, by number of blocks.
pub fn independent_partition_counts(graph: &Graph, set: &IndexSet, guards: &Guards) -> Result<Vec<BigInt>> {
    let adj = graph.adjacency();
    partition_counts_by(graph, guards, &|block| {
        set.contains(block.count_ones() as u64) && is_independent(block, &adj)
    })
}

fn is_clique(block: u64, adj: &[u64]) -> bool {
    let mut rest = block;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if block & !(1 << v) & !adj[v] != 0 {
            return false;
        }
    }
    true
}

fn is_independent(block: u64, adj: &[u64]) -> bool {
    let mut rest = block;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if block & adj[v] != 0 {
            return false;
        }
    }
    true
}
