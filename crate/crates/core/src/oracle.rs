//! Brute-force face enumeration.
//!
//! Faces of `Flow_n(a)` with `a >= 0` correspond to the subgraphs `H` of
//! `K_{n+1}` that are supports of `a`-flows; the dimension of a face is the
//! first Betti number `|E| - |V| + c` of its graph, and the empty face
//! corresponds to the empty graph. This module walks all `2^(n(n+1)/2)`
//! edge subsets and tallies the valid ones by Betti number.
//!
//! # Validity
//!
//! On a DAG whose only demand vertex is the sink, every flow decomposes
//! into paths from supply vertices (`a_i > 0`) to `v_{n+1}`. Hence `H` is
//! the support of a strictly positive flow iff
//!
//! 1. every supply vertex reaches the sink inside `H`, and
//! 2. every edge `(u, v)` of `H` lies on such a path: `u` is a supply vertex
//!    or is reachable from one, and `v` reaches the sink.
//!
//! Conversely, given (1) and (2), spreading each supply over a path through
//! every edge it can reach gives a flow whose support is exactly `H`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::compositions::NetflowVector;
use crate::facecount::FVector;

/// Largest `n` whose edge set fits the 64-bit subgraph representation.
pub const MAX_SUBGRAPH_ORDER: usize = 10;

/// Default enumeration cap: `K_7` has 21 edges, about two million subsets.
pub const DEFAULT_MAX_ORACLE_N: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("subgraph has order {graph} but netflow vector has length {netflow}")]
    SizeMismatch { graph: usize, netflow: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("edge ({0}, {1}) is not an edge of K_{2}")]
    BadEdge(usize, usize, usize),
    #[error("could not build worker pool: {0}")]
    ThreadPool(String),
}

/// Index of edge `(i, j)`, `1 <= i < j <= n + 1`, in lexicographic order.
fn edge_index(n: usize, i: usize, j: usize) -> usize {
    // Edges leaving v_1 .. v_{i-1} come first.
    let before: usize = (1..i).map(|k| n + 1 - k).sum();
    before + (j - i - 1)
}

/// A subgraph of the transitively directed `K_{n+1}` on `v_1, ..., v_{n+1}`.
///
/// Bit `k` of `edges` is the `k`-th edge `(i, j)`, `i < j`, in
/// lexicographic order. The vertex set is the set of edge endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgraph {
    n: usize,
    edges: u64,
}

impl Subgraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SUBGRAPH_ORDER);
        Self { n, edges: 0 }
    }

    pub fn from_bits(n: usize, edges: u64) -> Self {
        assert!(n <= MAX_SUBGRAPH_ORDER);
        let width = edge_count(n);
        debug_assert!(width == 64 || edges >> width == 0);
        Self { n, edges }
    }

    pub fn from_edges(n: usize, list: &[(usize, usize)]) -> Result<Self, OracleError> {
        let mut h = Self::empty(n);
        for &(i, j) in list {
            if i == 0 || i >= j || j > n + 1 {
                return Err(OracleError::BadEdge(i, j, n + 1));
            }
            h.edges |= 1 << edge_index(n, i, j);
        }
        Ok(h)
    }

    /// The complete graph `K_{n+1}`.
    pub fn complete(n: usize) -> Self {
        let width = edge_count(n);
        Self::from_bits(
            n,
            if width == 64 {
                u64::MAX
            } else {
                (1 << width) - 1
            },
        )
    }

    /// The path `v_1 -> v_2 -> ... -> v_{n+1}`.
    pub fn path(n: usize) -> Self {
        let list: Vec<_> = (1..=n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &list).expect("path edges are valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.edges
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && i < j && j <= self.n + 1 && self.edges >> edge_index(self.n, i, j) & 1 == 1
    }

    pub fn with_edge(&self, i: usize, j: usize) -> Self {
        Self {
            n: self.n,
            edges: self.edges | 1 << edge_index(self.n, i, j),
        }
    }

    /// Edges `(i, j)` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        edge_list(self.n)
            .into_iter()
            .enumerate()
            .filter(|(k, _)| self.edges >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    /// Bit `v - 1` set for every endpoint `v`.
    pub fn vertex_mask(&self) -> u32 {
        self.edges()
            .iter()
            .fold(0, |m, &(i, j)| m | 1 << (i - 1) | 1 << (j - 1))
    }

    pub fn is_spanning(&self) -> bool {
        self.vertex_mask() == (1u32 << (self.n + 1)) - 1
    }

    /// Spanning and weakly connected.
    pub fn is_primitive(&self) -> bool {
        self.is_spanning() && components(self) == 1
    }
}

pub fn edge_count(n: usize) -> usize {
    n * (n + 1) / 2
}

pub fn edge_list(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n + 1).map(move |j| (i, j)))
        .collect()
}

/// Number of weakly connected components on the endpoint set.
fn components(h: &Subgraph) -> usize {
    let mut parent: Vec<usize> = (0..=h.n + 1).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mask = h.vertex_mask();
    let mut count = mask.count_ones() as usize;
    for (i, j) in h.edges() {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            count -= 1;
        }
    }
    count
}

/// First Betti number `|E| - |V| + c`.
pub fn betti(h: &Subgraph) -> usize {
    let v = h.vertex_mask().count_ones() as usize;
    h.edge_count() + components(h) - v
}

/// Per-vertex adjacency bitmasks for a fixed `n`, reused across subsets.
struct Adjacency {
    out: Vec<u32>,
    inc: Vec<u32>,
}

impl Adjacency {
    fn new(n: usize) -> Self {
        Self {
            out: vec![0; n + 2],
            inc: vec![0; n + 2],
        }
    }

    fn load(&mut self, h: &Subgraph, edges: &[(usize, usize)]) {
        self.out.iter_mut().for_each(|m| *m = 0);
        self.inc.iter_mut().for_each(|m| *m = 0);
        let mut bits = h.edges;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = edges[k];
            self.out[i] |= 1 << j;
            self.inc[j] |= 1 << i;
        }
    }
}

fn supply_mask(a: &NetflowVector) -> u32 {
    (1..=a.len())
        .filter(|&i| a.is_supply(i))
        .fold(0, |m, i| m | 1 << i)
}

fn valid_with(adj: &Adjacency, h: &Subgraph, supplies: u32, edges: &[(usize, usize)]) -> bool {
    if h.edges == 0 {
        return false;
    }
    let n = h.n;
    let sink = n + 1;
    let mut reaches_sink: u32 = 1 << sink;
    for v in (1..=n).rev() {
        if adj.out[v] & reaches_sink != 0 {
            reaches_sink |= 1 << v;
        }
    }
    if supplies & !reaches_sink != 0 {
        return false;
    }
    let mut fed = supplies;
    for v in 2..=sink {
        if adj.inc[v] & fed != 0 {
            fed |= 1 << v;
        }
    }
    let mut bits = h.edges;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (u, v) = edges[k];
        if fed >> u & 1 == 0 || reaches_sink >> v & 1 == 0 {
            return false;
        }
    }
    true
}

/// Whether `h` is the support of some `a`-flow. The empty graph is never
/// valid here; it stands for the empty face, which is counted separately.
pub fn is_valid(h: &Subgraph, a: &NetflowVector) -> Result<bool, OracleError> {
    if h.n != a.len() {
        return Err(OracleError::SizeMismatch {
            graph: h.n,
            netflow: a.len(),
        });
    }
    let edges = edge_list(h.n);
    let mut adj = Adjacency::new(h.n);
    adj.load(h, &edges);
    Ok(valid_with(&adj, h, supply_mask(a), &edges))
}

/// Counts of graphs by first Betti number.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiProfile {
    counts: Vec<u64>,
}

impl BettiProfile {
    pub fn record(&mut self, b: usize) {
        if self.counts.len() <= b {
            self.counts.resize(b + 1, 0);
        }
        self.counts[b] += 1;
    }

    pub fn get(&self, b: usize) -> u64 {
        self.counts.get(b).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn merge(mut self, other: &Self) -> Self {
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self
    }

    /// f-vector with the given count for the empty face.
    pub fn to_fvector(&self, empty_face: u64) -> FVector {
        FVector::from_entries(
            std::iter::once(BigInt::from(empty_face))
                .chain(self.counts.iter().map(|&c| BigInt::from(c))),
        )
    }
}

/// Result of one enumeration: all valid graphs and the primitive ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub all: BettiProfile,
    pub primitive: BettiProfile,
}

impl Tally {
    fn merge(self, other: &Self) -> Self {
        Self {
            all: self.all.merge(&other.all),
            primitive: self.primitive.merge(&other.primitive),
        }
    }

    pub fn fvector(&self) -> FVector {
        self.all.to_fvector(1)
    }

    pub fn primitive_fvector(&self) -> FVector {
        self.primitive.to_fvector(0)
    }
}

/// Enumeration limits and parallelism.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub max_n: usize,
    /// Worker threads; `None` uses rayon's global pool.
    pub jobs: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_ORACLE_N,
            jobs: None,
        }
    }
}

impl OracleConfig {
    fn check(&self, n: usize) -> Result<(), OracleError> {
        let cap = self.max_n.min(MAX_SUBGRAPH_ORDER);
        if n > cap {
            return Err(OracleError::CapExceeded { n, cap });
        }
        Ok(())
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, OracleError> {
        match self.jobs {
            None => Ok(f()),
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map(|pool| pool.install(f))
                .map_err(|e| OracleError::ThreadPool(e.to_string())),
        }
    }
}

/// Contiguous ranges of subset indices; merging per-range results by
/// addition makes the outcome independent of the split.
fn chunks(n: usize) -> Vec<(u64, u64)> {
    let total = 1u64 << edge_count(n);
    let size = (total / 256).max(1 << 10);
    (0..total)
        .step_by(size as usize)
        .map(|lo| (lo, (lo + size).min(total)))
        .collect()
}

fn tally_range(a: &NetflowVector, lo: u64, hi: u64) -> Tally {
    let n = a.len();
    let edges = edge_list(n);
    let supplies = supply_mask(a);
    let mut adj = Adjacency::new(n);
    let mut tally = Tally::default();
    for bits in lo.max(1)..hi {
        let h = Subgraph { n, edges: bits };
        adj.load(&h, &edges);
        if !valid_with(&adj, &h, supplies, &edges) {
            continue;
        }
        let c = components(&h);
        let verts = h.vertex_mask().count_ones() as usize;
        let b = h.edge_count() + c - verts;
        tally.all.record(b);
        if c == 1 && verts == n + 1 {
            tally.primitive.record(b);
        }
    }
    tally
}

/// Tallies every valid subgraph of `K_{n+1}` by Betti number.
pub fn enumerate(a: &NetflowVector, config: &OracleConfig) -> Result<Tally, OracleError> {
    config.check(a.len())?;
    let ranges = chunks(a.len());
    config.run(|| {
        ranges
            .par_iter()
            .map(|&(lo, hi)| tally_range(a, lo, hi))
            .reduce(Tally::default, |x, y| x.merge(&y))
    })
}

/// f-vector by enumeration; the entry at dimension -1 is the empty face.
pub fn enumerate_fvector(a: &NetflowVector, config: &OracleConfig) -> Result<FVector, OracleError> {
    Ok(enumerate(a, config)?.fvector())
}

/// Primitive f-vector by enumeration (spanning, connected graphs only).
pub fn enumerate_primitive_fvector(
    a: &NetflowVector,
    config: &OracleConfig,
) -> Result<FVector, OracleError> {
    Ok(enumerate(a, config)?.primitive_fvector())
}

/// Every valid subgraph, in increasing bit order, optionally only the
/// primitive ones.
pub fn valid_subgraphs(
    a: &NetflowVector,
    primitive_only: bool,
    config: &OracleConfig,
) -> Result<Vec<Subgraph>, OracleError> {
    config.check(a.len())?;
    let n = a.len();
    let ranges = chunks(n);
    config.run(|| {
        ranges
            .par_iter()
            .flat_map_iter(|&(lo, hi)| {
                let edges = edge_list(n);
                let supplies = supply_mask(a);
                let mut adj = Adjacency::new(n);
                (lo.max(1)..hi).filter_map(move |bits| {
                    let h = Subgraph { n, edges: bits };
                    adj.load(&h, &edges);
                    let keep = valid_with(&adj, &h, supplies, &edges)
                        && (!primitive_only || h.is_primitive());
                    keep.then_some(h)
                })
            })
            .collect()
    })
}

/// Interval tuple `(s_1, ..., s_{n-1})` of a vertex of `Flow_n(a)`.
///
/// `h` must be a valid graph with Betti number 0, so every vertex has at
/// most one outgoing edge. For `v_i` leaving along `(v_i, v_j)`,
/// `s_{i-1}` is the flow entering `v_i, ..., v_{j-1}` along edges whose
/// tails lie left of `v_i`; it is 0 when `v_i` carries no flow.
pub fn vertex_tuple(h: &Subgraph, a: &NetflowVector) -> Vec<u64> {
    let n = a.len();
    let mut target = vec![0usize; n + 2];
    for (i, j) in h.edges() {
        debug_assert_eq!(target[i], 0, "vertex graphs have out-degree at most one");
        target[i] = j;
    }
    let mut inflow = vec![0u64; n + 2];
    let mut flow: Vec<(usize, usize, u64)> = Vec::new();
    for i in 1..=n {
        if target[i] != 0 {
            let f = u64::from(a.is_supply(i)) + inflow[i];
            inflow[target[i]] += f;
            flow.push((i, target[i], f));
        }
    }
    (2..=n)
        .map(|i| {
            let j = target[i];
            if j == 0 {
                return 0;
            }
            flow.iter()
                .filter(|&&(u, w, _)| u < i && i <= w && w < j)
                .map(|&(_, _, f)| f)
                .sum()
        })
        .collect()
}

/// Interval tuples of every vertex of `Flow_n(a)`.
pub fn vertex_tuples(
    a: &NetflowVector,
    config: &OracleConfig,
) -> Result<Vec<Vec<u64>>, OracleError> {
    Ok(valid_subgraphs(a, false, config)?
        .iter()
        .filter(|h| betti(h) == 0)
        .map(|h| vertex_tuple(h, a))
        .collect())
}

/// One `digraph` block per subgraph, vertices labelled `v1 .. v{n+1}`.
pub fn to_dot(graphs: &[Subgraph]) -> String {
    let mut out = String::new();
    for (k, h) in graphs.iter().enumerate() {
        let _ = writeln!(out, "digraph H{k} {{");
        let _ = writeln!(out, "  rankdir=LR;");
        for v in 1..=h.n + 1 {
            let _ = writeln!(out, "  v{v};");
        }
        for (i, j) in h.edges() {
            let _ = writeln!(out, "  v{i} -> v{j};");
        }
        let _ = writeln!(out, "}}");
    }
    out
}
