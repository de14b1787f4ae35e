//! Small simple undirected graphs with bitset adjacency.
//!
//! Vertices are `0..n` with `n <= 62`, so every neighbourhood fits in a
//! `u64`. Graphs are immutable values; every operation returns a new graph.

mod blocks;
mod census;
mod contract;
mod graph6;
mod iso;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use blocks::{blocks, bridges};
pub use census::{enumerate_connected_graphs, MAX_CENSUS_ORDER};
pub use contract::{contract_edges, subdivide_edge, ContractionMap};
pub use graph6::{emit_graph6, parse_edge_list, parse_graph6, parse_graph_text};
pub use iso::{canonical_form, canonical_key, embeds_as_subgraph, is_isomorphic, MAX_CANON_ORDER};

/// Largest order representable with one-byte graph6 headers and `u64` rows.
pub const MAX_ORDER: usize = 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} is outside the supported range 1..={MAX_ORDER}")]
    UnsupportedOrder(usize),
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0} is not an edge of the graph")]
    MissingEdge(Edge),
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge-list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("canonical labelling supports at most {max} vertices, got {n}")]
    CanonBudget { n: usize, max: usize },
    #[error("internal census generation supports n in 1..={max}, got {n}; ingest a graph6 corpus instead")]
    CensusOrder { n: usize, max: usize },
}

/// An undirected edge `{u, v}` stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the canonical form of `{a, b}`. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loops are not edges");
        Edge { u: a.min(b), v: a.max(b) }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    // 1-based, matching the v1..vn naming used in reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}v{}", self.u + 1, self.v + 1)
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// `edges` is always sorted lexicographically; the position of an edge in
/// that list is its *edge index*, used by colorings and edge bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", e.u, e.v)?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::UnsupportedOrder(n));
        }
        Ok(Graph { n, adj: vec![0; n], edges: Vec::new() })
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = Self::empty(n)?.adj;
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Caller guarantees a symmetric, loop-free adjacency with `1 <= n <= 62`.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            let mut higher = row & !low_mask(u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                edges.push(Edge { u, v });
            }
        }
        Graph { n, adj, edges }
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::UnsupportedOrder(n));
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    /// Vertex-disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self, GraphError> {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .map(|e| (e.u, e.v))
            .chain(other.edges.iter().map(|e| (e.u + shift, e.v + shift)));
        Self::from_edges(self.n + other.n, edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Position of `{a, b}` in [`Graph::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.edges.binary_search(&Edge::new(a, b)).ok()
    }

    pub fn all_vertices(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn complement(&self) -> Graph {
        let full = self.all_vertices();
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect();
        Self::from_adjacency(adj)
    }

    /// Vertices reachable from `start` inside the vertex mask `within`.
    pub fn reachable_within(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & within & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_within(0, self.all_vertices()) == self.all_vertices()
    }

    /// Whether the subgraph induced on `mask` is connected (empty counts as connected).
    pub fn is_connected_within(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        self.reachable_within(mask.trailing_zeros() as usize, mask) == mask
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.all_vertices();
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reachable_within(left.trailing_zeros() as usize, left);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// BFS distances from `source`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for w in bits(self.adj[v]) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path distance, `None` when `u` and `v` are disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    /// `min { d(u, x) : x in set }`; `None` if no member of `set` is reachable.
    pub fn distance_to_set(&self, u: usize, set: &[usize]) -> Option<usize> {
        let dist = self.bfs_distances(u);
        set.iter().filter_map(|&x| dist.get(x).copied().flatten()).min()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in bits(self.adj[v]) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced on `set`; the returned vector maps new index -> old vertex.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut verts: Vec<usize> = set.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if let Some(&bad) = verts.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let adj = verts
            .iter()
            .map(|&old| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| self.has_edge(old, w))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok((Self::from_adjacency(adj), verts))
    }

    /// Applies `perm` (old vertex -> new vertex).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for e in &self.edges {
            let (a, b) = (perm[e.u], perm[e.v]);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Self::from_adjacency(adj)
    }

    /// Spanning subgraph keeping only the edges whose index bit is set in `keep`.
    pub fn spanning_subgraph(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let mut adj = vec![0u64; self.n];
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                adj[e.u] |= 1 << e.v;
                adj[e.v] |= 1 << e.u;
            }
        }
        Self::from_adjacency(adj)
    }
}

/// Mask with the low `k` bits set.
pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterates the set bits of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// All `k`-subsets of `0..n` as sorted vectors, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub(crate) fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &v| acc | 1 << v)
}
