//! Steiner distance `d(S)` and the k-Steiner diameter.
//!
//! Sizes come from a Dreyfus-Wagner dynamic program over terminal subsets.
//! The witness tree is the lexicographically smallest minimum tree: among all
//! connected vertex sets `W ⊇ S` with `|W| = d(S) + 1`, the greedy (Kruskal)
//! spanning tree of `G[W]` in edge order is the lex-smallest one for that `W`.

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::graph::{bits, k_subsets, mask_of, Edge, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteinerError {
    #[error("terminal set is empty")]
    NoTerminals,
    #[error("terminal {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("terminals lie in different components; no tree connects them")]
    NoTree,
    #[error("k = {k} must satisfy 2 <= k <= n = {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinerResult {
    pub terminals: Vec<usize>,
    pub size: usize,
    pub tree: Vec<Edge>,
}

const INF: usize = usize::MAX / 4;

fn all_pairs(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order())
        .map(|s| g.bfs_distances(s).into_iter().map(|d| d.unwrap_or(INF)).collect())
        .collect()
}

/// Minimum edge count of a tree containing `terminals`, by Dreyfus-Wagner.
fn dreyfus_wagner(dist: &[Vec<usize>], terminals: &[usize]) -> usize {
    let n = dist.len();
    let t = terminals.len();
    if t <= 1 {
        return 0;
    }
    let full = (1usize << t) - 1;
    let mut dp = vec![vec![INF; n]; 1 << t];
    for (i, &term) in terminals.iter().enumerate() {
        dp[1 << i].clone_from(&dist[term]);
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        // Best split anchored at each vertex.
        let low = mask & mask.wrapping_neg();
        let mut joined = vec![INF; n];
        let mut sub = (mask - 1) & mask;
        while sub > 0 {
            if sub & low != 0 {
                let rest = mask ^ sub;
                for (u, best) in joined.iter_mut().enumerate() {
                    *best = (*best).min(dp[sub][u] + dp[rest][u]);
                }
            }
            sub = (sub - 1) & mask;
        }
        for v in 0..n {
            dp[mask][v] = (0..n).map(|u| joined[u] + dist[u][v]).min().unwrap_or(INF);
        }
    }
    dp[full][terminals[0]]
}

/// Lex-smallest spanning tree of `G[within]` by greedy edge insertion.
fn greedy_spanning_tree(g: &Graph, within: u64) -> Vec<Edge> {
    let mut comp: Vec<usize> = (0..g.order()).collect();
    let mut tree = Vec::new();
    for e in g.edges() {
        if within >> e.u & 1 == 0 || within >> e.v & 1 == 0 {
            continue;
        }
        let (a, b) = (comp[e.u], comp[e.v]);
        if a != b {
            for c in comp.iter_mut() {
                if *c == b {
                    *c = a;
                }
            }
            tree.push(*e);
        }
    }
    tree
}

fn check_terminals(g: &Graph, terminals: &[usize]) -> Result<Vec<usize>, SteinerError> {
    if terminals.is_empty() {
        return Err(SteinerError::NoTerminals);
    }
    let n = g.order();
    if let Some(&vertex) = terminals.iter().find(|&&v| v >= n) {
        return Err(SteinerError::VertexOutOfRange { vertex, n });
    }
    let mut s = terminals.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Steiner distance of `terminals` together with its lex-smallest minimum tree.
pub fn steiner_distance(g: &Graph, terminals: &[usize]) -> Result<SteinerResult, SteinerError> {
    let s = check_terminals(g, terminals)?;
    let size = dreyfus_wagner(&all_pairs(g), &s);
    if size >= INF {
        return Err(SteinerError::NoTree);
    }
    let smask = mask_of(&s);
    let others: Vec<usize> = bits(g.all_vertices() & !smask).collect();
    let extra = size + 1 - s.len();
    let tree = k_subsets(others.len(), extra)
        .into_iter()
        .map(|pick| pick.iter().fold(smask, |m, &i| m | 1 << others[i]))
        .filter(|&w| g.is_connected_within(w))
        .map(|w| greedy_spanning_tree(g, w))
        .min()
        .expect("a set of the optimal order exists");
    Ok(SteinerResult { terminals: s, size, tree })
}

/// Size-only Steiner distance; `None` when no tree exists.
pub fn steiner_size(g: &Graph, terminals: &[usize]) -> Option<usize> {
    let d = dreyfus_wagner(&all_pairs(g), terminals);
    (d < INF).then_some(d)
}

/// Maximum Steiner distance over all `k`-subsets.
pub fn steiner_diameter(g: &Graph, k: usize) -> Result<usize, SteinerError> {
    steiner_diameter_with(g, k, Exec::default())
}

pub fn steiner_diameter_with(g: &Graph, k: usize, exec: Exec) -> Result<usize, SteinerError> {
    let n = g.order();
    if k < 2 || k > n {
        return Err(SteinerError::KOutOfRange { k, n });
    }
    if !g.is_connected() {
        return Err(SteinerError::Disconnected);
    }
    let dist = all_pairs(g);
    let sets = k_subsets(n, k);
    Ok(exec.max_by_key(&sets, |s| dreyfus_wagner(&dist, s)).unwrap_or(0))
}
