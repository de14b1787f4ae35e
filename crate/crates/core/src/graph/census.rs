//! Non-isomorphic graph generation by vertex extension.

use std::collections::HashSet;

use super::{canonical_form, canonical_key, Graph, GraphError};
use crate::exec::Exec;

/// Largest order generated internally; larger censuses are ingested from graph6 files.
pub const MAX_CENSUS_ORDER: usize = 7;

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, each in canonical form, sorted by canonical key.
pub fn enumerate_connected_graphs(n: usize, exec: Exec) -> Result<Vec<Graph>, GraphError> {
    if n == 0 || n > MAX_CENSUS_ORDER {
        return Err(GraphError::CensusOrder { n, max: MAX_CENSUS_ORDER });
    }
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        level = extend(&level, exec)?;
    }
    Ok(level.into_iter().filter(Graph::is_connected).collect())
}

/// All graphs on `j + 1` vertices up to isomorphism, from all graphs on `j`.
/// Each child is a parent plus a new vertex joined to a subset of the old ones;
/// every class arises this way (delete any vertex), and canonical keys
/// filter the duplicates.
fn extend(parents: &[Graph], exec: Exec) -> Result<Vec<Graph>, GraphError> {
    let j = parents[0].order();
    let children: Vec<(u128, Graph)> = exec
        .map(parents, |p| {
            let mut local = Vec::with_capacity(1 << j);
            let mut seen = HashSet::new();
            for subset in 0u64..1 << j {
                let mut adj = p.adjacency().to_vec();
                adj.push(subset);
                for v in super::bits(subset) {
                    adj[v] |= 1 << j;
                }
                let child = Graph::from_adjacency(adj);
                let key = canonical_key(&child).expect("census orders are within the canonical budget");
                if seen.insert(key) {
                    local.push((key, child));
                }
            }
            local
        })
        .into_iter()
        .flatten()
        .collect();

    let mut seen = HashSet::new();
    let mut unique: Vec<(u128, Graph)> = children.into_iter().filter(|(k, _)| seen.insert(*k)).collect();
    unique.sort_unstable_by_key(|(k, _)| *k);
    let graphs: Vec<Graph> = unique.into_iter().map(|(_, g)| g).collect();
    exec.map(&graphs, canonical_form).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::low_mask;

    /// Labelled enumeration over all 2^(n choose 2) edge sets, deduplicated by
    /// the maximum adjacency key over all n! permutations. Shares no code with
    /// the pruned canonical search.
    fn brute_force_connected_classes(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut classes = HashSet::new();
        for mask in 0u64..1 << pairs.len() {
            let mut adj = vec![0u64; n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
            if !connected(&adj) {
                continue;
            }
            let best = perms
                .iter()
                .map(|p| {
                    pairs.iter().fold(0u64, |acc, &(u, v)| acc << 1 | (adj[p[u]] >> p[v] & 1))
                })
                .max()
                .unwrap();
            classes.insert(best);
        }
        classes.len()
    }

    fn connected(adj: &[u64]) -> bool {
        let mut seen = 1u64;
        loop {
            let next = super::super::bits(seen).fold(seen, |acc, v| acc | adj[v]);
            if next == seen {
                return seen == low_mask(adj.len());
            }
            seen = next;
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for k in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..=k).map(move |i| {
                        let mut q = p.clone();
                        q.insert(i, k);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(brute_force_connected_classes(4), 6);
        assert_eq!(brute_force_connected_classes(5), 21);
        assert_eq!(brute_force_connected_classes(6), 112);
    }

    #[test]
    fn census_counts_match_oracle() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected_graphs(n, Exec::Parallel).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn census_is_deterministic_and_pairwise_non_isomorphic() {
        let a = enumerate_connected_graphs(5, Exec::Sequential).unwrap();
        let b = enumerate_connected_graphs(5, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        for (i, g) in a.iter().enumerate() {
            assert!(g.is_connected());
            for h in &a[i + 1..] {
                assert!(!crate::graph::is_isomorphic(g, h));
            }
        }
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(enumerate_connected_graphs(8, Exec::Sequential), Err(GraphError::CensusOrder { .. })));
        assert!(matches!(enumerate_connected_graphs(0, Exec::Sequential), Err(GraphError::CensusOrder { .. })));
    }
}
