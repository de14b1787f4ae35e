//! Backtracking decision procedure for rx4(G) = 3.
//!
//! With three colors a rainbow tree for a 4-set has exactly three edges, so
//! it spans the 4-set itself: a 3-coloring is 4-rainbow iff every induced
//! order-4 subgraph is connected and shows all three colors. The search
//! orders vertices, sorts edges by their larger endpoint so that every
//! colored prefix is the edge set induced on a vertex prefix, and checks each
//! 4-set as soon as its last induced edge is colored.

use super::{EdgeColoring, RainbowError};
use crate::graph::{k_subsets, mask_of, Edge, Graph};

/// No graph on 10 or more vertices has rx4 = 3: every 3-coloring of K10
/// leaves some K4 with at most two colors.
pub const DECIDE_MAX_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    /// A 3-color 4-rainbow coloring of the input graph, if one exists.
    pub coloring: Option<EdgeColoring>,
    /// Color assignments tried.
    pub nodes: u64,
}

/// Whether a fully colored 4-set is 4-rainbow: connected with three colors.
fn four_set_ok(colors: &[u8], connected: bool) -> bool {
    let mut seen = 0u8;
    for &c in colors {
        seen |= 1 << c;
    }
    connected && seen.count_ones() >= 3
}

/// The prefix check on the colored edges of `g` in natural vertex order.
///
/// `partial` must color exactly the edges `f` with `(max f, min f) <=
/// (max e_s, min e_s)`; `e_s = {p, q}` is the most recent edge. Returns
/// `false` iff some 4-set `{i, j, p, q}` with `i < j < q` (both distinct from
/// `p`) has every induced edge colored but is not 4-rainbow colored.
pub fn check_prefix(g: &Graph, partial: &EdgeColoring, e_s: Edge) -> Result<bool, RainbowError> {
    partial.validate(g)?;
    if !g.has_edge(e_s.u, e_s.v) {
        return Err(RainbowError::PrefixNotInduced(e_s));
    }
    let key = |e: &Edge| (e.v, e.u);
    for (i, e) in g.edges().iter().enumerate() {
        let should = key(e) <= key(&e_s);
        if should != (partial.color(i) != 0) {
            return Err(RainbowError::PrefixNotInduced(e_s));
        }
    }
    let (p, q) = (e_s.u, e_s.v);
    for i in 0..q {
        if i == p {
            continue;
        }
        for j in i + 1..q {
            if j == p {
                continue;
            }
            let set = [i, j, p, q];
            let mut cols = Vec::with_capacity(6);
            let mut complete = true;
            for (a, b) in pairs(&set) {
                if let Some(idx) = g.edge_index(a, b) {
                    match partial.color(idx) {
                        0 => complete = false,
                        c => cols.push(c),
                    }
                }
            }
            if complete && !four_set_ok(&cols, g.is_connected_within(mask_of(&set))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn pairs(set: &[usize; 4]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..4).flat_map(move |a| (a + 1..4).map(move |b| (set[a], set[b])))
}

/// Decides rx4(G) = 3, returning a witness 3-coloring when it holds.
pub fn decide_rx4_equals_3(g: &Graph) -> Result<Option<EdgeColoring>, RainbowError> {
    Ok(decide_rx4_equals_3_with(g, None)?.coloring)
}

/// As [`decide_rx4_equals_3`], with an optional cap on color assignments.
pub fn decide_rx4_equals_3_with(g: &Graph, budget: Option<u64>) -> Result<Decision, RainbowError> {
    let n = g.order();
    if n < 4 {
        return Err(RainbowError::KOutOfRange { k: 4, n });
    }
    if !g.is_connected() {
        return Err(RainbowError::Disconnected);
    }
    if n > DECIDE_MAX_ORDER {
        return Ok(Decision { coloring: None, nodes: 0 });
    }
    if k_subsets(n, 4).iter().any(|s| !g.is_connected_within(mask_of(s))) {
        return Ok(Decision { coloring: None, nodes: 0 });
    }

    // Descending degree, ties by index; perm[old] = position.
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut perm = vec![0; n];
    for (pos, &v) in by_degree.iter().enumerate() {
        perm[v] = pos;
    }
    let h = g.relabel(&perm);

    let mut order: Vec<Edge> = h.edges().to_vec();
    order.sort_by_key(|e| (e.v, e.u));
    let m = order.len();
    let mut index_of = vec![vec![usize::MAX; n]; n];
    for (i, e) in order.iter().enumerate() {
        index_of[e.u][e.v] = i;
        index_of[e.v][e.u] = i;
    }

    let check = |colors: &[u8], s: usize| -> bool {
        let Edge { u: p, v: q } = order[s];
        for i in 0..q {
            if i == p {
                continue;
            }
            for j in i + 1..q {
                if j == p {
                    continue;
                }
                let set = [i, j, p, q];
                let mut cols = [0u8; 6];
                let mut count = 0;
                let mut complete = true;
                for (a, b) in pairs(&set) {
                    let idx = index_of[a][b];
                    if idx == usize::MAX {
                        continue;
                    }
                    if idx > s {
                        complete = false;
                        break;
                    }
                    cols[count] = colors[idx];
                    count += 1;
                }
                // Induced 4-sets are connected (checked above).
                if complete && !four_set_ok(&cols[..count], true) {
                    return false;
                }
            }
        }
        true
    };

    // colors[0] is fixed to 1; `i` walks the remaining edges.
    let mut colors = vec![0u8; m];
    colors[0] = 1;
    let mut nodes = 0u64;
    let mut i = 1usize;
    let found = loop {
        if i >= m {
            break true;
        }
        colors[i] += 1;
        nodes += 1;
        if budget.is_some_and(|b| nodes > b) {
            return Err(RainbowError::BudgetExhausted { budget: budget.unwrap_or(0) });
        }
        if colors[i] > 3 {
            colors[i] = 0;
            if i == 1 {
                break false;
            }
            i -= 1;
        } else if check(&colors, i) {
            i += 1;
        }
    };
    // A single edge (m = 1) never happens for n >= 4 connected graphs, but the
    // first edge alone must still pass its own check.
    let found = found && (m > 1 || check(&colors, 0));

    let coloring = if found {
        let mut c = EdgeColoring::uncolored(g, 3)?;
        for (pos, e) in order.iter().enumerate() {
            let idx = g.edge_index(by_degree[e.u], by_degree[e.v]).expect("relabelled edge exists");
            c.set(idx, colors[pos]);
        }
        Some(c)
    } else {
        None
    };
    Ok(Decision { coloring, nodes })
}
