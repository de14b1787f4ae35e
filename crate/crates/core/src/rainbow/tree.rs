use super::{check_k, EdgeColoring, RainbowError};
use crate::exec::Exec;
use crate::graph::{bits, k_subsets, mask_of, Edge, Graph};

/// Outcome of a k-rainbow verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// The lexicographically smallest k-set without a rainbow tree.
    Invalid { witness: Vec<usize> },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Searches for a rainbow tree containing `terminals`.
///
/// Vertex supersets `W ⊇ S` are tried by increasing size (at most one more
/// than the number of distinct colors, since a rainbow tree cannot have more
/// edges than colors), and spanning trees of `G[W]` are searched with
/// color-clash pruning. Returns the tree's edges.
pub fn find_rainbow_tree(g: &Graph, c: &EdgeColoring, terminals: &[usize]) -> Option<Vec<Edge>> {
    let smask = mask_of(terminals);
    let s_count = smask.count_ones() as usize;
    if s_count <= 1 {
        return Some(Vec::new());
    }
    let limit = (c.distinct_colors() + 1).min(g.order());
    let others: Vec<usize> = bits(g.all_vertices() & !smask).collect();
    for size in s_count..=limit {
        for pick in k_subsets(others.len(), size - s_count) {
            let w = pick.iter().fold(smask, |m, &i| m | 1 << others[i]);
            if !g.is_connected_within(w) {
                continue;
            }
            if let Some(tree) = rainbow_spanning_tree(g, c, w) {
                return Some(tree);
            }
        }
    }
    None
}

/// Rainbow spanning tree of `G[w]` by include/exclude branching on border edges.
fn rainbow_spanning_tree(g: &Graph, c: &EdgeColoring, w: u64) -> Option<Vec<Edge>> {
    let local: Vec<(usize, Edge)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| w >> e.u & 1 == 1 && w >> e.v & 1 == 1)
        .map(|(i, e)| (i, *e))
        .collect();
    let mut st = SpanSearch { c, local: &local, w, forbidden: vec![false; local.len()], tree: Vec::new() };
    let root = w.trailing_zeros() as usize;
    st.grow(1 << root, 0).then(|| st.tree.iter().map(|&j| local[j].1).collect())
}

struct SpanSearch<'a> {
    c: &'a EdgeColoring,
    local: &'a [(usize, Edge)],
    w: u64,
    forbidden: Vec<bool>,
    tree: Vec<usize>,
}

impl SpanSearch<'_> {
    fn grow(&mut self, t: u64, used: u64) -> bool {
        if t == self.w {
            return true;
        }
        let border = self.local.iter().enumerate().position(|(j, (_, e))| {
            !self.forbidden[j] && ((t >> e.u & 1) ^ (t >> e.v & 1)) == 1
        });
        let Some(j) = border else {
            return false;
        };
        let (idx, e) = self.local[j];
        let col = self.c.color(idx);
        if col != 0 && used >> col & 1 == 0 {
            self.tree.push(j);
            if self.grow(t | 1 << e.u | 1 << e.v, used | 1 << col) {
                return true;
            }
            self.tree.pop();
        }
        self.forbidden[j] = true;
        let found = self.grow(t, used);
        self.forbidden[j] = false;
        found
    }
}

/// Checks that every `k`-set of vertices has a rainbow tree under `c`.
pub fn verify_k_rainbow(g: &Graph, c: &EdgeColoring, k: usize) -> Result<Verdict, RainbowError> {
    verify_k_rainbow_with(g, c, k, Exec::default())
}

pub fn verify_k_rainbow_with(g: &Graph, c: &EdgeColoring, k: usize, exec: Exec) -> Result<Verdict, RainbowError> {
    check_k(g, k)?;
    c.validate_total(g)?;
    let sets = k_subsets(g.order(), k);
    let failing = exec.find_map_first(&sets, |s| find_rainbow_tree(g, c, s).is_none().then(|| s.clone()));
    Ok(match failing {
        None => Verdict::Valid,
        Some(witness) => Verdict::Invalid { witness },
    })
}
