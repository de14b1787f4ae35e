//! Canonical labelling by pruned permutation search, and subgraph embedding.
//!
//! The canonical form is the relabelling whose graph6 adjacency bit string
//! (column-major upper triangle) is lexicographically smallest among all
//! relabellings that order vertices by a fixed invariant: degree, then the
//! sorted degree multiset of the neighbourhood.

use super::{bits, Graph, GraphError};

pub const MAX_CANON_ORDER: usize = 12;

/// Canonical adjacency bit string, first bit most significant. Two graphs of
/// the same order are isomorphic iff their keys are equal.
pub fn canonical_key(g: &Graph) -> Result<u128, GraphError> {
    Ok(search(g)?.0)
}

/// Relabelled copy of `g` realising [`canonical_key`].
pub fn canonical_form(g: &Graph) -> Result<Graph, GraphError> {
    let (_, order) = search(g)?;
    let mut perm = vec![0; g.order()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.relabel(&perm))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    match (search(g), search(h)) {
        (Ok((a, _)), Ok((b, _))) => a == b,
        // Orders beyond the canonical budget: fall back to a bijective embedding
        // of equal edge counts.
        _ => embeds_as_subgraph(g, h).is_some(),
    }
}

type Invariant = (usize, Vec<usize>);

struct Canon<'a> {
    g: &'a Graph,
    n: usize,
    total_bits: u32,
    /// Invariant required at each position.
    slot: Vec<Invariant>,
    inv: Vec<Invariant>,
    order: Vec<usize>,
    best: Option<(u128, Vec<usize>)>,
}

impl Canon<'_> {
    fn descend(&mut self, pos: usize, used: u64, key: u128, bits_so_far: u32) {
        if pos == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| key < *b) {
                self.best = Some((key, self.order.clone()));
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if used >> v & 1 == 1 || self.inv[v] != self.slot[pos] {
                continue;
            }
            // Twins are swapped by an automorphism fixing every placed vertex.
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);

            let mut col = 0u128;
            for &u in &self.order {
                col = col << 1 | self.g.has_edge(u, v) as u128;
            }
            let nb = bits_so_far + pos as u32;
            let next = key << pos | col;
            if let Some((best, _)) = &self.best {
                if next > best >> (self.total_bits - nb) {
                    continue;
                }
            }
            self.order.push(v);
            self.descend(pos + 1, used | 1 << v, next, nb);
            self.order.pop();
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let mask = !(1u64 << a | 1u64 << b);
        self.g.neighbors(a) & mask == self.g.neighbors(b) & mask
    }
}

fn search(g: &Graph) -> Result<(u128, Vec<usize>), GraphError> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(GraphError::CanonBudget { n, max: MAX_CANON_ORDER });
    }
    let degs = g.degrees();
    let inv: Vec<Invariant> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = bits(g.neighbors(v)).map(|w| degs[w]).collect();
            nd.sort_unstable();
            (degs[v], nd)
        })
        .collect();
    let mut slot = inv.clone();
    slot.sort_unstable_by(|a, b| b.cmp(a));
    let mut c = Canon {
        g,
        n,
        total_bits: (n * (n - 1) / 2) as u32,
        slot,
        inv,
        order: Vec::with_capacity(n),
        best: None,
    };
    c.descend(0, 0, 0, 0);
    Ok(c.best.expect("at least one labelling exists"))
}

/// Finds an injective map of `pattern`'s vertices into `host` carrying every
/// pattern edge onto a host edge. Isolated pattern vertices take any unused
/// host vertex. Returns `mapping[pattern_vertex] = host_vertex`.
pub fn embeds_as_subgraph(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let (pn, hn) = (pattern.order(), host.order());
    if pn > hn || pattern.size() > host.size() {
        return None;
    }
    // Place non-isolated vertices in BFS order from high-degree roots so that
    // each new vertex usually has an already-mapped neighbour.
    let mut order = Vec::with_capacity(pn);
    let mut placed = 0u64;
    loop {
        let root = (0..pn)
            .filter(|&v| placed >> v & 1 == 0 && pattern.degree(v) > 0)
            .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)));
        let Some(root) = root else { break };
        let mut queue = std::collections::VecDeque::from([root]);
        placed |= 1 << root;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in bits(pattern.neighbors(v) & !placed) {
                placed |= 1 << w;
                queue.push_back(w);
            }
        }
    }
    let mut map = vec![usize::MAX; pn];
    if !embed_step(pattern, host, &order, 0, 0, &mut map) {
        return None;
    }
    let mut free = bits(host.all_vertices() & !map.iter().filter(|&&h| h != usize::MAX).fold(0u64, |a, &h| a | 1 << h));
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = free.next()?;
    }
    Some(map)
}

fn embed_step(p: &Graph, h: &Graph, order: &[usize], idx: usize, used: u64, map: &mut [usize]) -> bool {
    let Some(&v) = order.get(idx) else {
        return true;
    };
    let need = p.degree(v);
    // Candidates must neighbour the image of every mapped neighbour of v.
    let mut cand = h.all_vertices() & !used;
    for w in bits(p.neighbors(v)) {
        if map[w] != usize::MAX {
            cand &= h.neighbors(map[w]);
        }
    }
    for x in bits(cand) {
        if h.degree(x) < need {
            continue;
        }
        map[v] = x;
        if embed_step(p, h, order, idx + 1, used | 1 << x, map) {
            return true;
        }
    }
    map[v] = usize::MAX;
    false
}
