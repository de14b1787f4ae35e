//! Structural recognizers for graphs with rx4 = 3 and rx4 = n - 1.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{bits, blocks, embeds_as_subgraph, Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rx_4 needs at least 4 vertices, got {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A component of the complement, sized by vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    Path(usize),
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementShape {
    /// Sorted components; empty when `valid` is false.
    pub components: Vec<Component>,
    /// False when some complement vertex has degree above 2.
    pub valid: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    Tree,
    Unicyclic,
    Cactus2,
    G1,
    G2,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureClass {
    pub class: Class,
    pub cyclomatic: usize,
    pub has_theta5: bool,
    /// `None` when the cycle enumeration budget ran out.
    pub has_three_edge_disjoint_cycles: Option<bool>,
}

impl StructureClass {
    /// Whether the class is one with rx4 = n - 1.
    pub fn rx4_is_n_minus_1(&self) -> bool {
        self.class != Class::Other
    }
}

/// Three internally disjoint paths between `x` and `y`, as vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theta {
    pub x: usize,
    pub y: usize,
    pub paths: [Vec<usize>; 3],
}

impl Theta {
    pub fn order(&self) -> usize {
        2 + self.paths.iter().map(|p| p.len() - 2).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleSearch {
    /// Three pairwise edge-disjoint cycles, each as a vertex sequence.
    Found([Vec<usize>; 3]),
    Absent,
    /// The enumeration budget ran out before a decision.
    Unknown,
}

pub const CYCLE_BUDGET: usize = 100_000;

fn require_connected(g: &Graph) -> Result<(), StructureError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(StructureError::Disconnected)
    }
}

/// `m - n + 1`.
pub fn cyclomatic_number(g: &Graph) -> Result<usize, StructureError> {
    require_connected(g)?;
    Ok(g.size() + 1 - g.order())
}

pub fn complement_shape(g: &Graph) -> ComplementShape {
    let h = g.complement();
    if h.max_degree() > 2 {
        return ComplementShape { components: Vec::new(), valid: false };
    }
    let mut components: Vec<Component> = h
        .components()
        .into_iter()
        .map(|comp| {
            let verts = comp.count_ones() as usize;
            let edges: usize = bits(comp).map(|v| h.degree(v)).sum::<usize>() / 2;
            if edges == verts && verts >= 3 {
                Component::Cycle(verts)
            } else {
                Component::Path(verts)
            }
        })
        .collect();
    components.sort_unstable();
    ComplementShape { components, valid: true }
}

fn union(parts: &[Graph]) -> Graph {
    parts[1..].iter().fold(parts[0].clone(), |acc, p| acc.disjoint_union(p).expect("small host"))
}

fn k(n: usize) -> Graph {
    Graph::complete(n).expect("small complete graph")
}

fn p(n: usize) -> Graph {
    Graph::path(n).expect("small path")
}

/// Complement hosts: G has rx4 = 3 iff its complement embeds in one of these.
fn rx4_three_hosts(n: usize) -> Vec<Graph> {
    let c6 = Graph::cycle(6).expect("C6");
    match n {
        5 => vec![p(5), union(&[k(2), k(3)])],
        6 => vec![c6, union(&[k(3), k(3)])],
        7 => vec![
            union(&[c6, k(1)]),
            union(&[k(2), k(2), k(3)]),
            union(&[p(5), k(2)]),
            union(&[k(3), k(3), k(1)]),
        ],
        8 => vec![union(&[k(2), k(3), k(3)]), union(&[p(6), k(2)])],
        9 => vec![union(&[k(3), k(3), k(3)]), union(&[p(3), k(2), k(2), k(2)])],
        _ => Vec::new(),
    }
}

/// Whether `g` is one of the graphs with rx4(G) = 3.
pub fn recognize_rx4_equals_3(g: &Graph) -> Result<bool, StructureError> {
    let n = g.order();
    if n < 4 {
        return Err(StructureError::OrderTooSmall(n));
    }
    if n == 4 {
        return Ok(g.is_connected());
    }
    let h = g.complement();
    Ok(rx4_three_hosts(n).iter().any(|host| embeds_as_subgraph(&h, host).is_some()))
}

/// Every block is a single edge or a cycle.
pub fn is_cactus(g: &Graph) -> Result<bool, StructureError> {
    require_connected(g)?;
    Ok(blocks(g).iter().all(|b| {
        let (nv, ne) = block_counts(g, b);
        nv == 2 || ne == nv
    }))
}

fn block_counts(g: &Graph, block: &[usize]) -> (usize, usize) {
    let mask = crate::graph::mask_of(block);
    let ne = block.iter().map(|&v| (g.neighbors(v) & mask).count_ones() as usize).sum::<usize>() / 2;
    (block.len(), ne)
}

/// The unique block with at least three vertices, if exactly one exists.
fn single_big_block(g: &Graph) -> Option<Vec<usize>> {
    let mut big = blocks(g).into_iter().filter(|b| b.len() >= 3);
    let first = big.next()?;
    big.next().is_none().then_some(first)
}

/// K4 with a (possibly trivial) path attached by an endpoint at each vertex.
pub fn is_g1(g: &Graph) -> Result<bool, StructureError> {
    require_connected(g)?;
    let Some(block) = single_big_block(g) else {
        return Ok(false);
    };
    if block_counts(g, &block) != (4, 6) {
        return Ok(false);
    }
    let kmask = crate::graph::mask_of(&block);
    let rest = g.spanning_subgraph(|i| {
        let e = g.edges()[i];
        !(kmask >> e.u & 1 == 1 && kmask >> e.v & 1 == 1)
    });
    for comp in rest.components() {
        let anchors = comp & kmask;
        if anchors.count_ones() != 1 {
            return Ok(false);
        }
        let anchor = anchors.trailing_zeros() as usize;
        let verts = comp.count_ones() as usize;
        if verts == 1 {
            continue;
        }
        let degs: Vec<usize> = bits(comp).map(|v| rest.degree(v)).collect();
        let is_path = degs.iter().all(|&d| d <= 2) && degs.iter().filter(|&&d| d == 1).count() == 2;
        if !is_path || rest.degree(anchor) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// K4 - e with a (possibly trivial) tree attached at each vertex.
pub fn is_g2(g: &Graph) -> Result<bool, StructureError> {
    require_connected(g)?;
    Ok(single_big_block(g).is_some_and(|b| block_counts(g, &b) == (4, 5)))
}

/// A theta subgraph of order at least `min_order`.
pub fn find_theta(g: &Graph, min_order: usize) -> Option<Theta> {
    let n = g.order();
    for x in 0..n {
        for y in x + 1..n {
            let mut st = ThetaSearch { g, x, y, min_order, paths: Vec::new(), used: 1 << x | 1 << y, found: None };
            if st.search(0) {
                let mut paths = st.found.take().expect("recorded on success").into_iter();
                let mut next = || paths.next().expect("three paths");
                return Some(Theta { x, y, paths: [next(), next(), next()] });
            }
        }
    }
    None
}

struct ThetaSearch<'a> {
    g: &'a Graph,
    x: usize,
    y: usize,
    min_order: usize,
    paths: Vec<Vec<usize>>,
    /// Vertices on any chosen path, including both ends.
    used: u64,
    found: Option<Vec<Vec<usize>>>,
}

impl ThetaSearch<'_> {
    /// Picks paths in nondecreasing order of their second vertex (the direct
    /// edge counts as second vertex `y`) to avoid permuted repeats.
    fn search(&mut self, chosen: usize) -> bool {
        if chosen == 3 {
            let ok = self.used.count_ones() as usize >= self.min_order;
            if ok {
                self.found = Some(self.paths.clone());
            }
            return ok;
        }
        let mut path = vec![self.x];
        self.extend(&mut path, chosen)
    }

    fn extend(&mut self, path: &mut Vec<usize>, chosen: usize) -> bool {
        let last = *path.last().expect("path starts at x");
        let direct_used = self.paths.iter().any(|p| p.len() == 2);
        if self.g.has_edge(last, self.y) && !(path.len() == 1 && direct_used) {
            path.push(self.y);
            let ok = self.order_ok(path) && {
                self.paths.push(path.clone());
                let r = self.search(chosen + 1);
                self.paths.pop();
                r
            };
            path.pop();
            if ok {
                return true;
            }
        }
        for w in bits(self.g.neighbors(last) & !self.used) {
            path.push(w);
            self.used |= 1 << w;
            let r = self.order_ok_partial(path) && self.extend(path, chosen);
            self.used &= !(1 << w);
            path.pop();
            if r {
                return true;
            }
        }
        false
    }

    fn second(p: &[usize]) -> usize {
        p[1]
    }

    fn order_ok_partial(&self, path: &[usize]) -> bool {
        self.paths.last().is_none_or(|prev| Self::second(prev) <= path[1])
    }

    fn order_ok(&self, path: &[usize]) -> bool {
        self.paths.last().is_none_or(|prev| Self::second(prev) <= Self::second(path))
    }
}

/// Searches for three pairwise edge-disjoint cycles among at most
/// [`CYCLE_BUDGET`] enumerated cycles.
pub fn find_three_edge_disjoint_cycles(g: &Graph) -> CycleSearch {
    let Some(cycles) = enumerate_cycles(g, CYCLE_BUDGET) else {
        return CycleSearch::Unknown;
    };
    let masks: Vec<u64> = cycles.iter().map(|c| cycle_edge_mask(g, c)).collect();
    for a in 0..masks.len() {
        for b in a + 1..masks.len() {
            if masks[a] & masks[b] != 0 {
                continue;
            }
            for c in b + 1..masks.len() {
                if masks[c] & (masks[a] | masks[b]) == 0 {
                    return CycleSearch::Found([cycles[a].clone(), cycles[b].clone(), cycles[c].clone()]);
                }
            }
        }
    }
    CycleSearch::Absent
}

fn cycle_edge_mask(g: &Graph, cycle: &[usize]) -> u64 {
    (0..cycle.len())
        .map(|i| g.edge_index(cycle[i], cycle[(i + 1) % cycle.len()]).expect("cycle edge exists"))
        .fold(0, |m, i| m | 1 << i)
}

/// Every cycle once, as a vertex sequence starting at its smallest vertex and
/// with the second vertex smaller than the last. `None` past `budget` cycles.
pub(crate) fn enumerate_cycles(g: &Graph, budget: usize) -> Option<Vec<Vec<usize>>> {
    fn walk(g: &Graph, start: usize, path: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>, budget: usize) -> bool {
        let last = *path.last().expect("nonempty");
        for w in bits(g.neighbors(last)) {
            if w == start && path.len() >= 3 && path[1] < last {
                if out.len() == budget {
                    return false;
                }
                out.push(path.clone());
            } else if w > start && used >> w & 1 == 0 {
                path.push(w);
                let ok = walk(g, start, path, used | 1 << w, out, budget);
                path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    for s in 0..g.order() {
        if !walk(g, s, &mut vec![s], 1 << s, &mut out, budget) {
            return None;
        }
    }
    Some(out)
}

/// Classifies `g` against the graphs with rx4 = n - 1.
pub fn recognize_rx4_equals_nminus1(g: &Graph) -> Result<StructureClass, StructureError> {
    let n = g.order();
    if n < 4 {
        return Err(StructureError::OrderTooSmall(n));
    }
    let c = cyclomatic_number(g)?;
    let class = if c == 0 {
        Class::Tree
    } else if c == 1 {
        Class::Unicyclic
    } else if c == 2 && is_cactus(g)? {
        Class::Cactus2
    } else if is_g1(g)? {
        Class::G1
    } else if is_g2(g)? {
        Class::G2
    } else {
        Class::Other
    };
    let has_three_edge_disjoint_cycles = match find_three_edge_disjoint_cycles(g) {
        CycleSearch::Found(_) => Some(true),
        CycleSearch::Absent => Some(false),
        CycleSearch::Unknown => None,
    };
    Ok(StructureClass { class, cyclomatic: c, has_theta5: find_theta(g, 5).is_some(), has_three_edge_disjoint_cycles })
}
