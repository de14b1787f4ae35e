//! Exact k-rainbow index by backtracking over edge colorings.
//!
//! For a palette size `q`, every k-set `S` gets the list of its candidate
//! trees: trees of at most `q` edges that contain `S` and whose leaves all lie
//! in `S` (any rainbow S-tree can be pruned to one of these). Each set watches
//! one candidate whose colored edges are pairwise distinct. Coloring an edge
//! can only kill candidates, so a set whose watched tree dies scans for a
//! replacement, and the branch fails when none is left. A complete coloring
//! in which every set still has a live candidate is k-rainbow.
//!
//! Bridges receive the distinct colors `1..=b` up front, and every other
//! edge may only use a color at most one above the largest color so far.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use super::{check_k, tree::verify_k_rainbow_with, EdgeColoring, RainbowCertificate, RainbowError, Verdict, MAX_COLOR};
use crate::exec::Exec;
use crate::graph::{bits, bridges, k_subsets, mask_of, Graph};
use crate::steiner::steiner_diameter_with;

/// The root is split into at least this many independent branches when the
/// instance allows it.
const MIN_BRANCHES: usize = 64;
const MAX_SPLIT_DEPTH: usize = 8;
const CANCEL_POLL: u64 = 1024;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest palette tried; defaults to `n - 1`.
    pub q_max: Option<usize>,
    /// Cap on color assignments per palette size.
    pub budget: Option<u64>,
    pub exec: Exec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaletteStats {
    pub q: usize,
    pub nodes: u64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub value: usize,
    pub certificate: RainbowCertificate,
    /// Palette sizes shown to admit no k-rainbow coloring.
    pub exhausted: Vec<usize>,
    pub stats: Vec<PaletteStats>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(EdgeColoring),
    Infeasible,
}

/// rx_k(g) with default options.
pub fn exact_rx_k(g: &Graph, k: usize) -> Result<SolveReport, RainbowError> {
    exact_rx_k_with(g, k, &SolveOptions::default())
}

/// Smallest `q` in `[max(k - 1, sdiam_k), q_max]` admitting a k-rainbow coloring.
pub fn exact_rx_k_with(g: &Graph, k: usize, opts: &SolveOptions) -> Result<SolveReport, RainbowError> {
    check_k(g, k)?;
    if !g.is_connected() {
        return Err(RainbowError::Disconnected);
    }
    let n = g.order();
    let lower = (k - 1).max(steiner_diameter_with(g, k, opts.exec)?);
    let q_max = opts.q_max.unwrap_or(n - 1);
    let mut exhausted = Vec::new();
    let mut stats = Vec::new();
    for q in lower..=q_max {
        let (outcome, nodes) = find_k_rainbow_coloring(g, k, q, opts)?;
        stats.push(PaletteStats { q, nodes, feasible: matches!(outcome, Feasibility::Feasible(_)) });
        match outcome {
            Feasibility::Infeasible => exhausted.push(q),
            Feasibility::Feasible(c) => {
                if let Verdict::Invalid { witness } = verify_k_rainbow_with(g, &c, k, opts.exec)? {
                    return Err(RainbowError::Internal(format!("solver coloring fails on {witness:?}")));
                }
                let certificate = RainbowCertificate::new(g, k, &c)?;
                return Ok(SolveReport { value: q, certificate, exhausted, stats });
            }
        }
    }
    Err(RainbowError::ExceedsQMax { q_max, exhausted })
}

/// Searches for a k-rainbow coloring with palette `1..=q`. Returns the outcome
/// and the number of color assignments tried. The outcome does not depend on
/// `opts.exec`.
pub fn find_k_rainbow_coloring(
    g: &Graph,
    k: usize,
    q: usize,
    opts: &SolveOptions,
) -> Result<(Feasibility, u64), RainbowError> {
    check_k(g, k)?;
    if !g.is_connected() {
        return Err(RainbowError::Disconnected);
    }
    if g.size() > 64 {
        return Err(RainbowError::TooManyEdges(g.size()));
    }
    if q > MAX_COLOR as usize {
        return Err(RainbowError::PaletteTooLarge(q));
    }
    let Some(inst) = Instance::new(g, k, q) else {
        return Ok((Feasibility::Infeasible, 0));
    };

    let mut root = inst.root_state();
    let (prefixes, prefix_nodes) = inst.split(&mut root);
    let budget = opts.budget;
    if budget.is_some_and(|b| prefix_nodes > b) {
        return Err(RainbowError::BudgetExhausted { budget: budget.unwrap_or(0) });
    }
    let branch_budget = budget.map(|b| b - prefix_nodes);

    let best = AtomicUsize::new(usize::MAX);
    let indexed: Vec<(usize, &Prefix)> = prefixes.iter().enumerate().collect();
    let results = opts.exec.map(&indexed, |&(i, prefix)| {
        if best.load(Ordering::Relaxed) < i {
            return Branch::Cancelled;
        }
        let mut st = inst.root_state();
        for (pos, &c) in prefix.colors.iter().enumerate() {
            let ok = st.assign(&inst, inst.free[pos], c);
            debug_assert!(ok, "prefix replay cannot fail");
        }
        st.budget = branch_budget;
        st.cancel = Some((&best, i));
        let step = st.dfs(&inst, prefix.colors.len(), prefix.maxc);
        match step {
            Step::Found => {
                best.fetch_min(i, Ordering::Relaxed);
                Branch::Found(st.colors, st.nodes)
            }
            Step::NotFound => Branch::NotFound(st.nodes),
            Step::Exhausted => Branch::Exhausted,
            Step::Cancelled => Branch::Cancelled,
        }
    });

    let mut total = prefix_nodes;
    for r in results {
        match r {
            Branch::NotFound(nodes) => total += nodes,
            Branch::Found(colors, nodes) => {
                total += nodes;
                check_budget(budget, total)?;
                let c = EdgeColoring::from_colors(g, colors, q)?;
                return Ok((Feasibility::Feasible(c), total));
            }
            Branch::Exhausted => return Err(RainbowError::BudgetExhausted { budget: budget.unwrap_or(0) }),
            Branch::Cancelled => unreachable!("only branches after a success are cancelled"),
        }
        check_budget(budget, total)?;
    }
    Ok((Feasibility::Infeasible, total))
}

fn check_budget(budget: Option<u64>, used: u64) -> Result<(), RainbowError> {
    match budget {
        Some(b) if used > b => Err(RainbowError::BudgetExhausted { budget: b }),
        _ => Ok(()),
    }
}

enum Branch {
    Found(Vec<u8>, u64),
    NotFound(u64),
    Exhausted,
    Cancelled,
}

#[derive(Debug, PartialEq, Eq)]
enum Step {
    Found,
    NotFound,
    Exhausted,
    Cancelled,
}

struct Prefix {
    colors: Vec<u8>,
    maxc: u8,
}

struct Instance {
    q: u8,
    m: usize,
    /// Candidate trees per k-set, as edge masks.
    candidates: Vec<Vec<u64>>,
    bridges: Vec<usize>,
    /// Non-bridge edges in search order.
    free: Vec<usize>,
}

impl Instance {
    /// `None` when some k-set has no candidate tree or bridges outnumber colors.
    fn new(g: &Graph, k: usize, q: usize) -> Option<Self> {
        let bridge_idx: Vec<usize> = bridges(g).iter().map(|e| g.edge_index(e.u, e.v).expect("bridge is an edge")).collect();
        if bridge_idx.len() > q {
            return None;
        }
        let mut candidates = Vec::new();
        for s in k_subsets(g.order(), k) {
            let trees = candidate_trees(g, mask_of(&s), q);
            if trees.is_empty() {
                return None;
            }
            candidates.push(trees);
        }
        let is_bridge = mask_of(&bridge_idx);
        let pos = bfs_positions(g);
        let mut free: Vec<usize> = (0..g.size()).filter(|&i| is_bridge >> i & 1 == 0).collect();
        free.sort_by_key(|&i| {
            let e = g.edges()[i];
            let (a, b) = (pos[e.u], pos[e.v]);
            (a.max(b), a.min(b))
        });
        Some(Instance { q: q as u8, m: g.size(), candidates, bridges: bridge_idx, free })
    }

    /// Fresh state with bridges colored `1..=b`.
    fn root_state(&self) -> State<'_> {
        let mut st = State {
            colors: vec![0; self.m],
            masks: vec![0; self.q as usize + 1],
            watch: vec![0; self.candidates.len()],
            nodes: 0,
            budget: None,
            cancel: None,
        };
        for (i, &e) in self.bridges.iter().enumerate() {
            let ok = st.assign(self, e, i as u8 + 1);
            debug_assert!(ok, "distinct bridge colors never kill a candidate");
        }
        st
    }

    fn base_maxc(&self) -> u8 {
        self.bridges.len() as u8
    }

    /// Deepens a uniform split of the free edges until enough branches exist.
    fn split(&self, root: &mut State<'_>) -> (Vec<Prefix>, u64) {
        let mut depth = 0;
        let mut out = vec![Prefix { colors: Vec::new(), maxc: self.base_maxc() }];
        let mut nodes = 0;
        while out.len() < MIN_BRANCHES && depth < self.free.len() && depth < MAX_SPLIT_DEPTH {
            depth += 1;
            out.clear();
            root.nodes = 0;
            let mut path = Vec::with_capacity(depth);
            root.collect(self, 0, self.base_maxc(), depth, &mut path, &mut out);
            nodes = root.nodes;
            if out.is_empty() {
                break;
            }
        }
        (out, nodes)
    }
}

struct State<'a> {
    colors: Vec<u8>,
    /// Edge mask per color.
    masks: Vec<u64>,
    watch: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    cancel: Option<(&'a AtomicUsize, usize)>,
}

impl State<'_> {
    fn alive(&self, t: u64) -> bool {
        self.masks[1..].iter().all(|&cm| (t & cm).count_ones() <= 1)
    }

    /// Colors `e` with `c`; returns false when some k-set loses its last
    /// candidate. The caller undoes the assignment either way.
    fn assign(&mut self, inst: &Instance, e: usize, c: u8) -> bool {
        let bit = 1u64 << e;
        let before = self.masks[c as usize];
        self.colors[e] = c;
        self.masks[c as usize] |= bit;
        for s in 0..inst.candidates.len() {
            let cands = &inst.candidates[s];
            let t = cands[self.watch[s]];
            if t & bit == 0 || t & before == 0 {
                continue;
            }
            let w = self.watch[s];
            let len = cands.len();
            match (1..len).map(|d| (w + d) % len).find(|&j| self.alive(cands[j])) {
                Some(j) => self.watch[s] = j,
                None => return false,
            }
        }
        true
    }

    fn unassign(&mut self, e: usize) {
        let c = self.colors[e] as usize;
        self.masks[c] &= !(1u64 << e);
        self.colors[e] = 0;
    }

    fn tick(&mut self) -> Option<Step> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Some(Step::Exhausted);
        }
        if self.nodes.is_multiple_of(CANCEL_POLL) {
            if let Some((best, me)) = self.cancel {
                if best.load(Ordering::Relaxed) < me {
                    return Some(Step::Cancelled);
                }
            }
        }
        None
    }

    fn dfs(&mut self, inst: &Instance, pos: usize, maxc: u8) -> Step {
        if pos == inst.free.len() {
            return Step::Found;
        }
        let e = inst.free[pos];
        for c in 1..=(maxc + 1).min(inst.q) {
            if let Some(stop) = self.tick() {
                return stop;
            }
            if self.assign(inst, e, c) {
                match self.dfs(inst, pos + 1, maxc.max(c)) {
                    Step::NotFound => {}
                    other => return other,
                }
            }
            self.unassign(e);
        }
        Step::NotFound
    }

    /// Enumerates every consistent assignment of the first `depth` free edges.
    fn collect(&mut self, inst: &Instance, pos: usize, maxc: u8, depth: usize, path: &mut Vec<u8>, out: &mut Vec<Prefix>) {
        if pos == depth {
            out.push(Prefix { colors: path.clone(), maxc });
            return;
        }
        let e = inst.free[pos];
        for c in 1..=(maxc + 1).min(inst.q) {
            self.nodes += 1;
            if self.assign(inst, e, c) {
                path.push(c);
                self.collect(inst, pos + 1, maxc.max(c), depth, path, out);
                path.pop();
            }
            self.unassign(e);
        }
    }
}

/// Vertex positions in BFS order from the lowest-index vertex of maximum degree.
fn bfs_positions(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let start = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let mut pos = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([start]);
    let mut next = 0;
    pos[start] = 0;
    while let Some(v) = queue.pop_front() {
        for w in bits(g.neighbors(v)) {
            if pos[w] == usize::MAX {
                next += 1;
                pos[w] = next;
                queue.push_back(w);
            }
        }
    }
    pos
}

/// Trees with at most `max_edges` edges containing `smask`, all leaves in `smask`.
fn candidate_trees(g: &Graph, smask: u64, max_edges: usize) -> Vec<u64> {
    let root = smask.trailing_zeros() as usize;
    let mut out = Vec::new();
    let mut st = TreeEnum { g, smask, max_edges, forbidden: 0, out: &mut out };
    st.grow(1 << root, 0, 0);
    out.sort_unstable_by_key(|t| (t.count_ones(), *t));
    out
}

struct TreeEnum<'a> {
    g: &'a Graph,
    smask: u64,
    max_edges: usize,
    /// Edge indices excluded on the current branch.
    forbidden: u64,
    out: &'a mut Vec<u64>,
}

impl TreeEnum<'_> {
    fn grow(&mut self, verts: u64, edges: u64, count: usize) {
        if verts & self.smask == self.smask {
            let leaves_ok = bits(verts & !self.smask).all(|v| self.tree_degree(edges, v) >= 2);
            if leaves_ok {
                self.out.push(edges);
            }
            return;
        }
        let missing = (self.smask & !verts).count_ones() as usize;
        if count + missing > self.max_edges {
            return;
        }
        let g = self.g;
        let border = g.edges().iter().enumerate().find(|(i, e)| {
            self.forbidden >> i & 1 == 0 && ((verts >> e.u & 1) ^ (verts >> e.v & 1)) == 1
        });
        let Some((i, e)) = border else {
            return;
        };
        let bit = 1u64 << i;
        self.grow(verts | 1 << e.u | 1 << e.v, edges | bit, count + 1);
        self.forbidden |= bit;
        self.grow(verts, edges, count);
        self.forbidden &= !bit;
    }

    fn tree_degree(&self, edges: u64, v: usize) -> usize {
        bits(edges).filter(|&i| self.g.edges()[i].contains(v)).count()
    }
}
