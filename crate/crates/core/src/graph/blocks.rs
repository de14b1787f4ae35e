use super::{bits, Edge, Graph};

struct LowLink<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<Edge>,
    blocks: Vec<Vec<usize>>,
    bridges: Vec<Edge>,
}

impl LowLink<'_> {
    fn dfs(&mut self, v: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[v] = self.time;
        self.low[v] = self.time;
        for w in bits(self.g.neighbors(v)) {
            if Some(w) == parent {
                continue;
            }
            if self.disc[w] == 0 {
                self.stack.push(Edge::new(v, w));
                self.dfs(w, Some(v));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] > self.disc[v] {
                    self.bridges.push(Edge::new(v, w));
                }
                if self.low[w] >= self.disc[v] {
                    self.pop_block(Edge::new(v, w));
                }
            } else if self.disc[w] < self.disc[v] {
                self.stack.push(Edge::new(v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }

    fn pop_block(&mut self, until: Edge) {
        let mut mask = 0u64;
        while let Some(e) = self.stack.pop() {
            mask |= 1 << e.u | 1 << e.v;
            if e == until {
                break;
            }
        }
        self.blocks.push(bits(mask).collect());
    }
}

fn run(g: &Graph) -> LowLink<'_> {
    let n = g.order();
    let mut ll = LowLink {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        bridges: Vec::new(),
    };
    for v in 0..n {
        if ll.disc[v] == 0 {
            ll.dfs(v, None);
        }
    }
    ll
}

/// Cut edges, sorted.
pub fn bridges(g: &Graph) -> Vec<Edge> {
    let mut b = run(g).bridges;
    b.sort_unstable();
    b
}

/// Blocks as sorted vertex lists, sorted lexicographically. Every edge lies
/// in exactly one block; bridges are the two-vertex blocks; isolated vertices
/// belong to no block.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    let mut b = run(g).blocks;
    b.sort_unstable();
    b
}
