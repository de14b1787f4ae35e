use super::{Edge, Graph, GraphError};

/// Result of contracting a set of edges: the quotient graph plus the vertex
/// and edge correspondences from the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    pub source: Graph,
    pub target: Graph,
    /// `vertex_map[v]` is the target vertex that source vertex `v` merged into.
    pub vertex_map: Vec<usize>,
    /// Indexed by source edge index; `None` when both ends merged together.
    pub edge_map: Vec<Option<Edge>>,
}

impl ContractionMap {
    /// Source vertices merged into target vertex `t`, ascending.
    pub fn class_of(&self, t: usize) -> Vec<usize> {
        (0..self.vertex_map.len()).filter(|&v| self.vertex_map[v] == t).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Contracts every edge in `edges`, merging parallel edges and dropping loops.
/// Target vertices are numbered in order of their smallest source vertex.
pub fn contract_edges(g: &Graph, edges: &[Edge]) -> Result<ContractionMap, GraphError> {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in edges {
        if !g.has_edge(e.u, e.v) {
            return Err(GraphError::MissingEdge(*e));
        }
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut vertex_map = vec![0; n];
    let mut next = 0;
    for (v, slot) in vertex_map.iter_mut().enumerate() {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        *slot = label[r];
    }
    let edge_map: Vec<Option<Edge>> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
            (a != b).then(|| Edge::new(a, b))
        })
        .collect();
    let target = Graph::from_edges(next, edge_map.iter().flatten().map(|e| (e.u, e.v)))?;
    Ok(ContractionMap { source: g.clone(), target, vertex_map, edge_map })
}

/// Replaces `e` by a path of length two through a new vertex `n`.
pub fn subdivide_edge(g: &Graph, e: Edge) -> Result<Graph, GraphError> {
    if !g.has_edge(e.u, e.v) {
        return Err(GraphError::MissingEdge(e));
    }
    let x = g.order();
    let edges = g
        .edges()
        .iter()
        .filter(|&&f| f != e)
        .map(|f| (f.u, f.v))
        .chain([(e.u, x), (e.v, x)]);
    Graph::from_edges(x + 1, edges)
}
