//! Edge colorings and everything about rainbow trees.

mod decide;
mod exact;
mod lift;
mod reference;
mod tree;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{emit_graph6, parse_graph6, Edge, Graph, GraphError};
use crate::steiner::SteinerError;

pub use decide::{check_prefix, decide_rx4_equals_3, decide_rx4_equals_3_with, Decision, DECIDE_MAX_ORDER};
pub use exact::{exact_rx_k, exact_rx_k_with, find_k_rainbow_coloring, Feasibility, PaletteStats, SolveOptions, SolveReport};
pub use lift::lift_coloring_through_contraction;
pub use reference::reference_colorings;
pub use tree::{find_rainbow_tree, verify_k_rainbow, verify_k_rainbow_with, Verdict};

/// Largest color id; color sets are kept in `u64` masks.
pub const MAX_COLOR: u8 = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RainbowError {
    #[error("k = {k} must satisfy 2 <= k <= n = {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    ColoringShape { expected: usize, got: usize },
    #[error("color {color} on edge {edge} is outside 1..={q}")]
    ColorOutOfRange { edge: Edge, color: u8, q: usize },
    #[error("palette size {0} exceeds the supported maximum of {MAX_COLOR}")]
    PaletteTooLarge(usize),
    #[error("edge {0} is uncolored")]
    Uncolored(Edge),
    #[error("colored edges are not the induced edge set of a vertex prefix ending at {0}")]
    PrefixNotInduced(Edge),
    #[error("rx_k exceeds the search ceiling q_max = {q_max}")]
    ExceedsQMax { q_max: usize, exhausted: Vec<usize> },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("exact search supports at most 64 edges, got {0}")]
    TooManyEdges(usize),
    #[error("fresh colors must start above {max_used}, got {fresh_start}")]
    FreshColorCollision { fresh_start: u8, max_used: u8 },
    #[error("certificate is for graph {certificate}, not {graph}")]
    CertificateMismatch { certificate: String, graph: String },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Steiner(#[from] SteinerError),
}

/// Colors indexed by the graph's edge index; `0` means uncolored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeColoring {
    colors: Vec<u8>,
    q: usize,
}

impl EdgeColoring {
    pub fn uncolored(g: &Graph, q: usize) -> Result<Self, RainbowError> {
        if q > MAX_COLOR as usize {
            return Err(RainbowError::PaletteTooLarge(q));
        }
        Ok(EdgeColoring { colors: vec![0; g.size()], q })
    }

    /// Builds a coloring from per-edge colors and checks it against `g`.
    pub fn from_colors(g: &Graph, colors: Vec<u8>, q: usize) -> Result<Self, RainbowError> {
        let c = EdgeColoring { colors, q };
        c.validate(g)?;
        Ok(c)
    }

    /// Builds a coloring from `(u, v, color)` triples; unspecified edges stay uncolored.
    pub fn from_triples(g: &Graph, triples: &[(usize, usize, u8)], q: usize) -> Result<Self, RainbowError> {
        let mut c = Self::uncolored(g, q)?;
        for &(u, v, col) in triples {
            let idx = g
                .edge_index(u, v)
                .ok_or_else(|| GraphError::MissingEdge(Edge::new(u, v)))?;
            c.colors[idx] = col;
        }
        c.validate(g)?;
        Ok(c)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), RainbowError> {
        if self.colors.len() != g.size() {
            return Err(RainbowError::ColoringShape { expected: g.size(), got: self.colors.len() });
        }
        if self.q > MAX_COLOR as usize {
            return Err(RainbowError::PaletteTooLarge(self.q));
        }
        for (i, &c) in self.colors.iter().enumerate() {
            if c as usize > self.q {
                return Err(RainbowError::ColorOutOfRange { edge: g.edges()[i], color: c, q: self.q });
            }
        }
        Ok(())
    }

    /// Validates and additionally requires every edge colored.
    pub fn validate_total(&self, g: &Graph) -> Result<(), RainbowError> {
        self.validate(g)?;
        match self.colors.iter().position(|&c| c == 0) {
            Some(i) => Err(RainbowError::Uncolored(g.edges()[i])),
            None => Ok(()),
        }
    }

    pub fn palette(&self) -> usize {
        self.q
    }

    pub fn color(&self, edge_index: usize) -> u8 {
        self.colors[edge_index]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn set(&mut self, edge_index: usize, color: u8) {
        self.colors[edge_index] = color;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    pub fn distinct_colors(&self) -> usize {
        self.colors.iter().filter(|&&c| c != 0).collect::<BTreeSet<_>>().len()
    }

    pub fn max_color(&self) -> u8 {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdge {
    pub u: usize,
    pub v: usize,
    pub c: u8,
}

/// A graph (as graph6 text), `k`, a declared palette size and a complete
/// coloring claimed to be k-rainbow. Vertices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowCertificate {
    pub graph6: String,
    pub k: usize,
    pub q: usize,
    pub colors: Vec<ColoredEdge>,
}

impl RainbowCertificate {
    pub fn new(g: &Graph, k: usize, coloring: &EdgeColoring) -> Result<Self, RainbowError> {
        coloring.validate_total(g)?;
        let colors = g
            .edges()
            .iter()
            .zip(coloring.colors())
            .map(|(e, &c)| ColoredEdge { u: e.u, v: e.v, c })
            .collect();
        Ok(RainbowCertificate { graph6: emit_graph6(g)?, k, q: coloring.palette(), colors })
    }

    /// Decodes the graph and coloring, checking the coloring covers every edge exactly.
    pub fn decode(&self) -> Result<(Graph, EdgeColoring), RainbowError> {
        let g = parse_graph6(&self.graph6)?;
        let triples: Vec<(usize, usize, u8)> = self.colors.iter().map(|ce| (ce.u, ce.v, ce.c)).collect();
        if triples.len() != g.size() {
            return Err(RainbowError::ColoringShape { expected: g.size(), got: triples.len() });
        }
        for &(u, v, _) in &triples {
            if u == v || !g.has_edge(u, v) {
                return Err(GraphError::MissingEdge(Edge { u: u.min(v), v: u.max(v) }).into());
            }
        }
        let c = EdgeColoring::from_triples(&g, &triples, self.q)?;
        c.validate_total(&g)?;
        Ok((g, c))
    }

    /// Decodes against an expected graph; the graph6 text must match exactly.
    pub fn decode_for(&self, g: &Graph) -> Result<EdgeColoring, RainbowError> {
        let expected = emit_graph6(g)?;
        if expected != self.graph6 {
            return Err(RainbowError::CertificateMismatch { certificate: self.graph6.clone(), graph: expected });
        }
        Ok(self.decode()?.1)
    }

    pub fn verify(&self) -> Result<Verdict, RainbowError> {
        let (g, c) = self.decode()?;
        verify_k_rainbow(&g, &c, self.k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub(crate) fn check_k(g: &Graph, k: usize) -> Result<(), RainbowError> {
    if k < 2 || k > g.order() {
        return Err(RainbowError::KOutOfRange { k, n: g.order() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coloring_validation() {
        let p3 = Graph::path(3).unwrap();
        assert!(EdgeColoring::from_colors(&p3, vec![1, 2], 2).is_ok());
        assert!(matches!(EdgeColoring::from_colors(&p3, vec![1], 2), Err(RainbowError::ColoringShape { .. })));
        assert!(matches!(EdgeColoring::from_colors(&p3, vec![1, 3], 2), Err(RainbowError::ColorOutOfRange { .. })));
        let partial = EdgeColoring::from_colors(&p3, vec![1, 0], 2).unwrap();
        assert!(!partial.is_total());
        assert!(matches!(partial.validate_total(&p3), Err(RainbowError::Uncolored(_))));
        assert!(matches!(EdgeColoring::from_triples(&p3, &[(0, 2, 1)], 2), Err(RainbowError::Graph(_))));
        assert_eq!(EdgeColoring::from_colors(&p3, vec![2, 2], 2).unwrap().distinct_colors(), 1);
    }

    #[test]
    fn certificate_json_round_trip_and_key_order() {
        let p3 = Graph::path(3).unwrap();
        let c = EdgeColoring::from_colors(&p3, vec![1, 2], 2).unwrap();
        let cert = RainbowCertificate::new(&p3, 3, &c).unwrap();
        let json = cert.to_json();
        let keys: Vec<usize> = ["\"graph6\"", "\"k\"", "\"q\"", "\"colors\""].iter().map(|k| json.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let back = RainbowCertificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.decode_for(&p3).unwrap(), c);
        assert!(matches!(back.decode_for(&Graph::complete(3).unwrap()), Err(RainbowError::CertificateMismatch { .. })));
    }

    #[test]
    fn certificate_decode_rejects_bad_edges() {
        let mut cert = RainbowCertificate {
            graph6: "Bw".into(),
            k: 3,
            q: 2,
            colors: vec![ColoredEdge { u: 0, v: 1, c: 1 }, ColoredEdge { u: 1, v: 2, c: 2 }],
        };
        assert_eq!(parse_graph6("Bw").unwrap().size(), 3);
        assert!(matches!(cert.decode(), Err(RainbowError::ColoringShape { .. })));
        cert.graph6 = "BW".into();
        cert.colors[1] = ColoredEdge { u: 0, v: 2, c: 2 };
        assert!(cert.decode().is_err());
    }
}
