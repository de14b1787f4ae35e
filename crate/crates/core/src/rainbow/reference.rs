use super::{EdgeColoring, RainbowCertificate};
use crate::graph::Graph;

type Triple = (usize, usize, u8);

/// Complement of the path 0-1-2-3-4.
const P5_COMPLEMENT: [Triple; 6] = [(0, 2, 2), (0, 3, 1), (0, 4, 3), (1, 3, 3), (1, 4, 2), (2, 4, 1)];
/// Complement of the triangle {0,1,2} plus the edge 34: the six cross edges.
const K2_K3_COMPLEMENT: [Triple; 6] = [(0, 3, 1), (0, 4, 2), (1, 3, 2), (1, 4, 3), (2, 3, 3), (2, 4, 1)];
/// Complement of the 6-cycle 0-1-2-3-4-5.
const C6_COMPLEMENT: [Triple; 9] = [
    (0, 2, 2),
    (0, 3, 3),
    (0, 4, 1),
    (1, 3, 1),
    (1, 4, 2),
    (1, 5, 3),
    (2, 4, 3),
    (2, 5, 1),
    (3, 5, 2),
];
/// K3,3 with parts {0,1,2} and {3,4,5}, colored by a Latin square.
const K33: [Triple; 9] = [
    (0, 3, 3),
    (0, 4, 2),
    (0, 5, 1),
    (1, 3, 1),
    (1, 4, 3),
    (1, 5, 2),
    (2, 3, 2),
    (2, 4, 1),
    (2, 5, 3),
];

fn certificate(n: usize, triples: &[Triple]) -> RainbowCertificate {
    let g = Graph::from_edges(n, triples.iter().map(|&(u, v, _)| (u, v))).expect("reference graph is valid");
    let c = EdgeColoring::from_triples(&g, triples, 3).expect("reference coloring is valid");
    RainbowCertificate::new(&g, 4, &c).expect("reference coloring is total")
}

/// Hand-built 3-color 4-rainbow colorings of the graphs whose complements
/// are P5, K2 ∪ K3, C6 and 2K3, in that order.
pub fn reference_colorings() -> Vec<RainbowCertificate> {
    vec![
        certificate(5, &P5_COMPLEMENT),
        certificate(5, &K2_K3_COMPLEMENT),
        certificate(6, &C6_COMPLEMENT),
        certificate(6, &K33),
    ]
}
