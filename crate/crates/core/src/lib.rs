//! Exact k-rainbow index computation for small graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bitset graphs, graph6, blocks, isomorphism, contraction and
//!   census generation.
//! * [`steiner`]: Steiner distances and the k-Steiner diameter.
//! * [`rainbow`]: edge colorings, rainbow tree search, k-rainbow
//!   verification, the rx4 = 3 backtracking decision and the exact rx_k solver.
//! * [`structure`]: recognizers for graphs with rx4 = 3 and rx4 = n - 1.
//! * [`census`]: cross-validation of the recognizers against the solvers.

pub mod census;
pub mod exec;
pub mod graph;
pub mod rainbow;
pub mod steiner;
pub mod structure;

pub use exec::Exec;
pub use graph::{Edge, Graph, GraphError};
