//! Cross-validation of the recognizers against the decision procedure and
//! the exact solver, graph by graph.

use serde::Serialize;

use crate::exec::Exec;
use crate::graph::{emit_graph6, Graph};
use crate::rainbow::{decide_rx4_equals_3_with, exact_rx_k_with, RainbowError, SolveOptions};
use crate::structure::{recognize_rx4_equals_3, recognize_rx4_equals_nminus1, StructureClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CensusMode {
    /// Recognizers and the rx4 = 3 decision only.
    Decide3,
    /// Additionally the exact rx4 for small orders.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub mode: CensusMode,
    pub exec: Exec,
    /// Exact rx4 is computed only up to this order in [`CensusMode::Full`].
    pub exact_max_order: usize,
    /// Node budget for each decision and each exact palette search.
    pub budget: Option<u64>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { mode: CensusMode::Full, exec: Exec::default(), exact_max_order: 6, budget: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub recognized_rx4_3: bool,
    /// `None` when the decision ran out of budget.
    pub decided_rx4_3: Option<bool>,
    pub structure: StructureClass,
    pub rx4: Option<usize>,
    /// Human-readable disagreements found on this graph.
    pub disagreements: Vec<String>,
    /// Set when some computation could not finish.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub records: Vec<CensusRecord>,
    pub disagreements: usize,
    pub incomplete: bool,
}

impl CensusReport {
    /// graph6 lines of every graph with a disagreement, in input order.
    pub fn counterexamples(&self) -> Vec<&str> {
        self.records.iter().filter(|r| !r.disagreements.is_empty()).map(|r| r.graph6.as_str()).collect()
    }
}

/// Runs every check on each graph. Graphs must be connected with at least
/// four vertices; others produce a record with `error` set.
pub fn run_census(graphs: &[Graph], opts: &CensusOptions) -> CensusReport {
    let records = opts.exec.map(graphs, |g| check_graph(g, opts));
    let disagreements = records.iter().filter(|r| !r.disagreements.is_empty()).count();
    let incomplete = records.iter().any(|r| r.error.is_some());
    CensusReport { records, disagreements, incomplete }
}

fn check_graph(g: &Graph, opts: &CensusOptions) -> CensusRecord {
    let graph6 = emit_graph6(g).unwrap_or_default();
    let mut record = CensusRecord {
        graph6,
        n: g.order(),
        m: g.size(),
        recognized_rx4_3: false,
        decided_rx4_3: None,
        structure: StructureClass {
            class: crate::structure::Class::Other,
            cyclomatic: 0,
            has_theta5: false,
            has_three_edge_disjoint_cycles: None,
        },
        rx4: None,
        disagreements: Vec::new(),
        error: None,
    };
    if let Err(e) = fill(g, opts, &mut record) {
        record.error = Some(e);
    }
    record
}

fn fill(g: &Graph, opts: &CensusOptions, r: &mut CensusRecord) -> Result<(), String> {
    let n = g.order();
    r.recognized_rx4_3 = recognize_rx4_equals_3(g).map_err(|e| e.to_string())?;
    r.structure = recognize_rx4_equals_nminus1(g).map_err(|e| e.to_string())?;
    if r.structure.has_three_edge_disjoint_cycles.is_none() {
        return Err("cycle enumeration budget exhausted".into());
    }

    match decide_rx4_equals_3_with(g, opts.budget) {
        Ok(d) => r.decided_rx4_3 = Some(d.coloring.is_some()),
        Err(RainbowError::BudgetExhausted { budget }) => return Err(format!("decision budget of {budget} nodes exhausted")),
        Err(e) => return Err(e.to_string()),
    }
    if r.decided_rx4_3 != Some(r.recognized_rx4_3) {
        r.disagreements.push(format!(
            "rx4 = 3: recognizer says {}, decision says {}",
            r.recognized_rx4_3,
            r.decided_rx4_3 == Some(true)
        ));
    }

    if opts.mode == CensusMode::Full && n <= opts.exact_max_order {
        let solve = SolveOptions { q_max: None, budget: opts.budget, exec: Exec::Sequential };
        let value = exact_rx_k_with(g, 4, &solve).map_err(|e| e.to_string())?.value;
        r.rx4 = Some(value);
        if (value == 3) != r.recognized_rx4_3 {
            r.disagreements.push(format!("rx4 = {value} but the rx4 = 3 recognizer says {}", r.recognized_rx4_3));
        }
        let extremal = r.structure.rx4_is_n_minus_1();
        if (value == n - 1) != extremal {
            r.disagreements.push(format!("rx4 = {value} but the rx4 = n - 1 recognizer says {extremal}"));
        }
    }
    let theta_or_cycles = r.structure.has_theta5 || r.structure.has_three_edge_disjoint_cycles == Some(true);
    if theta_or_cycles && r.structure.rx4_is_n_minus_1() {
        r.disagreements.push("theta or three edge-disjoint cycles in a graph classed rx4 = n - 1".into());
    }
    Ok(())
}
