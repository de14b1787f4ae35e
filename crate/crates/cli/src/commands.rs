use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rainbow_core::census::{run_census, CensusMode, CensusOptions};
use rainbow_core::graph::{emit_graph6, enumerate_connected_graphs, MAX_CENSUS_ORDER};
use rainbow_core::rainbow::{
    decide_rx4_equals_3_with, exact_rx_k_with, EdgeColoring, RainbowCertificate, RainbowError, SolveOptions, Verdict,
};
use rainbow_core::steiner::{steiner_diameter_with, steiner_distance};
use rainbow_core::structure::{complement_shape, recognize_rx4_equals_3, recognize_rx4_equals_nminus1, Component};
use rainbow_core::{Exec, Graph};
use serde_json::{json, Value};

use crate::input::{self, Entry};
use crate::{Common, Format, Mode};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

struct Report<'a> {
    common: &'a Common,
    buf: String,
    code: u8,
    /// Prefix lines with the graph's graph6 when more than one graph is read.
    batch: bool,
}

impl<'a> Report<'a> {
    fn new(common: &'a Common, entries: &[Entry]) -> Self {
        Report { common, buf: String::new(), code: EXIT_OK, batch: entries.len() != 1 }
    }

    fn structured(&self) -> bool {
        self.common.format == Format::Structured
    }

    fn raise(&mut self, code: u8) {
        self.code = self.code.max(code);
    }

    fn text(&mut self, g: Option<&Graph>, body: &str) {
        match g.filter(|_| self.batch) {
            Some(g) => writeln!(self.buf, "{}: {body}", g6(g)),
            None => writeln!(self.buf, "{body}"),
        }
        .expect("writing to a string");
    }

    fn record(&mut self, value: Value) {
        writeln!(self.buf, "{value}").expect("writing to a string");
    }

    /// Reports an unusable input line and marks the run as failed.
    fn input_error(&mut self, line: usize, graph: Option<&Graph>, message: &str) {
        self.raise(EXIT_ERROR);
        let at = if line == 0 { String::from("input") } else { format!("line {line}") };
        eprintln!("{at}: {message}");
        if self.structured() {
            self.record(json!({ "line": line, "graph6": graph.map(g6), "error": message }));
        } else {
            self.text(graph, &format!("error: {message}"));
        }
    }

    fn finish(self) -> Result<u8> {
        match &self.common.output {
            Some(path) => fs::write(path, &self.buf).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", self.buf),
        }
        Ok(self.code)
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g).expect("graphs read from graph6 are in range")
}

/// Picks the execution mode and sizes the worker pool.
fn setup(common: &Common) -> Exec {
    match common.workers {
        Some(1) => Exec::Sequential,
        #[cfg(feature = "parallel")]
        Some(n) => {
            // A pool can only be installed once per process; later calls keep the first.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Exec::Sequential,
        None => Exec::Parallel,
    }
}

fn coloring_text(g: &Graph, c: &EdgeColoring) -> String {
    g.edges().iter().zip(c.colors()).map(|(e, col)| format!("{e}:{col}")).collect::<Vec<_>>().join(" ")
}

fn certificate_value(cert: &RainbowCertificate) -> Value {
    serde_json::to_value(cert).expect("certificates serialize")
}

fn write_certificate(path: &Path, cert: &RainbowCertificate) -> Result<()> {
    fs::write(path, cert.to_json() + "\n").with_context(|| format!("writing {}", path.display()))
}

fn single_for_cert(entries: &[Entry], cert: Option<&Path>) -> Result<()> {
    if cert.is_some() && entries.len() != 1 {
        bail!("--cert needs exactly one input graph, got {}", entries.len());
    }
    Ok(())
}

pub fn rx(common: &Common, k: usize, q_max: Option<usize>, cert: Option<&Path>, budget: Option<u64>) -> Result<u8> {
    let exec = setup(common);
    let entries = input::load(common.graph.as_deref(), common.input.as_deref())?;
    single_for_cert(&entries, cert)?;
    let mut report = Report::new(common, &entries);
    let opts = SolveOptions { q_max, budget, exec };
    for entry in &entries {
        let g = match &entry.graph {
            Ok(g) => g,
            Err(e) => {
                report.input_error(entry.line, None, e);
                continue;
            }
        };
        match exact_rx_k_with(g, k, &opts) {
            Ok(solved) => {
                if let Some(path) = cert {
                    write_certificate(path, &solved.certificate)?;
                }
                if report.structured() {
                    report.record(json!({
                        "graph6": g6(g),
                        "k": k,
                        "value": solved.value,
                        "exhausted": solved.exhausted,
                        "stats": solved.stats,
                        "certificate": certificate_value(&solved.certificate),
                    }));
                } else {
                    report.text(Some(g), &format!("rx_{k} = {}", solved.value));
                }
            }
            Err(RainbowError::ExceedsQMax { q_max, exhausted }) => {
                report.raise(EXIT_FALSE);
                if report.structured() {
                    report.record(json!({ "graph6": g6(g), "k": k, "value": null, "q_max": q_max, "exhausted": exhausted }));
                } else {
                    report.text(Some(g), &format!("rx_{k} > {q_max}"));
                }
            }
            Err(e) => report.input_error(entry.line, Some(g), &e.to_string()),
        }
    }
    report.finish()
}

pub fn decide3(common: &Common, cert: Option<&Path>, budget: Option<u64>) -> Result<u8> {
    setup(common);
    let entries = input::load(common.graph.as_deref(), common.input.as_deref())?;
    single_for_cert(&entries, cert)?;
    let mut report = Report::new(common, &entries);
    let (mut yes, mut no, mut errors) = (0, 0, 0);
    for entry in &entries {
        let g = match &entry.graph {
            Ok(g) => g,
            Err(e) => {
                errors += 1;
                report.input_error(entry.line, None, e);
                continue;
            }
        };
        let decision = match decide_rx4_equals_3_with(g, budget) {
            Ok(d) => d,
            Err(e) => {
                errors += 1;
                report.input_error(entry.line, Some(g), &e.to_string());
                continue;
            }
        };
        let certificate = match &decision.coloring {
            Some(c) => Some(RainbowCertificate::new(g, 4, c)?),
            None => None,
        };
        if let (Some(path), Some(c)) = (cert, &certificate) {
            write_certificate(path, c)?;
        }
        if certificate.is_some() {
            yes += 1;
        } else {
            no += 1;
        }
        if report.structured() {
            report.record(json!({
                "graph6": g6(g),
                "rx4_equals_3": certificate.is_some(),
                "nodes": decision.nodes,
                "certificate": certificate.as_ref().map(certificate_value),
            }));
        } else {
            let body = match &decision.coloring {
                Some(c) => format!("yes {}", coloring_text(g, c)),
                None => "no".to_string(),
            };
            report.text(Some(g), &body);
        }
    }
    if report.structured() {
        report.record(json!({ "summary": { "graphs": yes + no + errors, "yes": yes, "no": no, "errors": errors } }));
    } else if report.batch {
        report.text(None, &format!("{} graphs: {yes} yes, {no} no, {errors} errors", yes + no + errors));
    }
    report.finish()
}

pub fn classify(common: &Common) -> Result<u8> {
    setup(common);
    let entries = input::load(common.graph.as_deref(), common.input.as_deref())?;
    let mut report = Report::new(common, &entries);
    for entry in &entries {
        let g = match &entry.graph {
            Ok(g) => g,
            Err(e) => {
                report.input_error(entry.line, None, e);
                continue;
            }
        };
        let verdicts = recognize_rx4_equals_nminus1(g).and_then(|cls| Ok((cls, recognize_rx4_equals_3(g)?)));
        let (cls, three) = match verdicts {
            Ok(v) => v,
            Err(e) => {
                report.input_error(entry.line, Some(g), &e.to_string());
                continue;
            }
        };
        if report.structured() {
            report.record(json!({
                "graph6": g6(g),
                "class": cls.class,
                "cyclomatic": cls.cyclomatic,
                "rx4_equals_n_minus_1": cls.rx4_is_n_minus_1(),
                "rx4_equals_3": three,
                "theta5": cls.has_theta5,
                "three_edge_disjoint_cycles": cls.has_three_edge_disjoint_cycles,
            }));
        } else {
            let yn = |b: bool| if b { "yes" } else { "no" };
            let mut body = format!("{:?}, rx4=n-1: {}, rx4=3: {}", cls.class, yn(cls.rx4_is_n_minus_1()), yn(three));
            if cls.has_theta5 {
                body.push_str(", theta");
            }
            match cls.has_three_edge_disjoint_cycles {
                Some(true) => body.push_str(", three edge-disjoint cycles"),
                None => body.push_str(", cycle search incomplete"),
                Some(false) => {}
            }
            report.text(Some(g), &body);
        }
    }
    report.finish()
}

pub fn verify(common: &Common, cert_path: &Path) -> Result<u8> {
    let exec = setup(common);
    let entries = input::load(common.graph.as_deref(), common.input.as_deref())?;
    let [entry] = entries.as_slice() else {
        bail!("verify needs exactly one graph, got {}", entries.len());
    };
    let g = match &entry.graph {
        Ok(g) => g,
        Err(e) => bail!("{e}"),
    };
    let text = fs::read_to_string(cert_path).with_context(|| format!("reading {}", cert_path.display()))?;
    let cert = RainbowCertificate::from_json(&text).with_context(|| format!("parsing {}", cert_path.display()))?;
    let coloring = cert.decode_for(g)?;
    let verdict = rainbow_core::rainbow::verify_k_rainbow_with(g, &coloring, cert.k, exec)?;
    let mut report = Report::new(common, &entries);
    let witness = match &verdict {
        Verdict::Valid => None,
        Verdict::Invalid { witness } => Some(witness.clone()),
    };
    if report.structured() {
        report.record(json!({ "graph6": g6(g), "k": cert.k, "q": cert.q, "valid": witness.is_none(), "witness": witness }));
    } else {
        match &witness {
            None => report.text(None, "valid"),
            Some(w) => {
                let names: Vec<String> = w.iter().map(|v| format!("v{}", v + 1)).collect();
                report.text(None, &format!("invalid: no rainbow tree for {{{}}}", names.join(", ")));
            }
        }
    }
    if witness.is_some() {
        report.raise(EXIT_FALSE);
    }
    report.finish()
}

pub fn census(common: &Common, n: Option<usize>, mode: Mode, budget: Option<u64>) -> Result<u8> {
    let exec = setup(common);
    let (graphs, mut parse_errors, label) = match (n, common.input.as_deref(), common.graph.as_deref()) {
        (Some(_), Some(_), _) => bail!("give either --n or --input, not both"),
        (_, _, Some(_)) => bail!("census reads --n or --input, not an inline graph"),
        (Some(n), None, None) => {
            if n > MAX_CENSUS_ORDER {
                bail!("internal generation supports n <= {MAX_CENSUS_ORDER}; pass a graph6 corpus with --input");
            }
            (enumerate_connected_graphs(n, exec)?, Vec::new(), format!("census n={n}"))
        }
        (None, Some(path), None) => {
            let entries = input::load(None, Some(path))?;
            let mut graphs = Vec::new();
            let mut errors = Vec::new();
            for e in entries {
                match e.graph {
                    Ok(g) => graphs.push(g),
                    Err(msg) => errors.push((e.line, msg)),
                }
            }
            (graphs, errors, format!("census {}", path.display()))
        }
        (None, None, None) => bail!("census needs --n or --input"),
    };
    let opts = CensusOptions {
        mode: match mode {
            Mode::Decide3 => CensusMode::Decide3,
            Mode::Full => CensusMode::Full,
        },
        exec,
        budget,
        ..CensusOptions::default()
    };
    let result = run_census(&graphs, &opts);

    let entries: Vec<Entry> = Vec::new();
    let mut report = Report::new(common, &entries);
    for (line, msg) in parse_errors.drain(..) {
        report.input_error(line, None, &msg);
    }
    let with_three = result.records.iter().filter(|r| r.decided_rx4_3 == Some(true)).count();
    if report.structured() {
        for r in &result.records {
            report.record(serde_json::to_value(r)?);
        }
        report.record(json!({ "summary": {
            "graphs": result.records.len(),
            "rx4_equals_3": with_three,
            "disagreements": result.disagreements,
            "incomplete": result.incomplete,
        }}));
    } else {
        for r in &result.records {
            for d in &r.disagreements {
                report.text(None, &format!("disagreement {}: {d}", r.graph6));
            }
            if let Some(e) = &r.error {
                report.text(None, &format!("incomplete {}: {e}", r.graph6));
            }
        }
        report.text(
            None,
            &format!(
                "{label}: {} graphs processed, {with_three} with rx4 = 3, {} disagreements{}",
                result.records.len(),
                result.disagreements,
                if result.incomplete { " (incomplete)" } else { "" }
            ),
        );
    }
    if result.disagreements > 0 {
        report.raise(EXIT_FALSE);
    }
    if result.incomplete {
        report.raise(EXIT_ERROR);
    }
    report.finish()
}

pub fn steiner(common: &Common, k: usize, set: Option<&[usize]>) -> Result<u8> {
    let exec = setup(common);
    let entries = input::load(common.graph.as_deref(), common.input.as_deref())?;
    let mut report = Report::new(common, &entries);
    let terminals: Option<Vec<usize>> = match set {
        Some(s) => {
            if s.contains(&0) {
                bail!("--set vertices are 1-based");
            }
            Some(s.iter().map(|v| v - 1).collect())
        }
        None => None,
    };
    for entry in &entries {
        let g = match &entry.graph {
            Ok(g) => g,
            Err(e) => {
                report.input_error(entry.line, None, e);
                continue;
            }
        };
        match &terminals {
            Some(s) => match steiner_distance(g, s) {
                Ok(r) => {
                    if report.structured() {
                        report.record(json!({ "graph6": g6(g), "steiner": r }));
                    } else {
                        let tree: Vec<String> = r.tree.iter().map(ToString::to_string).collect();
                        report.text(Some(g), &format!("d(S) = {}; tree: {}", r.size, tree.join(" ")));
                    }
                }
                Err(e) => report.input_error(entry.line, Some(g), &e.to_string()),
            },
            None => match steiner_diameter_with(g, k, exec) {
                Ok(d) => {
                    if report.structured() {
                        report.record(json!({ "graph6": g6(g), "k": k, "sdiam": d }));
                    } else {
                        report.text(Some(g), &format!("sdiam_{k} = {d}"));
                    }
                }
                Err(e) => report.input_error(entry.line, Some(g), &e.to_string()),
            },
        }
    }
    report.finish()
}

fn shape_text(g: &Graph) -> String {
    let shape = complement_shape(g);
    if !shape.valid {
        return "max degree above 2".to_string();
    }
    shape
        .components
        .iter()
        .map(|c| match c {
            Component::Path(l) => format!("P{l}"),
            Component::Cycle(l) => format!("C{l}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn complement(common: &Common) -> Result<u8> {
    setup(common);
    let entries = input::load(common.graph.as_deref(), common.input.as_deref())?;
    let mut report = Report::new(common, &entries);
    for entry in &entries {
        let g = match &entry.graph {
            Ok(g) => g,
            Err(e) => {
                report.input_error(entry.line, None, e);
                continue;
            }
        };
        let h = g.complement();
        if report.structured() {
            report.record(json!({ "graph6": g6(g), "complement": g6(&h), "shape": shape_text(g), "components": complement_shape(g) }));
        } else {
            // Plain graph6 so the output can be fed back in as a batch file.
            report.text(None, &g6(&h));
        }
    }
    report.finish()
}
