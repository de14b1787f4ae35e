use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rainbow_core::graph::{parse_edge_list, parse_graph6};
use rainbow_core::Graph;

/// One graph from the input, with its 1-based source line (0 for inline input).
pub struct Entry {
    pub line: usize,
    pub graph: Result<Graph, String>,
}

/// Reads graphs from an inline graph6 argument or an input file.
///
/// Files hold one graph6 per line (blank lines and `#` comments ignored), or
/// a single edge list whose first line is `n m`.
pub fn load(inline: Option<&str>, path: Option<&Path>) -> Result<Vec<Entry>> {
    match (inline, path) {
        (Some(_), Some(_)) => bail!("give either an inline graph6 string or --input, not both"),
        (Some(text), None) => Ok(vec![Entry { line: 0, graph: parse_graph6(text).map_err(|e| e.to_string()) }]),
        (None, Some(p)) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(parse_batch(&text))
        }
        (None, None) => bail!("no input: pass a graph6 string or --input PATH"),
    }
}

pub fn parse_batch(text: &str) -> Vec<Entry> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((first_no, first)) = lines.next() else {
        return Vec::new();
    };
    if first.contains(char::is_whitespace) {
        return vec![Entry { line: first_no, graph: parse_edge_list(text).map_err(|e| e.to_string()) }];
    }
    std::iter::once((first_no, first))
        .chain(lines)
        .map(|(line, l)| Entry { line, graph: parse_graph6(l).map_err(|e| e.to_string()) })
        .collect()
}
