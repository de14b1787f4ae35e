//! graph6 codec (single-byte order field only) and the 1-based edge-list format.

use super::{Graph, GraphError, MAX_ORDER};

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

fn g6_err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 { offset, reason: reason.into() }
}

/// Parses one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored; byte offsets in errors are relative to
/// the start of the encoded graph.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();

    let Some(&first) = bytes.first() else {
        return Err(g6_err(0, "empty input"));
    };
    check_byte(first, 0)?;
    if first == 126 {
        return Err(g6_err(0, format!("multi-byte order field unsupported (n > {MAX_ORDER})")));
    }
    let n = (first - BIAS) as usize;
    if n == 0 {
        return Err(g6_err(0, "order 0 is not a graph"));
    }

    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() < nbytes {
        return Err(g6_err(1 + body.len(), format!("truncated: expected {nbytes} data bytes, found {}", body.len())));
    }
    if body.len() > nbytes {
        return Err(g6_err(1 + nbytes, "trailing bytes after adjacency data"));
    }

    let mut adj = vec![0u64; n];
    let mut bit = 0usize;
    for (i, &b) in body.iter().enumerate() {
        check_byte(b, 1 + i)?;
        let chunk = b - BIAS;
        for shift in (0..6).rev() {
            let set = chunk >> shift & 1 == 1;
            if bit < nbits {
                if set {
                    let (u, v) = pair_of_bit(bit);
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            } else if set {
                return Err(g6_err(1 + i, "nonzero padding bits"));
            }
            bit += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

fn check_byte(b: u8, offset: usize) -> Result<(), GraphError> {
    if (63..=126).contains(&b) {
        Ok(())
    } else {
        Err(g6_err(offset, format!("byte value {b} outside 63..=126")))
    }
}

/// Bit `i` of the column-major upper triangle: a(0,1) a(0,2) a(1,2) a(0,3) ...
fn pair_of_bit(i: usize) -> (usize, usize) {
    let mut v = 1;
    while v * (v + 1) / 2 <= i {
        v += 1;
    }
    (i - v * (v - 1) / 2, v)
}

/// Encodes `g` as a graph6 line (no header, no newline).
pub fn emit_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(GraphError::UnsupportedOrder(n));
    }
    let mut out = String::with_capacity(1 + (n * n).div_ceil(12));
    out.push((n as u8 + BIAS) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = chunk << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + BIAS) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + BIAS) as char);
    }
    Ok(out)
}

/// Parses the plain edge-list format: a header line `n m` followed by `m`
/// lines `u v` with 1-based vertices. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GraphError::EdgeList { line: 1, reason: "missing header".into() })?;
    let [n, m] = parse_pair(header, hline)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let [a, b] = parse_pair(l, line)?;
        if a == 0 || b == 0 {
            return Err(GraphError::EdgeList { line, reason: "vertices are 1-based".into() });
        }
        edges.push((a - 1, b - 1));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeList { line: hline, reason: format!("header declares {m} edges, found {}", edges.len()) });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(l: &str, line: usize) -> Result<[usize; 2], GraphError> {
    let nums: Vec<usize> = l
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| GraphError::EdgeList { line, reason: format!("{e}") })?;
    match nums[..] {
        [a, b] => Ok([a, b]),
        _ => Err(GraphError::EdgeList { line, reason: format!("expected two integers, got {}", nums.len()) }),
    }
}

/// Accepts either a graph6 line or an edge-list document.
pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.contains(char::is_whitespace) {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}
