//! The canonical edge-list text format and the label sidecar.
//!
//! ```text
//! # optional comments
//! n m
//! u v        (m lines, 0 <= u < v < n, strictly sorted)
//! ```

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::labels::VertexLabel;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), FormatError> {
    let err = |msg: &str| FormatError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let mut it = s.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a.parse().map_err(|_| err("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| err("not a non-negative integer"))?;
    Ok((a, b))
}

/// Parses the canonical format strictly: edges must satisfy `u < v` and
/// appear in strictly increasing lexicographic order.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        if u >= v {
            return Err(FormatError::Syntax {
                line,
                msg: format!("edge {u} {v} must satisfy u < v"),
            });
        }
        if v >= n {
            return Err(FormatError::Syntax {
                line,
                msg: format!("vertex {v} out of range for n = {n}"),
            });
        }
        if let Some(&prev) = edges.last() {
            if prev >= (u, v) {
                return Err(FormatError::Syntax {
                    line,
                    msg: "edges must be strictly sorted".into(),
                });
            }
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, &edges)?)
}

/// One JSON array, newline-terminated.
pub fn write_labels(labels: &[VertexLabel]) -> String {
    let mut out = serde_json::to_string(labels).expect("labels serialize");
    out.push('\n');
    out
}

pub fn parse_labels(text: &str) -> Result<Vec<VertexLabel>, FormatError> {
    Ok(serde_json::from_str(text)?)
}
