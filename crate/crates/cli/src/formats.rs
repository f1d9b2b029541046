//! Graph and matrix file formats.
//!
//! Edge lists hold one `i j` pair per line (0-based); `#` starts a comment.
//! JSON graphs are `{"n": .., "labels": [..], "edges": [[i, j], ..]}` with
//! optional labels. Exports are canonical: edges sorted with `i < j`.

use std::fmt::Write as _;
use std::path::Path;

use powergraph_core::graph::VertexLabel;
use powergraph_core::matrices::DistanceMatrix;
use powergraph_core::{DenseSymMatrix, Graph};
use serde::{Deserialize, Serialize};

use crate::config::GraphFormat;
use crate::error::{CliError, ParseError};

pub fn label_string(label: &VertexLabel) -> String {
    match label {
        VertexLabel::Element(x) => x.to_string(),
        VertexLabel::Opaque(s) => s.clone(),
    }
}

fn opaque_labels(n: usize) -> Vec<VertexLabel> {
    (0..n).map(|i| VertexLabel::Opaque(i.to_string())).collect()
}

fn graph_error(line: usize, e: powergraph_core::Error) -> ParseError {
    ParseError::new(line, e.to_string())
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::new(line_no, format!("expected two vertex indices, got {line:?}")));
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| ParseError::new(line_no, format!("invalid vertex index {s:?}")))
        };
        let (a, b) = (parse(fields[0])?, parse(fields[1])?);
        if a == b {
            return Err(ParseError::new(line_no, format!("self-loop on vertex {a}")));
        }
        n = n.max(a + 1).max(b + 1);
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::with_labels(opaque_labels(n), &edges).map_err(|e| graph_error(0, e))
}

/// Serialised graph. Group elements additionally appear as `(eps, i)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<(u8, u64)>>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn from_graph(graph: &Graph) -> Self {
        let elements: Option<Vec<(u8, u64)>> = graph
            .labels()
            .iter()
            .map(|l| match l {
                VertexLabel::Element(x) => Some((x.eps, x.i)),
                VertexLabel::Opaque(_) => None,
            })
            .collect();
        GraphDoc {
            n: graph.order(),
            labels: Some(graph.labels().iter().map(label_string).collect()),
            elements,
            edges: graph.edges(),
        }
    }
}

pub fn parse_graph_json(text: &str) -> Result<Graph, ParseError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))?;
    let labels = match doc.labels {
        Some(l) if l.len() != doc.n => {
            return Err(ParseError::new(0, format!("{} labels for {} vertices", l.len(), doc.n)));
        }
        Some(l) => l.into_iter().map(VertexLabel::Opaque).collect(),
        None => opaque_labels(doc.n),
    };
    Graph::with_labels(labels, &doc.edges).map_err(|e| graph_error(0, e))
}

/// Reads a graph; without an explicit format `.json` files are JSON and
/// everything else is an edge list.
pub fn ingest_graph(path: &Path, format: Option<GraphFormat>) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let format = format.unwrap_or(match path.extension().and_then(|e| e.to_str()) {
        Some("json") => GraphFormat::Json,
        _ => GraphFormat::EdgeList,
    });
    let parsed = match format {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Json => parse_graph_json(&text),
    };
    parsed.map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

pub fn edge_list_text(graph: &Graph) -> String {
    let mut out = String::new();
    for (a, b) in graph.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

/// Full square matrix, one row per line.
pub fn matrix_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

pub fn dense_rows(m: &DenseSymMatrix) -> Vec<Vec<f64>> {
    m.rows()
}

pub fn distance_rows(d: &DistanceMatrix) -> Vec<Vec<u32>> {
    (0..d.order()).map(|i| d.row(i).to_vec()).collect()
}

pub fn integer_matrix_csv(rows: &[Vec<u32>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}
