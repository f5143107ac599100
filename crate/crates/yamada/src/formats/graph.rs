//! Graph files:
//!
//! ```text
//! vertices: u v w
//! edge 0: u v a
//! edge 1: v w
//! ```
//!
//! Edge labels are optional. Numeric vertex names are used as ids.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use yamada_core::graph::{MultiGraph, VertexId};

use super::{assign_ids, check_name, content_lines, parse_id};
use crate::error::ParseError;

/// A parsed graph together with the vertex names of its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub graph: MultiGraph,
    pub names: BTreeMap<String, VertexId>,
}

impl NamedGraph {
    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.names.get(name).copied()
    }
}

pub fn parse_graph(text: &str) -> Result<NamedGraph, ParseError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing `vertices:` line"))?;
    let rest = header
        .strip_prefix("vertices:")
        .ok_or_else(|| ParseError::new(first, "expected `vertices: ...`"))?;
    let declared: Vec<(usize, String)> = rest.split_whitespace().map(|n| (first, n.to_string())).collect();
    for (line, name) in &declared {
        check_name(*line, name)?;
    }
    let names = assign_ids(&declared)?;
    let mut graph = MultiGraph::new();
    for &id in names.values() {
        graph.add_vertex(id);
    }

    for (line, text) in lines {
        let rest = text
            .strip_prefix("edge")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| ParseError::new(line, "expected `edge <id>: <u> <v> [label]`"))?;
        let (id, ends) =
            rest.split_once(':').ok_or_else(|| ParseError::new(line, "missing `:` after the edge id"))?;
        let id = parse_id(line, "edge id", id.trim())?;
        let tokens: Vec<&str> = ends.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(ParseError::new(line, "expected two endpoints and an optional label"));
        }
        let vertex = |name: &str| {
            names.get(name).copied().ok_or_else(|| ParseError::new(line, format!("unknown vertex `{name}`")))
        };
        let (u, v) = (vertex(tokens[0])?, vertex(tokens[1])?);
        graph
            .insert_edge(id, u, v, tokens.get(2).map(|l| l.to_string()))
            .map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    Ok(NamedGraph { graph, names })
}

/// Text form with numeric vertex names; `parse_graph` reads it back to an
/// equal graph.
pub fn write_graph(g: &MultiGraph) -> String {
    let mut out = String::from("vertices:");
    for v in g.vertices() {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    for (id, e) in g.edges() {
        write!(out, "edge {id}: {} {}", e.u, e.v).unwrap();
        if let Some(label) = &e.label {
            write!(out, " {label}").unwrap();
        }
        out.push('\n');
    }
    out
}
