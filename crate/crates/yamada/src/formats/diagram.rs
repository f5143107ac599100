//! Diagram files:
//!
//! ```text
//! vertex u ports 2
//! vertex v ports 2
//! crossing c
//! arc 0: u.0 c.0
//! arc 1: u.1 c.3
//! arc 2: c.1 v.0
//! arc 3: c.2 v.1
//! terminals u v
//! ```
//!
//! A crossing has ports 0 to 3 in cyclic order with the over-strand on
//! ports 0 and 2. Every port must be met by exactly one arc.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use yamada_core::diagram::{NodeId, NodeKind, Port, SpatialDiagram};

use super::{assign_ids, check_name, content_lines, parse_id};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedDiagram {
    pub diagram: SpatialDiagram,
    pub names: BTreeMap<String, NodeId>,
}

enum Item<'a> {
    Node(String, NodeKind),
    Arc(u32, &'a str, &'a str),
    Terminals(&'a str, &'a str),
}

fn parse_line(line: usize, text: &str) -> Result<Item<'_>, ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    match tokens.as_slice() {
        ["vertex", name, "ports", k] => {
            check_name(line, name)?;
            let degree = parse_id(line, "port count", k)?;
            Ok(Item::Node(name.to_string(), NodeKind::Vertex { degree }))
        }
        ["crossing", name] => {
            check_name(line, name)?;
            Ok(Item::Node(name.to_string(), NodeKind::Crossing))
        }
        ["arc", ..] => {
            let rest = text["arc".len()..].trim();
            let (id, ends) =
                rest.split_once(':').ok_or_else(|| ParseError::new(line, "missing `:` after the arc id"))?;
            let id = parse_id(line, "arc id", id.trim())?;
            match ends.split_whitespace().collect::<Vec<_>>().as_slice() {
                [a, b] => Ok(Item::Arc(id, a, b)),
                _ => Err(ParseError::new(line, "an arc joins exactly two ports")),
            }
        }
        ["terminals", u, v] => Ok(Item::Terminals(u, v)),
        _ => Err(ParseError::new(
            line,
            format!("unrecognised line `{text}`; expected vertex, crossing, arc or terminals"),
        )),
    }
}

pub fn parse_diagram(text: &str) -> Result<NamedDiagram, ParseError> {
    let items: Vec<(usize, Item)> =
        content_lines(text).map(|(line, t)| parse_line(line, t).map(|item| (line, item))).collect::<Result<_, _>>()?;

    let declared: Vec<(usize, String)> = items
        .iter()
        .filter_map(|(line, item)| match item {
            Item::Node(name, _) => Some((*line, name.clone())),
            _ => None,
        })
        .collect();
    let names = assign_ids(&declared)?;
    let mut nodes = BTreeMap::new();
    let mut declared_on = BTreeMap::new();
    for (line, item) in &items {
        if let Item::Node(name, kind) = item {
            nodes.insert(names[name], *kind);
            declared_on.insert(names[name], *line);
        }
    }

    let port = |line: usize, token: &str| -> Result<Port, ParseError> {
        let (node, k) = token
            .split_once('.')
            .ok_or_else(|| ParseError::new(line, format!("port `{token}` is not of the form <node>.<port>")))?;
        let id = *names.get(node).ok_or_else(|| ParseError::new(line, format!("unknown node `{node}`")))?;
        let k = parse_id(line, "port", k)?;
        let count = nodes[&id].ports();
        if k >= count {
            return Err(ParseError::new(line, format!("node `{node}` has {count} ports, no port {k}")));
        }
        Ok(Port::new(id, k))
    };

    let mut arcs = BTreeMap::new();
    let mut used = BTreeSet::new();
    let mut terminals = None;
    for (line, item) in &items {
        match item {
            Item::Node(..) => {}
            Item::Arc(id, a, b) => {
                let ends = (port(*line, a)?, port(*line, b)?);
                for (p, token) in [(ends.0, a), (ends.1, b)] {
                    if !used.insert(p) {
                        return Err(ParseError::new(*line, format!("port {token} is already used by another arc")));
                    }
                }
                if arcs.insert(*id, ends).is_some() {
                    return Err(ParseError::new(*line, format!("duplicate arc id {id}")));
                }
            }
            Item::Terminals(u, v) => {
                if terminals.is_some() {
                    return Err(ParseError::new(*line, "terminals given twice"));
                }
                let vertex = |name: &str| match names.get(name) {
                    Some(id) if matches!(nodes[id], NodeKind::Vertex { .. }) => Ok(*id),
                    Some(_) => Err(ParseError::new(*line, format!("terminal `{name}` is a crossing"))),
                    None => Err(ParseError::new(*line, format!("unknown node `{name}`"))),
                };
                terminals = Some((vertex(u)?, vertex(v)?));
            }
        }
    }
    for (&id, kind) in &nodes {
        for k in 0..kind.ports() {
            if !used.contains(&Port::new(id, k)) {
                let name = names.iter().find(|(_, &v)| v == id).map(|(n, _)| n.as_str()).unwrap_or("?");
                return Err(ParseError::new(declared_on[&id], format!("port {name}.{k} is not met by any arc")));
            }
        }
    }
    let last = items.last().map_or(1, |(line, _)| *line);
    let diagram = SpatialDiagram::new(nodes, arcs, terminals).map_err(|e| ParseError::new(last, e.to_string()))?;
    Ok(NamedDiagram { diagram, names })
}

/// Text form with numeric node names; `parse_diagram` reads it back to an
/// equal diagram.
pub fn write_diagram(d: &SpatialDiagram) -> String {
    let mut out = String::new();
    for (id, kind) in d.nodes() {
        match kind {
            NodeKind::Vertex { degree } => writeln!(out, "vertex {id} ports {degree}"),
            NodeKind::Crossing => writeln!(out, "crossing {id}"),
        }
        .unwrap();
    }
    for (id, a, b) in d.arcs() {
        writeln!(out, "arc {id}: {}.{} {}.{}", a.node, a.port, b.node, b.port).unwrap();
    }
    if let Some((u, v)) = d.terminals() {
        writeln!(out, "terminals {u} {v}").unwrap();
    }
    out
}
