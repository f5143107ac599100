//! Plain-text graph and diagram files.

pub mod diagram;
pub mod graph;

use std::collections::BTreeMap;

use crate::error::ParseError;

/// Lines with content, numbered from 1. `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Names to ids: numeric names keep their value, the rest are numbered
/// after the largest numeric one in order of declaration.
fn assign_ids(names: &[(usize, String)]) -> Result<BTreeMap<String, u32>, ParseError> {
    let mut ids = BTreeMap::new();
    let mut taken = std::collections::BTreeSet::new();
    for (line, name) in names {
        if let Ok(id) = name.parse::<u32>() {
            if !taken.insert(id) {
                return Err(ParseError::new(*line, format!("duplicate name `{name}`")));
            }
            ids.insert(name.clone(), id);
        }
    }
    let mut next = taken.last().map_or(0, |&m| m + 1);
    for (line, name) in names {
        if name.parse::<u32>().is_ok() {
            continue;
        }
        if ids.insert(name.clone(), next).is_some() {
            return Err(ParseError::new(*line, format!("duplicate name `{name}`")));
        }
        next += 1;
    }
    Ok(ids)
}

fn check_name(line: usize, name: &str) -> Result<(), ParseError> {
    if name.is_empty() || name.contains(['.', ':']) {
        return Err(ParseError::new(line, format!("invalid name `{name}`")));
    }
    Ok(())
}

fn parse_id(line: usize, what: &str, token: &str) -> Result<u32, ParseError> {
    token.parse().map_err(|_| ParseError::new(line, format!("{what} `{token}` is not a non-negative integer")))
}
