//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! node <id> [weight]
//! edge <src> <dst> [weight]
//! ```
//!
//! Weights default to 1. Edge endpoints must be declared before use.

use std::fmt::Write as _;

use critset_core::{Graph, GraphBuilder};

use crate::error::{Error, Result};

fn weight(token: Option<&str>, line: usize) -> Result<f64> {
    match token {
        None => Ok(1.0),
        Some(t) => t
            .parse::<f64>()
            .map_err(|_| Error::syntax(line, format!("invalid weight `{t}`"))),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let at = |source| Error::AtLine { line, source };
        match fields.as_slice() {
            ["node", id, rest @ ..] if rest.len() <= 1 => {
                let w = weight(rest.first().copied(), line)?;
                b.add_node(id, w).map_err(at)?;
            }
            ["edge", src, dst, rest @ ..] if rest.len() <= 1 => {
                let w = weight(rest.first().copied(), line)?;
                b.add_edge(src, dst, w).map_err(at)?;
            }
            _ => {
                return Err(Error::syntax(
                    line,
                    format!("expected `node <id> [weight]` or `edge <src> <dst> [weight]`, got `{trimmed}`"),
                ))
            }
        }
    }
    Ok(b.build()?)
}

/// Inverse of [`parse_graph`]; unit weights are omitted.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    for node in g.nodes() {
        if node.weight == 1.0 {
            writeln!(out, "node {}", node.id).unwrap();
        } else {
            writeln!(out, "node {} {}", node.id, node.weight).unwrap();
        }
    }
    for e in g.edges() {
        let (s, t) = (g.id(e.source), g.id(e.target));
        if e.weight == 1.0 {
            writeln!(out, "edge {s} {t}").unwrap();
        } else {
            writeln!(out, "edge {s} {t} {}", e.weight).unwrap();
        }
    }
    out
}
