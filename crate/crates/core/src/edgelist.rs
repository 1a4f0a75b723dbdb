//! Plain-text edge lists.
//!
//! ```text
//! # comment lines start with '#'
//! 4
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The first significant line holds the vertex count `n`; every following
//! non-empty line is one edge `u v` with `0 <= u < v < n`. Duplicate edges are
//! rejected.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing vertex count".into() })?;
    let n: usize = header.parse().map_err(|_| Error::Parse { line: first, message: format!("expected vertex count, found `{header}`") })?;
    if n > MAX_ORDER {
        return Err(Error::TooLarge(n));
    }

    let mut edges = Vec::new();
    let mut seen = vec![false; n * n];
    for (line, content) in lines {
        let bad = |message: String| Error::Parse { line, message };
        let mut tokens = content.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(bad(format!("expected `u v`, found `{content}`")));
        };
        let u: usize = a.parse().map_err(|_| bad(format!("invalid vertex `{a}`")))?;
        let v: usize = b.parse().map_err(|_| bad(format!("invalid vertex `{b}`")))?;
        if v >= n {
            return Err(bad(format!("vertex {v} out of range for n = {n}")));
        }
        if u >= v {
            return Err(bad(format!("edge `{u} {v}` must satisfy u < v")));
        }
        if seen[u * n + v] {
            return Err(bad(format!("duplicate edge `{u} {v}`")));
        }
        seen[u * n + v] = true;
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text)
}

/// Canonical serialization: vertex count, then edges in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
