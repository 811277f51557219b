//! Line-oriented text formats for graphs, lists and colourings.
//!
//! Graph:
//!
//! ```text
//! # optional comments
//! n m
//! u v        (m lines, 0-indexed)
//! ```
//!
//! Lists: one line `v: c1 c2 ... ct` per vertex. Colouring: one line `v c`
//! per coloured vertex. Lines starting with `#` and blank lines are skipped
//! everywhere. The writers emit the canonical form: no comments, vertices in
//! increasing order, edges sorted by tail then head.

use std::fmt::Write as _;

use majority_core::{Colour, Colouring, Digraph, GraphError, ListAssignment, ListError, Vertex};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vertex {0} has no list")]
    MissingVertex(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lists(#[from] ListError),
}

fn parse_err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        reason: reason.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} {token:?}")))
}

fn exactly_two(line: usize, content: &str) -> Result<(&str, &str), FormatError> {
    let mut tokens = content.split_whitespace();
    match (tokens.next(), tokens.next(), tokens.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(parse_err(line, "expected two integers")),
    }
}

pub fn parse_graph(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = data_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing \"n m\" header"))?;
    let (n, m) = exactly_two(line, header)?;
    let n: usize = number(line, n, "vertex count")?;
    let m: usize = number(line, m, "edge count")?;

    let mut edges = Vec::with_capacity(m);
    for (line, content) in lines {
        if edges.len() == m {
            return Err(parse_err(line, format!("more than {m} edge lines")));
        }
        let (u, v) = exactly_two(line, content)?;
        edges.push((number(line, u, "vertex")?, number(line, v, "vertex")?));
    }
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Digraph::from_edges(n, edges)?)
}

pub fn write_graph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_lists(text: &str, n: usize) -> Result<ListAssignment, FormatError> {
    let mut lists: Vec<Option<Vec<Colour>>> = vec![None; n];
    for (line, content) in data_lines(text) {
        let (vertex, rest) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected \"v: c1 c2 ...\""))?;
        let v: Vertex = number(line, vertex.trim(), "vertex")?;
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
        if lists[v].is_some() {
            return Err(parse_err(line, format!("vertex {v} listed twice")));
        }
        let colours = rest
            .split_whitespace()
            .map(|t| number(line, t, "colour"))
            .collect::<Result<Vec<Colour>, _>>()?;
        lists[v] = Some(colours);
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or(FormatError::MissingVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ListAssignment::new(lists)?)
}

pub fn write_lists(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for (v, list) in lists.lists().iter().enumerate() {
        let _ = write!(out, "{v}:");
        for c in list {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_colouring(text: &str, n: usize) -> Result<Colouring, FormatError> {
    let mut c = Colouring::uncoloured(n);
    for (line, content) in data_lines(text) {
        let (v, col) = exactly_two(line, content)?;
        let v: Vertex = number(line, v, "vertex")?;
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
        if c.get(v).is_some() {
            return Err(parse_err(line, format!("vertex {v} coloured twice")));
        }
        c.set(v, number(line, col, "colour")?);
    }
    Ok(c)
}

pub fn write_colouring(c: &Colouring) -> String {
    let mut out = String::new();
    for (v, col) in c.iter() {
        let _ = writeln!(out, "{v} {col}");
    }
    out
}
