//! Edge-list text format.
//!
//! One edge per line as `u v` (0-based ids), optionally `u v m` for a
//! multigraph edge of multiplicity `m`. Blank lines and `#` comments are
//! ignored, except that a comment of the form `# n = N` declares the vertex
//! count so trailing isolated vertices survive a round trip. Without it the
//! vertex count is one more than the largest id seen.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use crate::error::{Error, Result};

use super::{MultiGraph, SimpleGraph, Vertex};

struct RawEdges {
    declared_n: Option<usize>,
    edges: Vec<(Vertex, Vertex, usize, usize)>,
}

fn parse_raw(text: &str, allow_multiplicity: bool) -> Result<RawEdges> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("n =") {
                let n = rest.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex count directive {line:?}"),
                })?;
                declared_n = Some(n);
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected a nonnegative integer, found {s:?}"),
            })
        };
        let (u, v, m) = match fields.as_slice() {
            [u, v] => (parse(u)?, parse(v)?, 1),
            [u, v, m] if allow_multiplicity => (parse(u)?, parse(v)?, parse(m)?),
            [_, _, _] => {
                return Err(Error::Parse {
                    line: line_no,
                    message: "multiplicity column is only allowed for pattern multigraphs".into(),
                })
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v`, found {line:?}"),
                })
            }
        };
        edges.push((u, v, m, line_no));
    }
    Ok(RawEdges { declared_n, edges })
}

fn vertex_count(raw: &RawEdges) -> usize {
    let seen = raw.edges.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0);
    raw.declared_n.unwrap_or(0).max(seen)
}

pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph> {
    let raw = parse_raw(text, false)?;
    let mut g = SimpleGraph::new(vertex_count(&raw));
    for &(u, v, _, line) in &raw.edges {
        g.add_edge(u, v).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

pub fn parse_multigraph(text: &str) -> Result<MultiGraph> {
    let raw = parse_raw(text, true)?;
    let edges: Vec<_> = raw.edges.iter().map(|e| (e.0, e.1, e.2)).collect();
    MultiGraph::new(vertex_count(&raw), &edges)
}

pub fn read_simple_graph(path: impl AsRef<FsPath>) -> Result<SimpleGraph> {
    parse_simple_graph(&std::fs::read_to_string(path)?)
}

pub fn read_multigraph(path: impl AsRef<FsPath>) -> Result<MultiGraph> {
    parse_multigraph(&std::fs::read_to_string(path)?)
}

pub fn write_edge_list(g: &SimpleGraph) -> String {
    let mut out = format!("# n = {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("write to String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let g = parse_simple_graph("# a triangle\n0 1\n\n1 2\n2 0\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn vertex_count_directive_keeps_isolated_vertices() {
        let g = parse_simple_graph("# n = 5\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(parse_simple_graph(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn multigraph_multiplicity_column() {
        let f = parse_multigraph("0 1 3\n1 2\n").unwrap();
        assert_eq!(f.edges(), &[(0, 1, 3), (1, 2, 1)]);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            parse_simple_graph("0 1\n1 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_simple_graph("0 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_simple_graph("0 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_simple_graph("0 1\n1 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_multigraph("0 0 1\n").is_err());
    }
}
