//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n 3
//! 0 1
//! 1 2   # trailing comments are allowed too
//! ```
//!
//! Without the `n` header the order is one more than the largest id seen.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A parsed document together with the non-fatal issues found in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    Ok(parse_edge_list_with_warnings(text)?.graph)
}

pub fn parse_edge_list_with_warnings(text: &str) -> Result<ParsedEdgeList> {
    let mut declared: Option<usize> = None;
    let mut edges = BTreeSet::new();
    let mut warnings = Vec::new();
    let mut max_id: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens[0] == "n" {
            if declared.is_some() {
                return Err(err("duplicate `n` header".into()));
            }
            if !edges.is_empty() {
                return Err(err("`n` header must come before the edges".into()));
            }
            let [_, count] = tokens[..] else {
                return Err(err("expected `n <count>`".into()));
            };
            let count = count
                .parse::<usize>()
                .map_err(|_| err(format!("invalid vertex count `{count}`")))?;
            declared = Some(count);
            continue;
        }
        let [a, b] = tokens[..] else {
            return Err(err(format!("expected two vertex ids, got `{body}`")));
        };
        let parse_id = |t: &str| t.parse::<usize>().map_err(|_| err(format!("invalid vertex id `{t}`")));
        let (u, v) = (parse_id(a)?, parse_id(b)?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if let Some(n) = declared {
            if let Some(bad) = [u, v].into_iter().find(|&x| x >= n) {
                return Err(err(format!("vertex {bad} out of range for n = {n}")));
            }
        }
        max_id = max_id.max(Some(u.max(v)));
        if !edges.insert((u.min(v), u.max(v))) {
            warnings.push(format!("line {line}: duplicate edge {u} {v} ignored"));
        }
    }

    let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    let graph = Graph::new(n, edges)?;
    Ok(ParsedEdgeList { graph, warnings })
}

/// Normal form: the `n` header, then one `u v` line per edge with `u < v`, sorted.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_body() {
        assert_eq!(parse_edge_list("n 3\n0 1\n1 2").unwrap(), Graph::path(3));
    }

    #[test]
    fn inferred_order() {
        let g = parse_edge_list("# comment\n0 1").unwrap();
        assert_eq!(g, Graph::complete(2));
        assert_eq!(parse_edge_list("").unwrap().vertex_count(), 0);
        assert_eq!(parse_edge_list("n 4\n").unwrap(), Graph::empty(4));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("0 0"),
            Err(Error::Parse { line: 1, message: "self-loop at vertex 0".into() })
        );
        assert!(matches!(parse_edge_list("n 2\n0 1\n\n1 2"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_edge_list("0 x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\nn 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("n -1"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicates_collapse() {
        let p = parse_edge_list_with_warnings("0 1\n1 0  # same edge\n1 2").unwrap();
        assert_eq!(p.graph, Graph::path(3));
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].starts_with("line 2"));
    }

    #[test]
    fn emit_is_normal_form() {
        let g = parse_edge_list("2 1\n0 1\n").unwrap();
        assert_eq!(emit_edge_list(&g), "n 3\n0 1\n1 2\n");
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }
}
