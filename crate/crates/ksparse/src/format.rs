//! Line-oriented text format.
//!
//! ```text
//! n k l
//! # comment
//! 0 1 2 w=1.5 t=0
//! ```
//!
//! The header carries the vertex count and the sparsity parameters. Every
//! other non-empty, non-`#` line is one edge: its endpoint ids, optionally a
//! weight `w=<decimal>`, optionally a tail `t=<vertex>` (emitted when
//! serializing an orientation). Weights and tails must be given on all edges
//! or none.

use crate::hypergraph::{GraphError, Hypergraph, Orientation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedFile {
    pub graph: Hypergraph,
    pub k: usize,
    pub l: usize,
    pub orientation: Option<Orientation>,
}

pub fn parse(text: &str) -> Result<ParsedFile, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut weights: Vec<Option<f64>> = Vec::new();
    let mut tails: Vec<Option<usize>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(lineno, "header must be `n k l`"));
            }
            let parse_field = |s: &str, name: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(lineno, format!("bad {name} `{s}` in header")))
            };
            header = Some((
                parse_field(fields[0], "n")?,
                parse_field(fields[1], "k")?,
                parse_field(fields[2], "l")?,
            ));
            continue;
        }

        let mut ends = Vec::new();
        let mut weight = None;
        let mut tail = None;
        for tok in line.split_whitespace() {
            if let Some(w) = tok.strip_prefix("w=") {
                if weight.is_some() {
                    return Err(err(lineno, "duplicate w= field"));
                }
                weight = Some(
                    w.parse::<f64>()
                        .map_err(|_| err(lineno, format!("bad weight `{w}`")))?,
                );
            } else if let Some(t) = tok.strip_prefix("t=") {
                if tail.is_some() {
                    return Err(err(lineno, "duplicate t= field"));
                }
                tail = Some(
                    t.parse::<usize>()
                        .map_err(|_| err(lineno, format!("bad tail `{t}`")))?,
                );
            } else {
                ends.push(
                    tok.parse::<usize>()
                        .map_err(|_| err(lineno, format!("bad vertex id `{tok}`")))?,
                );
            }
        }
        if ends.is_empty() {
            return Err(err(lineno, "edge has no endpoints"));
        }
        let n = header.expect("header parsed before edges").0;
        for &v in &ends {
            if v >= n {
                return Err(err(lineno, format!("vertex {v} out of range (n = {n})")));
            }
        }
        let mut sorted = ends.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(err(lineno, "edge repeats a vertex"));
        }
        if let Some(t) = tail {
            if !sorted.contains(&t) {
                return Err(err(lineno, format!("tail {t} is not an endpoint")));
            }
        }
        edges.push(ends);
        weights.push(weight);
        tails.push(tail);
        edge_lines.push(lineno);
    }

    let Some((n, k, l)) = header else {
        return Err(err(text.lines().count().max(1), "missing `n k l` header"));
    };

    let graph = Hypergraph::new(n, edges).map_err(|e| graph_err_to_parse(e, &edge_lines))?;

    let weighted = weights.iter().filter(|w| w.is_some()).count();
    let graph = if weighted == 0 {
        graph
    } else if weighted == graph.edge_count() {
        graph
            .with_weights(weights.into_iter().map(Option::unwrap).collect())
            .expect("count checked")
    } else {
        let line = edge_lines[weights.iter().position(|w| w.is_none()).unwrap()];
        return Err(err(line, "weights must be given on all edges or none"));
    };

    let tailed = tails.iter().filter(|t| t.is_some()).count();
    let orientation = if tailed == 0 {
        None
    } else if tailed == graph.edge_count() {
        let tails: Vec<usize> = tails.into_iter().map(Option::unwrap).collect();
        Some(Orientation::new(&graph, tails).map_err(|e| graph_err_to_parse(e, &edge_lines))?)
    } else {
        let line = edge_lines[tails.iter().position(|t| t.is_none()).unwrap()];
        return Err(err(line, "tails must be given on all edges or none"));
    };

    Ok(ParsedFile {
        graph,
        k,
        l,
        orientation,
    })
}

// Line-level checks above make these unreachable in practice; keep the
// mapping total anyway.
fn graph_err_to_parse(e: GraphError, edge_lines: &[usize]) -> ParseError {
    let line = match &e {
        GraphError::EmptyEdge { index }
        | GraphError::RepeatedVertex { index, .. }
        | GraphError::TailNotEndpoint { edge: index, .. } => {
            edge_lines.get(*index).copied().unwrap_or(0)
        }
        _ => 0,
    };
    ParseError {
        line,
        msg: e.to_string(),
    }
}

pub fn serialize(graph: &Hypergraph, k: usize, l: usize) -> String {
    serialize_impl(graph, k, l, None)
}

pub fn serialize_oriented(
    graph: &Hypergraph,
    k: usize,
    l: usize,
    orientation: &Orientation,
) -> String {
    serialize_impl(graph, k, l, Some(orientation))
}

fn serialize_impl(
    graph: &Hypergraph,
    k: usize,
    l: usize,
    orientation: Option<&Orientation>,
) -> String {
    let mut out = format!("{} {} {}\n", graph.n(), k, l);
    for (i, e) in graph.edges().iter().enumerate() {
        let ids: Vec<String> = e.ends().iter().map(usize::to_string).collect();
        out.push_str(&ids.join(" "));
        if let Some(ws) = graph.weights() {
            out.push_str(&format!(" w={}", ws[i]));
        }
        if let Some(o) = orientation {
            out.push_str(&format!(" t={}", o.tail(i)));
        }
        out.push('\n');
    }
    out
}
