//! Graph files.
//!
//! PACE form: a `p <n> <m>` (or `p tw <n> <m>`) header and `m` lines of
//! 1-based vertex pairs. Anything without a `p` header is read as a plain
//! edge list whose tokens are arbitrary labels, numbered in order of first
//! appearance; a line with a single label declares an isolated vertex.

use std::collections::HashMap;
use std::fmt::Write;

use tbspan_core::{Graph, SubtreeOfGraph};

use super::{content_lines, parse_err, parse_usize, Format, ParseError};

/// A graph with the label of each dense vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Labels `"1"` to `"n"`, matching the 1-based PACE ids.
    pub fn numbered(graph: Graph) -> Self {
        let labels = (1..=graph.order()).map(|i| i.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }
}

/// Parses either PACE or plain edge-list text.
pub fn parse_graph(text: &str) -> Result<LabeledGraph, ParseError> {
    let (n, edges, labels) = parse_edges(text, None)?;
    let graph = Graph::new(n, edges.iter().map(|&(_, u, v)| (u, v))).or_else(|e| {
        let line = edges.last().map_or(1, |&(l, _, _)| l);
        parse_err(line, e.to_string())
    })?;
    Ok(LabeledGraph { graph, labels })
}

/// Parses a tree file against `host`: PACE ids are 1-based vertex ids of the
/// host, edge-list tokens are host labels. Returns the edges (dense ids).
pub fn parse_tree_edges(text: &str, host: &LabeledGraph) -> Result<Vec<(usize, usize)>, ParseError> {
    let (n, edges, _) = parse_edges(text, Some(host))?;
    if n != host.graph.order() {
        return parse_err(1, format!("tree has {n} vertices, graph has {}", host.graph.order()));
    }
    Ok(edges.into_iter().map(|(_, u, v)| (u, v)).collect())
}

type Parsed = (usize, Vec<(usize, usize, usize)>, Vec<String>);

fn parse_edges(text: &str, host: Option<&LabeledGraph>) -> Result<Parsed, ParseError> {
    let mut lines = content_lines(text).peekable();
    match lines.peek() {
        Some((_, tokens)) if tokens[0] == "p" => parse_pace(lines),
        _ => parse_labeled(lines, host),
    }
}

fn parse_pace<'a>(mut lines: impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<Parsed, ParseError> {
    let (hline, header) = lines.next().expect("peeked");
    let nums = match header.as_slice() {
        ["p", n, m] | ["p", _, n, m] => (parse_usize(hline, n, "vertex count")?, parse_usize(hline, m, "edge count")?),
        _ => return parse_err(hline, "expected `p <n> <m>` or `p <kind> <n> <m>`"),
    };
    let (n, m) = nums;
    let mut edges = Vec::with_capacity(m);
    for (line, tokens) in lines {
        let [u, v] = tokens.as_slice() else {
            return parse_err(line, format!("expected two vertex ids, got {} tokens", tokens.len()));
        };
        let id = |t: &str| -> Result<usize, ParseError> {
            let x = parse_usize(line, t, "vertex id")?;
            if x == 0 || x > n {
                return parse_err(line, format!("vertex id {x} outside 1..={n}"));
            }
            Ok(x - 1)
        };
        edges.push((line, id(u)?, id(v)?));
    }
    if edges.len() != m {
        return parse_err(hline, format!("header announces {m} edges, found {}", edges.len()));
    }
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Ok((n, edges, labels))
}

fn parse_labeled<'a>(lines: impl Iterator<Item = (usize, Vec<&'a str>)>, host: Option<&LabeledGraph>) -> Result<Parsed, ParseError> {
    let host_index = host.map(LabeledGraph::index);
    let mut table: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut seen_in_tree = vec![false; host.map_or(0, |h| h.graph.order())];
    for (line, tokens) in lines {
        if tokens.len() > 2 {
            return parse_err(line, format!("expected one or two labels, got {} tokens", tokens.len()));
        }
        let mut ids = Vec::with_capacity(2);
        for &t in &tokens {
            let id = match &host_index {
                Some(index) => {
                    let Some(&id) = index.get(t) else {
                        return parse_err(line, format!("label {t:?} is not a vertex of the graph"));
                    };
                    seen_in_tree[id] = true;
                    id
                }
                None => *table.entry(t.to_string()).or_insert_with(|| {
                    labels.push(t.to_string());
                    labels.len() - 1
                }),
            };
            ids.push(id);
        }
        if let [u, v] = ids[..] {
            edges.push((line, u, v));
        }
    }
    let n = match host {
        Some(h) => {
            if let Some(missing) = seen_in_tree.iter().position(|&s| !s) {
                if h.graph.order() > 1 || !edges.is_empty() {
                    return parse_err(1, format!("tree does not mention vertex {:?}", h.label(missing)));
                }
            }
            h.graph.order()
        }
        None => labels.len(),
    };
    if n == 0 {
        return parse_err(1, "no vertices");
    }
    Ok((n, edges, labels))
}

/// Renders a graph on `labels` in the chosen format.
pub fn write_graph(g: &Graph, labels: &[String], format: Format) -> String {
    write_edges(g.order(), g.edges(), labels, format)
}

/// Renders a subtree (usually spanning) as a graph file on the host labels.
pub fn write_tree(t: &SubtreeOfGraph, labels: &[String], format: Format) -> String {
    write_edges(t.host_order(), t.edges().iter().copied(), labels, format)
}

fn write_edges(n: usize, edges: impl Iterator<Item = (usize, usize)>, labels: &[String], format: Format) -> String {
    let edges: Vec<(usize, usize)> = edges.collect();
    let mut out = String::new();
    match format {
        Format::Pace => {
            writeln!(out, "p tw {n} {}", edges.len()).unwrap();
            for (u, v) in edges {
                writeln!(out, "{} {}", u + 1, v + 1).unwrap();
            }
        }
        Format::Edgelist => {
            let mut touched = vec![false; n];
            for &(u, v) in &edges {
                touched[u] = true;
                touched[v] = true;
                writeln!(out, "{} {}", labels[u], labels[v]).unwrap();
            }
            for v in (0..n).filter(|&v| !touched[v]) {
                writeln!(out, "{}", labels[v]).unwrap();
            }
        }
    }
    out
}

/// Graphviz rendering of a tree with host labels.
pub fn write_dot(t: &SubtreeOfGraph, labels: &[String]) -> String {
    let mut out = String::from("graph spanner {\n");
    for &v in t.vertices() {
        writeln!(out, "  {v} [label={:?}];", labels[v]).unwrap();
    }
    for &(u, v) in t.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
