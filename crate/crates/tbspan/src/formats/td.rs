//! PACE tree decompositions: `s td <bags> <width> <n>`, then
//! `b <id> <v>...` for every bag and one `a b` line per host-tree edge, all
//! 1-based. The width field is the largest bag size.

use std::fmt::Write;

use tbspan_core::{Graph, TreeDecomposition};

use super::{content_lines, parse_err, parse_usize, ParseError};

pub fn parse_td(text: &str) -> Result<TreeDecomposition, ParseError> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return parse_err(1, "empty decomposition file");
    };
    let ["s", "td", bags, width, n] = header.as_slice() else {
        return parse_err(hline, "expected `s td <bags> <width> <n>`");
    };
    let count = parse_usize(hline, bags, "bag count")?;
    let width = parse_usize(hline, width, "width")?;
    let n = parse_usize(hline, n, "vertex count")?;
    if count == 0 {
        return parse_err(hline, "a decomposition needs a bag");
    }
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; count];
    let mut edges = Vec::with_capacity(count - 1);
    for (line, tokens) in lines {
        if tokens[0] == "b" {
            let Some(id) = tokens.get(1) else {
                return parse_err(line, "bag line without an id");
            };
            let id = parse_usize(line, id, "bag id")?;
            if id == 0 || id > count {
                return parse_err(line, format!("bag id {id} outside 1..={count}"));
            }
            if bags[id - 1].is_some() {
                return parse_err(line, format!("bag {id} listed twice"));
            }
            let mut bag = Vec::with_capacity(tokens.len() - 2);
            for t in &tokens[2..] {
                let v = parse_usize(line, t, "vertex id")?;
                if v == 0 || v > n {
                    return parse_err(line, format!("vertex id {v} outside 1..={n}"));
                }
                bag.push(v - 1);
            }
            if bag.len() > width {
                return parse_err(line, format!("bag {id} has {} vertices, header width is {width}", bag.len()));
            }
            bags[id - 1] = Some(bag);
        } else {
            let [a, b] = tokens.as_slice() else {
                return parse_err(line, "expected `b ...` or a host edge `a b`");
            };
            let a = parse_usize(line, a, "bag id")?;
            let b = parse_usize(line, b, "bag id")?;
            if a == 0 || a > count || b == 0 || b > count {
                return parse_err(line, format!("host edge {a}-{b} names a bag outside 1..={count}"));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags: Vec<Vec<usize>> = match bags.iter().position(Option::is_none) {
        Some(missing) => return parse_err(hline, format!("bag {} is never listed", missing + 1)),
        None => bags.into_iter().flatten().collect(),
    };
    let host = Graph::new(count, edges).or_else(|e| parse_err(hline, format!("host tree: {e}")))?;
    TreeDecomposition::new(host, bags, n).or_else(|e| parse_err(hline, e.to_string()))
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "s td {} {} {}", td.node_count(), td.max_bag_size(), td.graph_order()).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for (a, b) in td.host().edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}
