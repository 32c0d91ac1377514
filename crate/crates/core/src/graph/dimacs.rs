//! DIMACS `p edge` graphs and companion `l <v> <colors...>` list files.

use std::fmt::Write;

use super::{Graph, ListColoringInstance};
use crate::colorset::ColorSet;
use crate::error::{Error, ParseError, Result};

pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> + Clone {
    let base = line.as_ptr() as usize;
    line.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - base + 1, t))
}

pub(crate) fn parse_num<T: std::str::FromStr>(
    tok: Option<(usize, &str)>,
    line: usize,
    eol_col: usize,
    what: &str,
) -> std::result::Result<T, ParseError> {
    match tok {
        None => Err(ParseError::new(line, eol_col, format!("expected {what}"))),
        Some((col, t)) => t
            .parse()
            .map_err(|_| ParseError::new(line, col, format!("expected {what}, found `{t}`"))),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim_end();
        let eol = line.len() + 1;
        let mut toks = tokens(line);
        let Some((col, head)) = toks.next() else { continue };
        match head {
            "c" => continue,
            "p" => {
                if graph.is_some() {
                    return Err(ParseError::new(ln, col, "duplicate problem line").into());
                }
                match toks.next() {
                    Some((_, "edge")) | Some((_, "col")) => {}
                    Some((c, t)) => {
                        return Err(ParseError::new(ln, c, format!("expected `edge`, found `{t}`")).into())
                    }
                    None => return Err(ParseError::new(ln, eol, "expected `edge`").into()),
                }
                let n: usize = parse_num(toks.next(), ln, eol, "vertex count")?;
                declared_edges = parse_num(toks.next(), ln, eol, "edge count")?;
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| ParseError::new(ln, col, "edge before problem line"))?;
                let ucol = toks.clone().next().map(|t| t.0).unwrap_or(eol);
                let u: usize = parse_num(toks.next(), ln, eol, "vertex")?;
                let v: usize = parse_num(toks.next(), ln, eol, "vertex")?;
                let n = g.vertex_count();
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(ParseError::new(ln, ucol, format!("vertex out of range 1..={n}")).into());
                }
                if u == v {
                    return Err(ParseError::new(ln, ucol, format!("self-loop at vertex {u}")).into());
                }
                if !g.add_edge(u - 1, v - 1) {
                    return Err(ParseError::new(ln, ucol, format!("parallel edge {u}-{v}")).into());
                }
            }
            other => {
                return Err(ParseError::new(ln, col, format!("unexpected line type `{other}`")).into())
            }
        }
    }
    let g = graph.ok_or_else(|| ParseError::new(1, 1, "missing problem line `p edge <n> <m>`"))?;
    if g.edge_count() != declared_edges {
        return Err(Error::InvalidInstance(format!(
            "header declares {declared_edges} edges, found {}",
            g.edge_count()
        )));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

/// Applies `l <v> <c...>` lines over full default lists.
pub fn parse_lists(text: &str, n: usize, k: u32) -> Result<Vec<ColorSet>> {
    let mut lists = vec![ColorSet::full(k); n];
    let mut seen = vec![false; n];
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim_end();
        let eol = line.len() + 1;
        let mut toks = tokens(line);
        let Some((col, head)) = toks.next() else { continue };
        match head {
            "c" => continue,
            "l" => {
                let vcol = toks.clone().next().map(|t| t.0).unwrap_or(eol);
                let v: usize = parse_num(toks.next(), ln, eol, "vertex")?;
                if v == 0 || v > n {
                    return Err(ParseError::new(ln, vcol, format!("vertex out of range 1..={n}")).into());
                }
                if std::mem::replace(&mut seen[v - 1], true) {
                    return Err(ParseError::new(ln, vcol, format!("second list for vertex {v}")).into());
                }
                let mut set = ColorSet::EMPTY;
                for (c, t) in toks {
                    let color: u32 = t
                        .parse()
                        .map_err(|_| ParseError::new(ln, c, format!("expected color, found `{t}`")))?;
                    if color == 0 || color > k {
                        return Err(ParseError::new(ln, c, format!("color {color} outside 1..={k}")).into());
                    }
                    set.insert(color);
                }
                if set.is_empty() {
                    return Err(ParseError::new(ln, eol, "empty list").into());
                }
                lists[v - 1] = set;
            }
            other => {
                return Err(ParseError::new(ln, col, format!("unexpected line type `{other}`")).into())
            }
        }
    }
    Ok(lists)
}

/// One `l` line per vertex whose list is not the full palette.
pub fn write_lists(inst: &ListColoringInstance) -> String {
    let full = ColorSet::full(inst.k);
    let mut s = String::new();
    for (v, l) in inst.lists.iter().enumerate() {
        if *l != full {
            write!(s, "l {}", v + 1).unwrap();
            for c in l.iter() {
                write!(s, " {c}").unwrap();
            }
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write_round_trip() {
        let text = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_loops_parallel_and_range() {
        let err = parse_graph("p edge 2 1\ne 1 1\n").unwrap_err();
        assert!(err.to_string().contains("self-loop"), "{err}");
        let err = parse_graph("p edge 2 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(err.to_string().contains("parallel"), "{err}");
        let err = parse_graph("p edge 2 1\ne 1 3\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2"), "{err}");
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p edge 2 2\ne 1 2\n").is_err());
    }

    #[test]
    fn lists() {
        let l = parse_lists("c x\nl 2 1 3\n", 3, 3).unwrap();
        assert_eq!(l, vec![ColorSet::full(3), ColorSet::from_colors([1, 3]), ColorSet::full(3)]);
        assert!(parse_lists("l 1 4\n", 1, 3).is_err());
        assert!(parse_lists("l 1\n", 1, 3).is_err());
        let inst = ListColoringInstance::new(Graph::new(3), 3, l).unwrap();
        assert_eq!(write_lists(&inst), "l 2 1 3\n");
    }
}
