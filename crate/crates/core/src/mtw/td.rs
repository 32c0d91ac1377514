use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, ParseError, Result};
use crate::graph::dimacs::{parse_num, tokens};
use crate::graph::Graph;

/// A tree decomposition: sorted bags of 0-based vertices and tree edges
/// between 0-based bag indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Number of vertices of the decomposed graph.
    pub n: usize,
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks that the bags form a tree and satisfy vertex coverage, edge
    /// coverage and connectivity for `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::Decomposition(m));
        if self.n != g.vertex_count() {
            return bad(format!("decomposition is for {} vertices, graph has {}", self.n, g.vertex_count()));
        }
        let nb = self.bags.len();
        if nb == 0 {
            return if self.n == 0 { Ok(()) } else { bad("no bags".into()) };
        }
        for (i, b) in self.bags.iter().enumerate() {
            if let Some(&v) = b.iter().find(|&&v| v >= self.n) {
                return bad(format!("bag {} contains vertex {} > {}", i + 1, v + 1, self.n));
            }
            if b.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("bag {} is not a sorted set", i + 1));
            }
        }
        // Tree: nb - 1 edges and connected.
        if self.edges.len() != nb - 1 {
            return bad(format!("{} bags need {} tree edges, found {}", nb, nb - 1, self.edges.len()));
        }
        let adj = self.adjacency()?;
        let mut seen = vec![false; nb];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(b) = stack.pop() {
            for &c in &adj[b] {
                if !std::mem::replace(&mut seen[c], true) {
                    stack.push(c);
                }
            }
        }
        if let Some(b) = seen.iter().position(|s| !s) {
            return bad(format!("bag {} is not connected to bag 1", b + 1));
        }
        // Vertex and edge coverage.
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                holders[v].push(i);
            }
        }
        if let Some(v) = holders.iter().position(Vec::is_empty) {
            return bad(format!("vertex {} is in no bag", v + 1));
        }
        for (u, v) in g.edges() {
            // Scan the endpoint that sits in fewer bags.
            let (u, v) = if holders[u].len() <= holders[v].len() { (u, v) } else { (v, u) };
            let covered = holders[u]
                .iter()
                .any(|&b| self.bags[b].binary_search(&v).is_ok());
            if !covered {
                return bad(format!("edge ({}, {}) is in no bag", u + 1, v + 1));
            }
        }
        // Connectivity of each vertex's bags.
        let mut mark = vec![usize::MAX; nb];
        let mut visited = vec![usize::MAX; nb];
        for (v, hs) in holders.iter().enumerate() {
            for &b in hs {
                mark[b] = v;
            }
            let mut reached = 1;
            let mut stack = vec![hs[0]];
            visited[hs[0]] = v;
            while let Some(b) = stack.pop() {
                for &c in &adj[b] {
                    if mark[c] == v && std::mem::replace(&mut visited[c], v) != v {
                        reached += 1;
                        stack.push(c);
                    }
                }
            }
            if reached != hs.len() {
                return bad(format!("bags containing vertex {} are not connected", v + 1));
            }
        }
        Ok(())
    }

    pub fn adjacency(&self) -> Result<Vec<Vec<usize>>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a >= self.bags.len() || b >= self.bags.len() || a == b {
                return Err(Error::Decomposition(format!("invalid tree edge ({}, {})", a + 1, b + 1)));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(adj)
    }

    /// Replaces each vertex `v` by `map[v]`, dropping vertices mapped to `None`.
    pub fn mapped(&self, map: &[Option<usize>], n: usize) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| {
                let s: BTreeSet<usize> = b.iter().filter_map(|&v| map[v]).collect();
                s.into_iter().collect()
            })
            .collect();
        TreeDecomposition {
            n,
            bags,
            edges: self.edges.clone(),
        }
    }

    /// PACE 2017 `.td` text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "s td {} {} {}", self.bags.len(), self.width() + 1, self.n).unwrap();
        for (i, b) in self.bags.iter().enumerate() {
            write!(s, "b {}", i + 1).unwrap();
            for v in b {
                write!(s, " {}", v + 1).unwrap();
            }
            s.push('\n');
        }
        for &(a, b) in &self.edges {
            writeln!(s, "{} {}", a + 1, b + 1).unwrap();
        }
        s
    }
}

/// Parses PACE 2017 `.td` text and validates it against `g`.
pub fn parse_td(text: &str, g: &Graph) -> Result<TreeDecomposition> {
    let td = parse_td_unchecked(text)?;
    td.validate(g)?;
    Ok(td)
}

/// Parses PACE 2017 `.td` text without checking the decomposition axioms.
pub fn parse_td_unchecked(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim_end();
        let eol = line.len() + 1;
        let mut toks = tokens(line);
        let Some((col, head)) = toks.clone().next() else { continue };
        match head {
            "c" => continue,
            "s" => {
                toks.next();
                if header.is_some() {
                    return Err(ParseError::new(ln, col, "duplicate solution line").into());
                }
                match toks.next() {
                    Some((_, "td")) => {}
                    Some((c, t)) => return Err(ParseError::new(ln, c, format!("expected `td`, found `{t}`")).into()),
                    None => return Err(ParseError::new(ln, eol, "expected `td`").into()),
                }
                let nb: usize = parse_num(toks.next(), ln, eol, "bag count")?;
                let size: usize = parse_num(toks.next(), ln, eol, "maximum bag size")?;
                let n: usize = parse_num(toks.next(), ln, eol, "vertex count")?;
                bags = vec![None; nb];
                header = Some((nb, size, n));
            }
            "b" => {
                toks.next();
                let Some((nb, size, n)) = header else {
                    return Err(ParseError::new(ln, col, "bag before solution line").into());
                };
                let icol = toks.clone().next().map_or(eol, |t| t.0);
                let id: usize = parse_num(toks.next(), ln, eol, "bag id")?;
                if id == 0 || id > nb {
                    return Err(ParseError::new(ln, icol, format!("bag id {id} outside 1..={nb}")).into());
                }
                if bags[id - 1].is_some() {
                    return Err(ParseError::new(ln, icol, format!("bag {id} defined twice")).into());
                }
                let mut bag = BTreeSet::new();
                for (c, t) in toks {
                    let v: usize = parse_num(Some((c, t)), ln, eol, "vertex")?;
                    if v == 0 || v > n {
                        return Err(ParseError::new(ln, c, format!("vertex {v} outside 1..={n}")).into());
                    }
                    bag.insert(v - 1);
                }
                if bag.len() > size {
                    return Err(ParseError::new(
                        ln,
                        col,
                        format!("bag {id} has {} vertices, more than the declared {size}", bag.len()),
                    )
                    .into());
                }
                bags[id - 1] = Some(bag.into_iter().collect());
            }
            _ => {
                let Some((nb, _, _)) = header else {
                    return Err(ParseError::new(ln, col, "tree edge before solution line").into());
                };
                let acol = col;
                let a: usize = parse_num(toks.next(), ln, eol, "bag id")?;
                let bcol = toks.clone().next().map_or(eol, |t| t.0);
                let b: usize = parse_num(toks.next(), ln, eol, "bag id")?;
                for (x, c) in [(a, acol), (b, bcol)] {
                    if x == 0 || x > nb {
                        return Err(ParseError::new(ln, c, format!("bag id {x} outside 1..={nb}")).into());
                    }
                }
                if let Some((c, _)) = toks.next() {
                    return Err(ParseError::new(ln, c, "unexpected token after tree edge").into());
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, _, n) = header.ok_or_else(|| ParseError::new(1, 1, "missing solution line `s td ...`"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Decomposition(format!("bag {} is never defined", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition { n, bags, edges })
}

/// Decomposition from a min-fill elimination ordering (ties: smaller degree,
/// then smaller index).
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition {
            n,
            bags: vec![vec![]],
            edges: vec![],
        };
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bag_of = vec![0; n];
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let fill = |v: usize| -> usize {
            let ns: Vec<usize> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &a) in ns.iter().enumerate() {
                for &b in &ns[i + 1..] {
                    if !adj[a].contains(&b) {
                        missing += 1;
                    }
                }
            }
            missing
        };
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill(v), adj[v].len(), v))
            .unwrap();
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &ns {
            adj[a].remove(&v);
        }
        alive[v] = false;
        let mut bag = ns.clone();
        bag.push(v);
        bag.sort_unstable();
        bag_of[v] = bags.len();
        bags.push(bag);
        order.push((v, ns));
    }
    // Each bag attaches to the bag of its earliest-eliminated later neighbour;
    // bags without one (component roots) are chained to the last bag.
    let mut position = vec![0; n];
    for (i, (v, _)) in order.iter().enumerate() {
        position[*v] = i;
    }
    let last = bags.len() - 1;
    let mut edges = Vec::new();
    for (i, (_, ns)) in order.iter().enumerate() {
        if i == last {
            continue;
        }
        match ns.iter().min_by_key(|&&u| position[u]) {
            Some(&u) => edges.push((i, bag_of[u])),
            None => edges.push((i, last)),
        }
    }
    TreeDecomposition { n, bags, edges }
}
