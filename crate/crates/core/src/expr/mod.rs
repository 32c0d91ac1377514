//! Clique-width expressions: an arena of nodes stored in post-order, so every
//! child precedes its parent, the left subtree precedes the right one and the
//! root is the last node. All traversals are iterative.

mod liveness;
mod parse;

pub use liveness::{annotate_liveness, Liveness};
pub use parse::parse_expr;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type NodeId = usize;

/// Largest label accepted by the parser and the builder.
pub const MAX_LABEL: u32 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Intro(u32),
    Union(NodeId, NodeId),
    /// Every vertex labelled `from` gets label `to`.
    Rename { from: u32, to: u32, child: NodeId },
    /// Adds all edges between labels `a` and `b`.
    Join { a: u32, b: u32, child: NodeId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwExpr {
    nodes: Vec<Node>,
}

impl CwExpr {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id]
    }

    pub fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Intro(_))).count()
    }

    /// Distinct labels, increasing.
    pub fn labels(&self) -> BTreeSet<u32> {
        let mut s = BTreeSet::new();
        for n in &self.nodes {
            match *n {
                Node::Intro(l) => {
                    s.insert(l);
                }
                Node::Union(..) => {}
                Node::Rename { from, to, .. } => {
                    s.insert(from);
                    s.insert(to);
                }
                Node::Join { a, b, .. } => {
                    s.insert(a);
                    s.insert(b);
                }
            }
        }
        s
    }

    /// Number of distinct labels appearing anywhere in the expression.
    pub fn width(&self) -> usize {
        self.labels().len()
    }

    /// Parent of every node; `None` for the root.
    pub fn parents(&self) -> Vec<Option<NodeId>> {
        let mut p = vec![None; self.nodes.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            match *n {
                Node::Intro(_) => {}
                Node::Union(l, r) => {
                    p[l] = Some(id);
                    p[r] = Some(id);
                }
                Node::Rename { child, .. } | Node::Join { child, .. } => p[child] = Some(id),
            }
        }
        p
    }

    /// Applies `f` to every label occurrence.
    pub fn map_labels(&self, f: impl Fn(u32) -> u32) -> Result<CwExpr> {
        let mut b = CwBuilder::new();
        for n in &self.nodes {
            match *n {
                Node::Intro(l) => b.intro(f(l)),
                Node::Union(l, r) => b.union(l, r),
                Node::Rename { from, to, child } => b.rename(f(from), f(to), child),
                Node::Join { a, b: c, child } => b.join(f(a), f(c), child),
            };
        }
        let root = self.root();
        b.finish(root)
    }

    /// Serializes as a single-line s-expression.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Item {
            Node(NodeId),
            Text(&'static str),
        }
        let mut stack = vec![Item::Node(self.root())];
        while let Some(item) = stack.pop() {
            match item {
                Item::Text(t) => f.write_str(t)?,
                Item::Node(id) => match self.nodes[id] {
                    Node::Intro(l) => write!(f, "(intro {l})")?,
                    Node::Union(l, r) => {
                        f.write_str("(union ")?;
                        stack.push(Item::Text(")"));
                        stack.push(Item::Node(r));
                        stack.push(Item::Text(" "));
                        stack.push(Item::Node(l));
                    }
                    Node::Rename { from, to, child } => {
                        write!(f, "(rename {from} {to} ")?;
                        stack.push(Item::Text(")"));
                        stack.push(Item::Node(child));
                    }
                    Node::Join { a, b, child } => {
                        write!(f, "(join {a} {b} ")?;
                        stack.push(Item::Text(")"));
                        stack.push(Item::Node(child));
                    }
                },
            }
        }
        Ok(())
    }
}

/// Builds expressions bottom-up in any order; `finish` checks that the nodes
/// below the root form a tree and stores them in canonical post-order.
#[derive(Clone, Debug, Default)]
pub struct CwBuilder {
    nodes: Vec<Node>,
}

impl CwBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intro(&mut self, label: u32) -> NodeId {
        self.push(Node::Intro(label))
    }

    pub fn union(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.push(Node::Union(left, right))
    }

    /// Folds `parts` left to right with unions.
    pub fn union_all(&mut self, parts: &[NodeId]) -> NodeId {
        let (&first, rest) = parts.split_first().expect("union of no parts");
        rest.iter().fold(first, |acc, &p| self.union(acc, p))
    }

    pub fn rename(&mut self, from: u32, to: u32, child: NodeId) -> NodeId {
        self.push(Node::Rename { from, to, child })
    }

    pub fn join(&mut self, a: u32, b: u32, child: NodeId) -> NodeId {
        self.push(Node::Join { a, b, child })
    }

    fn push(&mut self, n: Node) -> NodeId {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    pub fn finish(&self, root: NodeId) -> Result<CwExpr> {
        Ok(self.finish_with_leaves(root)?.0)
    }

    /// Like `finish`, also returning the builder ids of the `Intro` nodes in
    /// leaf order, so that entry `v` is the leaf that became vertex `v`.
    pub fn finish_with_leaves(&self, root: NodeId) -> Result<(CwExpr, Vec<NodeId>)> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if root >= self.nodes.len() {
            return bad(format!("root {root} does not exist"));
        }
        let check = |l: u32| (1..=MAX_LABEL).contains(&l);
        let mut used = vec![false; self.nodes.len()];
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        let mut out = Vec::new();
        let mut leaves = Vec::new();
        // (node, children already pushed)
        let mut stack = vec![(root, false)];
        used[root] = true;
        while let Some((id, expanded)) = stack.pop() {
            let n = self.nodes[id];
            if expanded {
                let m = |c: NodeId| new_id[c];
                let node = match n {
                    Node::Intro(l) => {
                        leaves.push(id);
                        Node::Intro(l)
                    }
                    Node::Union(l, r) => Node::Union(m(l), m(r)),
                    Node::Rename { from, to, child } => Node::Rename { from, to, child: m(child) },
                    Node::Join { a, b, child } => Node::Join { a, b, child: m(child) },
                };
                new_id[id] = out.len();
                out.push(node);
                continue;
            }
            let children: Vec<NodeId> = match n {
                Node::Intro(l) => {
                    if !check(l) {
                        return bad(format!("label {l} outside 1..={MAX_LABEL}"));
                    }
                    vec![]
                }
                Node::Union(l, r) => vec![l, r],
                Node::Rename { from: a, to: b, child } | Node::Join { a, b, child } => {
                    if !check(a) || !check(b) {
                        return bad(format!("label pair ({a}, {b}) outside 1..={MAX_LABEL}"));
                    }
                    if a == b {
                        return bad(format!("join/rename with equal labels {a}"));
                    }
                    vec![child]
                }
            };
            stack.push((id, true));
            for &c in children.iter().rev() {
                if c >= self.nodes.len() {
                    return bad(format!("child {c} does not exist"));
                }
                if std::mem::replace(&mut used[c], true) {
                    return bad(format!("node {c} used twice"));
                }
                stack.push((c, false));
            }
        }
        Ok((CwExpr { nodes: out }, leaves))
    }
}

/// A graph together with the final label of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u32>,
}

/// Per-node label classes during evaluation.
type Classes = BTreeMap<u32, Vec<usize>>;

pub(crate) fn merge_classes(mut a: Classes, mut b: Classes) -> Classes {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (l, mut vs) in b {
        let e = a.entry(l).or_default();
        if e.len() < vs.len() {
            std::mem::swap(e, &mut vs);
        }
        e.extend(vs);
    }
    a
}

pub(crate) fn rename_class(c: &mut Classes, from: u32, to: u32) {
    if let Some(vs) = c.remove(&from) {
        let e = c.entry(to).or_default();
        let mut vs = vs;
        if e.len() < vs.len() {
            std::mem::swap(e, &mut vs);
        }
        e.extend(vs);
    }
}

/// Evaluates the expression; vertices are numbered in leaf order.
pub fn evaluate(e: &CwExpr) -> LabeledGraph {
    evaluate_with(e, |_, _, _| {})
}

/// Evaluation with a callback `(join node, (u, label of u), (v, label of v))`
/// for every newly created edge.
pub(crate) fn evaluate_with(
    e: &CwExpr,
    mut on_edge: impl FnMut(NodeId, (usize, u32), (usize, u32)),
) -> LabeledGraph {
    let mut graph = Graph::new(e.vertex_count());
    let mut stack: Vec<Classes> = Vec::new();
    let mut next_vertex = 0;
    for (id, n) in e.nodes.iter().enumerate() {
        match *n {
            Node::Intro(l) => {
                stack.push(BTreeMap::from([(l, vec![next_vertex])]));
                next_vertex += 1;
            }
            Node::Union(..) => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(merge_classes(a, b));
            }
            Node::Rename { from, to, .. } => rename_class(stack.last_mut().unwrap(), from, to),
            Node::Join { a, b, .. } => {
                let c = stack.last().unwrap();
                if let (Some(xs), Some(ys)) = (c.get(&a), c.get(&b)) {
                    for &u in xs {
                        for &v in ys {
                            if graph.add_edge(u, v) {
                                on_edge(id, (u, a), (v, b));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut labels = vec![0; next_vertex];
    for (l, vs) in stack.pop().unwrap() {
        for v in vs {
            labels[v] = l;
        }
    }
    LabeledGraph { graph, labels }
}

/// Expression of width `n` that gives every vertex its own label.
pub fn expr_from_graph(g: &Graph) -> CwExpr {
    let n = g.vertex_count();
    assert!(n >= 1);
    let mut b = CwBuilder::new();
    let leaves: Vec<NodeId> = (0..n).map(|v| b.intro(v as u32 + 1)).collect();
    let mut root = b.union_all(&leaves);
    for (u, v) in g.edges() {
        root = b.join(u as u32 + 1, v as u32 + 1, root);
    }
    b.finish(root).unwrap()
}

/// Width-3 expression of the path `P_n` (vertices in path order).
pub fn path_expr(n: usize) -> CwExpr {
    let mut b = CwBuilder::new();
    // Label 1: finished interior, 2: current end, 3: new vertex.
    let mut root = b.intro(2);
    for _ in 1..n {
        let leaf = b.intro(3);
        root = b.union(root, leaf);
        root = b.join(2, 3, root);
        root = b.rename(2, 1, root);
        root = b.rename(3, 2, root);
    }
    b.finish(root).unwrap()
}

/// Width-4 expression of the cycle `C_n`, `n ≥ 3`.
pub fn cycle_expr(n: usize) -> CwExpr {
    assert!(n >= 3);
    // Label 1: first vertex, 2: current end, 3: new vertex, 4: finished interior.
    let mut b = CwBuilder::new();
    let mut root = b.intro(1);
    let second = b.intro(2);
    root = b.union(root, second);
    root = b.join(1, 2, root);
    for _ in 2..n {
        let leaf = b.intro(3);
        root = b.union(root, leaf);
        root = b.join(2, 3, root);
        root = b.rename(2, 4, root);
        root = b.rename(3, 2, root);
    }
    root = b.join(1, 2, root);
    b.finish(root).unwrap()
}

/// Expression of `K_n` of width 2.
pub fn complete_expr(n: usize) -> CwExpr {
    let mut b = CwBuilder::new();
    let mut root = b.intro(1);
    for _ in 1..n {
        let leaf = b.intro(2);
        root = b.union(root, leaf);
        root = b.join(1, 2, root);
        root = b.rename(2, 1, root);
    }
    b.finish(root).unwrap()
}
