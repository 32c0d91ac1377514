//! List-coloring gadgets (weak edges, implications, OR) and the two ways of
//! trading lists for extra vertices.

use std::collections::BTreeMap;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::expr::{CwBuilder, CwExpr, Node, NodeId, MAX_LABEL};
use crate::graph::{Graph, ListColoringInstance};

pub type GadgetId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    WeakEdge { c1: u32, c2: u32 },
    Implication { c1: u32, c2: u32 },
    Or,
}

/// Where a gadget was placed. `internal` vertices only touch each other and
/// the `endpoints`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub kind: GadgetKind,
    pub endpoints: Vec<usize>,
    pub internal: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct InstanceBuilder {
    k: u32,
    graph: Graph,
    lists: Vec<ColorSet>,
    terminals: BTreeMap<String, usize>,
    placements: Vec<Placement>,
}

impl InstanceBuilder {
    pub fn new(k: u32) -> Self {
        InstanceBuilder {
            k,
            graph: Graph::new(0),
            lists: Vec::new(),
            terminals: BTreeMap::new(),
            placements: Vec::new(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn add_vertex(&mut self, list: ColorSet) -> usize {
        self.lists.push(list);
        self.graph.add_vertex()
    }

    /// A vertex with the full palette, reachable by name.
    pub fn add_terminal(&mut self, name: &str) -> usize {
        let v = self.add_vertex(ColorSet::full(self.k));
        self.terminals.insert(name.to_string(), v);
        v
    }

    pub fn terminal(&self, name: &str) -> Option<usize> {
        self.terminals.get(name).copied()
    }

    pub fn set_list(&mut self, v: usize, list: ColorSet) {
        self.lists[v] = list;
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.graph.add_edge(u, v);
    }

    pub fn finish(self) -> Result<ListColoringInstance> {
        ListColoringInstance::new(self.graph, self.k, self.lists)
    }

    fn check_colors(&self, what: &str, u1: usize, u2: usize, c1: u32, c2: u32) -> Result<()> {
        if self.k < 3 {
            return Err(Error::Gadget(format!("{what} needs k >= 3, got k = {}", self.k)));
        }
        for c in [c1, c2] {
            if c == 0 || c > self.k {
                return Err(Error::Gadget(format!("{what}: color {c} outside 1..={}", self.k)));
            }
        }
        let n = self.vertex_count();
        if u1 == u2 || u1 >= n || u2 >= n {
            return Err(Error::Gadget(format!(
                "{what}: endpoints must be distinct existing vertices, got {} and {}",
                u1 + 1,
                u2 + 1
            )));
        }
        Ok(())
    }

    /// Three internal vertices on a path from `u1` to `u2`; returns them.
    fn weak_edge_path(&mut self, u1: usize, u2: usize, c1: u32, c2: u32) -> [usize; 3] {
        let smallest_not_in = |a: u32, b: u32| (1..).find(|&c| c != a && c != b).unwrap();
        let s = |cs: &[u32]| ColorSet::from_colors(cs.iter().copied());
        let c = smallest_not_in(c1, c2);
        let lists = if c1 != c2 {
            [s(&[c1, c2]), s(&[c2, c]), s(&[c2, c])]
        } else {
            let cc = smallest_not_in(c1, c);
            [s(&[c1, c]), s(&[c, cc]), s(&[c1, cc])]
        };
        let vs = lists.map(|l| self.add_vertex(l));
        self.add_edge(u1, vs[0]);
        self.add_edge(vs[0], vs[1]);
        self.add_edge(vs[1], vs[2]);
        self.add_edge(vs[2], u2);
        vs
    }
}

/// Forbids exactly the coloring `(c1, c2)` of `(u1, u2)`.
pub fn weak_edge(b: &mut InstanceBuilder, u1: usize, u2: usize, c1: u32, c2: u32) -> Result<GadgetId> {
    b.check_colors("weak edge", u1, u2, c1, c2)?;
    let internal = b.weak_edge_path(u1, u2, c1, c2).to_vec();
    b.placements.push(Placement {
        kind: GadgetKind::WeakEdge { c1, c2 },
        endpoints: vec![u1, u2],
        internal,
    });
    Ok(b.placements.len() - 1)
}

/// If `u1` gets `c1` then `u2` must get `c2`: one `(c1, c)` weak edge per `c != c2`.
pub fn implication(b: &mut InstanceBuilder, u1: usize, u2: usize, c1: u32, c2: u32) -> Result<GadgetId> {
    b.check_colors("implication", u1, u2, c1, c2)?;
    let mut internal = Vec::with_capacity(3 * (b.k as usize - 1));
    for c in (1..=b.k).filter(|&c| c != c2) {
        internal.extend(b.weak_edge_path(u1, u2, c1, c));
    }
    b.placements.push(Placement {
        kind: GadgetKind::Implication { c1, c2 },
        endpoints: vec![u1, u2],
        internal,
    });
    Ok(b.placements.len() - 1)
}

/// Forces color 1 on at least one vertex of the independent set `s`.
pub fn or_gadget(b: &mut InstanceBuilder, s: &[usize]) -> Result<GadgetId> {
    if b.k < 3 {
        return Err(Error::Gadget(format!("OR gadget needs k >= 3, got k = {}", b.k)));
    }
    if s.is_empty() {
        return Err(Error::Gadget("OR gadget on an empty set".into()));
    }
    for (i, &u) in s.iter().enumerate() {
        if u >= b.vertex_count() {
            return Err(Error::Gadget(format!("OR gadget: no vertex {}", u + 1)));
        }
        if let Some(&v) = s[i + 1..].iter().find(|&&v| v == u || b.graph.has_edge(u, v)) {
            return Err(Error::Gadget(format!(
                "OR gadget: vertices {} and {} are not an independent pair",
                u + 1,
                v + 1
            )));
        }
    }
    let l23 = ColorSet::from_colors([2, 3]);
    let mut internal = Vec::with_capacity(s.len() + 1);
    for i in 0..=s.len() {
        let list = match i {
            0 => ColorSet::singleton(2),
            i if i == s.len() => ColorSet::singleton(3),
            _ => l23,
        };
        internal.push(b.add_vertex(list));
    }
    for (i, &u) in s.iter().enumerate() {
        b.set_list(u, ColorSet::from_colors([1, 2, 3]));
        b.add_edge(internal[i], u);
        b.add_edge(u, internal[i + 1]);
    }
    b.placements.push(Placement {
        kind: GadgetKind::Or,
        endpoints: s.to_vec(),
        internal,
    });
    Ok(b.placements.len() - 1)
}

/// Adds a k-clique `c_1..c_k` (vertices `n..n+k`) and joins each vertex to
/// the `c_i` whose color is missing from its list.
pub fn delist_graph(inst: &ListColoringInstance) -> Graph {
    let n = inst.graph.vertex_count();
    let k = inst.k as usize;
    let mut g = inst.graph.clone();
    for _ in 0..k {
        g.add_vertex();
    }
    for i in 0..k {
        for j in i + 1..k {
            g.add_edge(n + i, n + j);
        }
    }
    for (v, l) in inst.lists.iter().enumerate() {
        for c in l.complement(inst.k).iter() {
            g.add_edge(v, n + c as usize - 1);
        }
    }
    g
}

/// An expression whose vertices (in leaf order) carry color lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedCwExpr {
    pub expr: CwExpr,
    pub lists: Vec<ColorSet>,
}

impl ListedCwExpr {
    pub fn new(expr: CwExpr, lists: Vec<ColorSet>, k: u32) -> Result<Self> {
        if lists.len() != expr.vertex_count() {
            return Err(Error::InvalidInstance(format!(
                "{} lists for {} vertices",
                lists.len(),
                expr.vertex_count()
            )));
        }
        if let Some((v, l)) = lists.iter().enumerate().find(|(_, l)| l.is_empty() || !l.within(k)) {
            return Err(Error::InvalidInstance(format!(
                "list {l} of vertex {} is not a nonempty subset of 1..={k}",
                v + 1
            )));
        }
        Ok(ListedCwExpr { expr, lists })
    }
}

/// Replaces each listed leaf by the leaf plus one fresh-labelled blocker per
/// missing color, then adds one vertex per fresh label and joins every pair of
/// fresh labels. Blockers of color `i` all carry label `max + i`.
pub fn delist_cw(e: &ListedCwExpr, k: u32) -> Result<CwExpr> {
    let base = e.expr.labels().into_iter().max().unwrap_or(0);
    if base as u64 + k as u64 > MAX_LABEL as u64 {
        return Err(Error::InvalidInstance(format!(
            "no room for {k} fresh labels above {base}"
        )));
    }
    let fresh = |c: u32| base + c;
    let mut b = CwBuilder::new();
    let mut ids: Vec<NodeId> = Vec::with_capacity(e.expr.len());
    let mut leaf = 0;
    for node in e.expr.nodes() {
        let id = match *node {
            Node::Intro(a) => {
                let list = e.lists[leaf];
                leaf += 1;
                let mut cur = b.intro(a);
                for c in list.complement(k).iter() {
                    let blocker = b.intro(fresh(c));
                    cur = b.union(cur, blocker);
                    cur = b.join(a, fresh(c), cur);
                }
                cur
            }
            Node::Union(l, r) => b.union(ids[l], ids[r]),
            Node::Rename { from, to, child } => b.rename(from, to, ids[child]),
            Node::Join { a, b: c, child } => b.join(a, c, ids[child]),
        };
        ids.push(id);
    }
    let mut cur = *ids.last().expect("nonempty expression");
    for c in 1..=k {
        let v = b.intro(fresh(c));
        cur = b.union(cur, v);
    }
    for i in 1..=k {
        for j in i + 1..=k {
            cur = b.join(fresh(i), fresh(j), cur);
        }
    }
    b.finish(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::evaluate;
    use crate::oracle::{brute_colorable, brute_list_colorable};

    fn cs(c: &[u32]) -> ColorSet {
        ColorSet::from_colors(c.iter().copied())
    }

    fn pair(k: u32) -> (InstanceBuilder, usize, usize) {
        let mut b = InstanceBuilder::new(k);
        let u1 = b.add_terminal("u1");
        let u2 = b.add_terminal("u2");
        (b, u1, u2)
    }

    #[test]
    fn weak_edge_lists() {
        let (mut b, u1, u2) = pair(3);
        let g = weak_edge(&mut b, u1, u2, 1, 2).unwrap();
        let p = &b.placements()[g];
        let lists: Vec<_> = p.internal.iter().map(|&v| b.lists()[v]).collect();
        assert_eq!(lists, vec![cs(&[1, 2]), cs(&[2, 3]), cs(&[2, 3])]);

        let (mut b, u1, u2) = pair(3);
        weak_edge(&mut b, u1, u2, 1, 1).unwrap();
        assert_eq!(&b.lists()[2..], &[cs(&[1, 2]), cs(&[2, 3]), cs(&[1, 3])]);

        let (mut b, u1, u2) = pair(4);
        weak_edge(&mut b, u1, u2, 2, 3).unwrap();
        assert_eq!(&b.lists()[2..], &[cs(&[2, 3]), cs(&[1, 3]), cs(&[1, 3])]);
        assert_eq!(b.graph().edge_count(), 4);

        let (mut b, u1, u2) = pair(2);
        assert!(matches!(weak_edge(&mut b, u1, u2, 1, 2), Err(Error::Gadget(_))));
    }

    #[test]
    fn implication_is_k_minus_one_weak_edges() {
        let (mut b, u1, u2) = pair(3);
        let g = implication(&mut b, u1, u2, 1, 2).unwrap();
        assert_eq!(b.placements()[g].internal.len(), 6);
        // Kinds (1,1) then (1,3).
        assert_eq!(&b.lists()[2..5], &[cs(&[1, 2]), cs(&[2, 3]), cs(&[1, 3])]);
        assert_eq!(&b.lists()[5..8], &[cs(&[1, 3]), cs(&[3, 2]), cs(&[3, 2])]);

        let (mut b, u1, u2) = pair(4);
        implication(&mut b, u1, u2, 2, 2).unwrap();
        assert_eq!(b.vertex_count(), 2 + 9);
        assert_eq!(b.lists()[2], cs(&[2, 1]));
        assert_eq!(b.lists()[5], cs(&[2, 3]));
        assert_eq!(b.lists()[8], cs(&[2, 4]));
    }

    #[test]
    fn or_gadget_shapes() {
        let mut b = InstanceBuilder::new(3);
        let s = b.add_vertex(ColorSet::full(3));
        or_gadget(&mut b, &[s]).unwrap();
        assert_eq!(b.lists(), &[cs(&[1, 2, 3]), cs(&[2]), cs(&[3])]);
        let inst = b.clone().finish().unwrap();
        for c in [2, 3] {
            let mut pinned = inst.clone();
            pinned.lists[s] = cs(&[c]);
            assert!(!brute_list_colorable(&pinned).unwrap());
        }
        assert!(or_gadget(&mut b, &[]).is_err());
        let t = b.add_vertex(ColorSet::full(3));
        b.add_edge(s, t);
        assert!(or_gadget(&mut b, &[s, t]).is_err());
        assert!(or_gadget(&mut InstanceBuilder::new(2), &[0]).is_err());
    }

    #[test]
    fn delist_graph_examples() {
        let one = |l: &[u32]| ListColoringInstance::new(Graph::new(1), 3, vec![cs(l)]).unwrap();
        let g = delist_graph(&one(&[1, 2]));
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.neighbors(0).iter().copied().collect::<Vec<_>>(), vec![3]);
        assert!(brute_colorable(&g, 3).unwrap());
        let g = delist_graph(&one(&[1]));
        assert_eq!(g.degree(0), 2);
        assert!(brute_colorable(&g, 3).unwrap());
        let tri = ListColoringInstance::new(Graph::complete(3), 3, vec![cs(&[1, 2]); 3]).unwrap();
        assert!(!brute_colorable(&delist_graph(&tri), 3).unwrap());
    }

    #[test]
    fn delist_cw_examples() {
        let mut b = CwBuilder::new();
        let r = b.intro(1);
        let e = b.finish(r).unwrap();
        let listed = ListedCwExpr::new(e.clone(), vec![cs(&[1, 2])], 3).unwrap();
        let d = delist_cw(&listed, 3).unwrap();
        assert_eq!(d.width(), 4);
        let g = evaluate(&d).graph;
        assert_eq!(g.vertex_count(), 5);
        assert!(brute_colorable(&g, 3).unwrap());

        // Full lists: the original graph plus a disjoint complete 3-partite part.
        let full = ListedCwExpr::new(e, vec![ColorSet::full(3)], 3).unwrap();
        let g = evaluate(&delist_cw(&full, 3).unwrap()).graph;
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.edge_count(), 3);
        assert!(ListedCwExpr::new(r_expr(), vec![], 3).is_err());
    }

    fn r_expr() -> CwExpr {
        let mut b = CwBuilder::new();
        let r = b.intro(2);
        b.finish(r).unwrap()
    }
}
