//! Simple undirected graphs, list-coloring instances, twin classes and the
//! twin quotient used by the modular-treewidth solver.
//!
//! Vertices are 0-based indices internally; the text formats in [`dimacs`]
//! are 1-based.

pub mod dimacs;
mod twins;

pub use twins::{
    contract_true_twins, contract_true_twins_listed, remove_false_twins,
    remove_false_twins_listed, twin_classes, twin_classes_listed, ModularReduction, Quotient,
    TwinClass, TwinKind, TwinPartition,
};

use std::collections::BTreeSet;

use crate::colorset::{ColorSet, MAX_COLORS};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edges: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    /// Inserts `{u, v}`; returns false if the edge was already present.
    ///
    /// Panics on a self-loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        self.try_add_edge(u, v).expect("invalid edge")
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::InvalidInstance(format!(
                "edge ({}, {}) has an endpoint outside 1..={n}",
                u + 1,
                v + 1
            )));
        }
        if u == v {
            return Err(Error::InvalidInstance(format!("self-loop at vertex {}", u + 1)));
        }
        let fresh = self.adj[u].insert(v);
        if fresh {
            self.adj[v].insert(u);
            self.edges += 1;
        }
        Ok(fresh)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep` (sorted, distinct), renumbered in that order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`; `perm` must be a permutation.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.adj.len());
        let mut g = Graph::new(self.adj.len());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Vertices in a smallest-last (degeneracy) order, reversed so that each
    /// vertex has few neighbours placed before it.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut buckets: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
        let mut order = Vec::with_capacity(n);
        while let Some((_, v)) = buckets.pop_first() {
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    buckets.remove(&(deg[w], w));
                    deg[w] -= 1;
                    buckets.insert((deg[w], w));
                }
            }
        }
        order.reverse();
        order
    }
}

/// A graph with a color list per vertex; all lists are nonempty subsets of `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListColoringInstance {
    pub graph: Graph,
    pub k: u32,
    pub lists: Vec<ColorSet>,
}

impl ListColoringInstance {
    pub fn new(graph: Graph, k: u32, lists: Vec<ColorSet>) -> Result<Self> {
        let inst = ListColoringInstance { graph, k, lists };
        inst.validate()?;
        Ok(inst)
    }

    /// Every vertex gets the full palette.
    pub fn uniform(graph: Graph, k: u32) -> Self {
        let lists = vec![ColorSet::full(k); graph.vertex_count()];
        ListColoringInstance { graph, k, lists }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > MAX_COLORS {
            return Err(Error::ColorsOutOfRange {
                k: self.k,
                min: 1,
                max: MAX_COLORS,
            });
        }
        if self.lists.len() != self.graph.vertex_count() {
            return Err(Error::InvalidInstance(format!(
                "{} lists for {} vertices",
                self.lists.len(),
                self.graph.vertex_count()
            )));
        }
        for (v, l) in self.lists.iter().enumerate() {
            if l.is_empty() || !l.within(self.k) {
                return Err(Error::InvalidInstance(format!(
                    "list {l} of vertex {} is not a nonempty subset of 1..={}",
                    v + 1,
                    self.k
                )));
            }
        }
        Ok(())
    }

    pub fn has_full_lists(&self) -> bool {
        let full = ColorSet::full(self.k);
        self.lists.iter().all(|&l| l == full)
    }

    /// Renumbers vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut lists = vec![ColorSet::EMPTY; self.lists.len()];
        for (v, &l) in self.lists.iter().enumerate() {
            lists[perm[v]] = l;
        }
        ListColoringInstance {
            graph: self.graph.permuted(perm),
            k: self.k,
            lists,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_insertion_is_idempotent() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(0, 1));
        assert!(!g.add_edge(1, 0));
        assert_eq!(g.edge_count(), 1);
        assert!(g.try_add_edge(2, 2).is_err());
        assert!(g.try_add_edge(0, 3).is_err());
    }

    #[test]
    fn induced_and_permuted() {
        let g = Graph::cycle(4);
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let p = g.permuted(&[1, 2, 3, 0]);
        assert!(p.has_edge(1, 2) && p.has_edge(0, 1) && !p.has_edge(0, 2));
    }

    #[test]
    fn degeneracy_order_covers_all() {
        let g = Graph::complete(5);
        let mut o = g.degeneracy_order();
        o.sort();
        assert_eq!(o, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn list_validation() {
        let g = Graph::path(2);
        assert!(ListColoringInstance::new(g.clone(), 3, vec![ColorSet::EMPTY, ColorSet::full(3)]).is_err());
        assert!(ListColoringInstance::new(g.clone(), 3, vec![ColorSet::singleton(4), ColorSet::full(3)]).is_err());
        assert!(ListColoringInstance::new(g, 3, vec![ColorSet::singleton(1); 2]).is_ok());
    }
}
