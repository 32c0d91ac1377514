use std::collections::BTreeMap;

use super::{evaluate_with, CwExpr, Node, NodeId};

/// Live labels of every node: a label is live at `t` when some vertex carrying
/// it at `t` still has an edge that is created above `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Liveness {
    live: Vec<Vec<u32>>,
}

impl Liveness {
    /// Live labels at `node`, increasing.
    pub fn at(&self, node: NodeId) -> &[u32] {
        &self.live[node]
    }

    pub fn is_live(&self, node: NodeId, label: u32) -> bool {
        self.live[node].binary_search(&label).is_ok()
    }

    /// Largest number of simultaneously live labels.
    pub fn max_live(&self) -> usize {
        self.live.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn annotate_liveness(e: &CwExpr) -> Liveness {
    let n = e.vertex_count();
    // Topmost join creating an edge at each vertex, and the vertex's label there.
    let mut last: Vec<Option<(NodeId, u32)>> = vec![None; n];
    evaluate_with(e, |id, (u, a), (v, b)| {
        last[u] = Some((id, a));
        last[v] = Some((id, b));
    });
    let mut dying: BTreeMap<NodeId, Vec<u32>> = BTreeMap::new();
    for &(id, label) in last.iter().flatten() {
        dying.entry(id).or_default().push(label);
    }

    let mut live = Vec::with_capacity(e.len());
    let mut stack: Vec<BTreeMap<u32, usize>> = Vec::new();
    let mut next_vertex = 0;
    for (id, node) in e.nodes().iter().enumerate() {
        match *node {
            Node::Intro(l) => {
                let mut m = BTreeMap::new();
                if last[next_vertex].is_some() {
                    m.insert(l, 1);
                }
                next_vertex += 1;
                stack.push(m);
            }
            Node::Union(..) => {
                let mut b = stack.pop().unwrap();
                let mut a = stack.pop().unwrap();
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                for (l, c) in b {
                    *a.entry(l).or_default() += c;
                }
                stack.push(a);
            }
            Node::Rename { from, to, .. } => {
                let m = stack.last_mut().unwrap();
                if let Some(c) = m.remove(&from) {
                    *m.entry(to).or_default() += c;
                }
            }
            Node::Join { .. } => {
                let m = stack.last_mut().unwrap();
                for l in dying.remove(&id).unwrap_or_default() {
                    let c = m.get_mut(&l).expect("dying vertex has a live label");
                    *c -= 1;
                    if *c == 0 {
                        m.remove(&l);
                    }
                }
            }
        }
        live.push(stack.last().unwrap().keys().copied().collect());
    }
    debug_assert!(live.last().is_none_or(|r: &Vec<u32>| r.is_empty()));
    Liveness { live }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn liveness_examples() {
        let e = parse_expr("(join 1 2 (union (intro 1) (intro 2)))").unwrap();
        let l = annotate_liveness(&e);
        assert_eq!(l.at(2), &[1, 2]);
        assert_eq!(l.at(3), &[] as &[u32]);

        let e = parse_expr("(join 1 2 (join 1 3 (join 2 3 (union (intro 1) (union (intro 2) (intro 3))))))")
            .unwrap();
        let l = annotate_liveness(&e);
        assert_eq!(l.at(4), &[1, 2, 3]);
        assert_eq!(l.at(e.root()), &[] as &[u32]);
        // After join 2 3, label 3 still needs join 1 3.
        assert_eq!(l.at(5), &[1, 2, 3]);
        assert_eq!(l.at(6), &[1, 2]);

        let e = parse_expr("(union (intro 1) (intro 1))").unwrap();
        let l = annotate_liveness(&e);
        assert_eq!(l.max_live(), 0);
    }

    #[test]
    fn finished_vertices_do_not_keep_labels_live() {
        // Vertex 1 is finished after the first join while vertex 2 still
        // needs `join 2 4`. The second `join 1 2` only adds the edge of the
        // new vertex 3.
        let e = parse_expr(
            "(join 2 4 (union (join 1 2 (union (join 1 2 (union (intro 1) (intro 2))) (intro 1))) (intro 4)))",
        )
        .unwrap();
        let l = annotate_liveness(&e);
        // 0 intro, 1 intro, 2 union, 3 join, 4 intro, 5 union, 6 join, ...
        assert_eq!(l.at(3), &[2]);
        assert_eq!(l.at(5), &[1, 2]);
        // Vertex 2 (label 2) now waits for `join 2 4`.
        assert_eq!(l.at(6), &[2]);
        assert_eq!(l.at(e.root()), &[] as &[u32]);
    }
}
