use super::td::TreeDecomposition;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceNode {
    Leaf,
    Introduce { v: usize, child: usize },
    Forget { v: usize, child: usize },
    Join { left: usize, right: usize },
}

/// Every node comes after its children; the root is last and has an empty bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub bags: Vec<Vec<usize>>,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    /// Forgets `from \ to`, then introduces `to \ from`, both in increasing order.
    fn transition(&mut self, mut cur: usize, to: &[usize]) -> usize {
        let from = self.bags[cur].clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&u| u != v);
            cur = self.push(NiceNode::Forget { v, child: cur }, bag.clone());
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            let p = bag.binary_search(&v).unwrap_err();
            bag.insert(p, v);
            cur = self.push(NiceNode::Introduce { v, child: cur }, bag.clone());
        }
        cur
    }
}

/// Converts a (valid) decomposition rooted at its first bag into a nice one of
/// the same width.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let mut out = NiceTreeDecomposition {
        nodes: Vec::new(),
        bags: Vec::new(),
    };
    if td.bags.is_empty() {
        out.push(NiceNode::Leaf, vec![]);
        return Ok(out);
    }
    let adj = td.adjacency()?;
    // Iterative post-order over the rooted bag tree.
    let mut parent = vec![usize::MAX; td.bags.len()];
    let mut order = Vec::with_capacity(td.bags.len());
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(b) = stack.pop() {
        order.push(b);
        for &c in &adj[b] {
            if parent[c] == usize::MAX {
                parent[c] = b;
                stack.push(c);
            }
        }
    }
    let mut done: Vec<Option<usize>> = vec![None; td.bags.len()];
    for &b in order.iter().rev() {
        let bag = &td.bags[b];
        let children: Vec<usize> = adj[b].iter().copied().filter(|&c| c != b && parent[c] == b).collect();
        let mut tops: Vec<usize> = children
            .iter()
            .map(|&c| {
                let top = done[c].expect("children are processed first");
                out.transition(top, bag)
            })
            .collect();
        if tops.is_empty() {
            let leaf = out.push(NiceNode::Leaf, vec![]);
            tops.push(out.transition(leaf, bag));
        }
        let mut acc = tops[0];
        for &t in &tops[1..] {
            acc = out.push(NiceNode::Join { left: acc, right: t }, bag.clone());
        }
        done[b] = Some(acc);
    }
    let top = done[0].unwrap();
    out.transition(top, &[]);
    Ok(out)
}
