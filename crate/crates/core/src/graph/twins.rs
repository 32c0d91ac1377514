use super::{Graph, ListColoringInstance};
use crate::colorset::ColorSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwinKind {
    /// `N[u] = N[v]` for every pair in the class.
    True,
    /// `N(u) = N(v)` for every pair in the class.
    False,
    Singleton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinClass {
    pub kind: TwinKind,
    /// Sorted; the first member is the representative.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    /// Ordered by representative.
    pub classes: Vec<TwinClass>,
}

impl TwinPartition {
    pub fn class_of(&self) -> Vec<usize> {
        let n = self.classes.iter().map(|c| c.members.len()).sum();
        let mut of = vec![usize::MAX; n];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in &c.members {
                of[v] = i;
            }
        }
        of
    }
}

/// Twin partition of `g`.
pub fn twin_classes(g: &Graph) -> TwinPartition {
    partition(g, None)
}

/// Twin partition restricted to vertices sharing the same list.
pub fn twin_classes_listed(inst: &ListColoringInstance) -> TwinPartition {
    partition(&inst.graph, Some(&inst.lists))
}

fn partition(g: &Graph, lists: Option<&[ColorSet]>) -> TwinPartition {
    let n = g.vertex_count();
    let key = |v: usize| lists.map(|l| l[v].bits()).unwrap_or(0);

    // Sort by an order-independent fingerprint of the neighbourhood, then
    // split runs of equal fingerprints by exact comparison.
    let mut open = Vec::with_capacity(n);
    let mut closed = Vec::with_capacity(n);
    for v in 0..n {
        let h = g.neighbors(v).iter().fold(0u64, |h, &w| h.wrapping_add(mix(w)));
        open.push((key(v), h, v));
        closed.push((key(v), h.wrapping_add(mix(v)), v));
    }
    let open = groups(open, |a, b| g.neighbors(a) == g.neighbors(b));
    let closed = groups(closed, |a, b| same_closed(g, a, b));

    let mut kind = vec![TwinKind::Singleton; n];
    let mut rep = (0..n).collect::<Vec<_>>();
    for group in &closed {
        for &v in group {
            kind[v] = TwinKind::True;
            rep[v] = group[0];
        }
    }
    for group in &open {
        for &v in group {
            // A vertex cannot have both a true twin and a false twin.
            assert_eq!(
                kind[v],
                TwinKind::Singleton,
                "vertex {} has both true and false twins",
                v + 1
            );
            kind[v] = TwinKind::False;
            rep[v] = group[0];
        }
    }

    let mut by_rep: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        by_rep[rep[v]].push(v);
    }
    let classes = by_rep
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|members| TwinClass {
            kind: kind[members[0]],
            members,
        })
        .collect();
    TwinPartition { classes }
}

fn mix(v: usize) -> u64 {
    let mut x = (v as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Classes of size at least two, each sorted.
fn groups(mut keys: Vec<(u32, u64, usize)>, same: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    keys.sort_unstable();
    let mut out = Vec::new();
    for run in keys.chunk_by(|a, b| (a.0, a.1) == (b.0, b.1)).filter(|r| r.len() > 1) {
        let mut split: Vec<Vec<usize>> = Vec::new();
        for &(_, _, v) in run {
            match split.iter_mut().find(|c| same(c[0], v)) {
                Some(c) => c.push(v),
                None => split.push(vec![v]),
            }
        }
        out.extend(split.into_iter().filter(|c| c.len() > 1));
    }
    out
}

/// `N[u] = N[v]`.
fn same_closed(g: &Graph, u: usize, v: usize) -> bool {
    g.degree(u) == g.degree(v)
        && g.has_edge(u, v)
        && g.neighbors(u).iter().all(|&w| w == v || g.has_edge(v, w))
}

/// Deletes all but the lowest-indexed vertex of every false-twin class.
pub fn remove_false_twins(g: &Graph) -> Graph {
    let keep = false_twin_survivors(&twin_classes(g), g.vertex_count());
    g.induced(&keep)
}

/// List-aware variant: only twins with equal lists are merged. Returns the
/// reduced instance and, for each surviving vertex, its original index.
pub fn remove_false_twins_listed(inst: &ListColoringInstance) -> (ListColoringInstance, Vec<usize>) {
    let keep = false_twin_survivors(&twin_classes_listed(inst), inst.graph.vertex_count());
    let reduced = ListColoringInstance {
        graph: inst.graph.induced(&keep),
        k: inst.k,
        lists: keep.iter().map(|&v| inst.lists[v]).collect(),
    };
    (reduced, keep)
}

fn false_twin_survivors(p: &TwinPartition, n: usize) -> Vec<usize> {
    let mut drop = vec![false; n];
    for c in p.classes.iter().filter(|c| c.kind == TwinKind::False) {
        for &v in &c.members[1..] {
            drop[v] = true;
        }
    }
    (0..n).filter(|&v| !drop[v]).collect()
}

/// The twin quotient `G^t` together with true-twin demands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    /// Size of the true-twin class each quotient vertex stands for.
    pub demand: Vec<u32>,
    /// Input vertex -> quotient vertex.
    pub class_map: Vec<usize>,
    /// Per quotient vertex list, when contracting a list instance.
    pub lists: Option<Vec<ColorSet>>,
}

/// Contracts each true-twin class to its lowest-indexed member.
pub fn contract_true_twins(g: &Graph) -> Quotient {
    contract(g, &twin_classes(g), None)
}

pub fn contract_true_twins_listed(inst: &ListColoringInstance) -> Quotient {
    contract(&inst.graph, &twin_classes_listed(inst), Some(&inst.lists))
}

fn contract(g: &Graph, p: &TwinPartition, lists: Option<&[ColorSet]>) -> Quotient {
    let n = g.vertex_count();
    let mut class_map = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut demand = Vec::new();
    for c in &p.classes {
        let q = reps.len();
        if c.kind == TwinKind::True {
            for &v in &c.members {
                class_map[v] = q;
            }
            demand.push(c.members.len() as u32);
            reps.push(c.members[0]);
        } else {
            // Non-true classes stay expanded.
            for (i, &v) in c.members.iter().enumerate() {
                class_map[v] = q + i;
                demand.push(1);
                reps.push(v);
            }
        }
    }
    // Quotient vertices ordered by representative index.
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| reps[i]);
    let mut renum = vec![0; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        renum[old] = new;
    }
    let class_map: Vec<usize> = class_map.iter().map(|&q| renum[q]).collect();
    let reps_sorted: Vec<usize> = order.iter().map(|&i| reps[i]).collect();
    let demand: Vec<u32> = order.iter().map(|&i| demand[i]).collect();
    let graph = g.induced(&reps_sorted);
    Quotient {
        graph,
        demand,
        class_map,
        lists: lists.map(|l| reps_sorted.iter().map(|&v| l[v]).collect()),
    }
}

/// False-twin removal followed by true-twin contraction, with the composed
/// vertex map (`None` for deleted false twins).
#[derive(Clone, Debug)]
pub struct ModularReduction {
    pub quotient: Quotient,
    pub original_to_quotient: Vec<Option<usize>>,
}

impl ModularReduction {
    pub fn of_graph(g: &Graph) -> Self {
        let keep = false_twin_survivors(&twin_classes(g), g.vertex_count());
        let reduced = g.induced(&keep);
        let quotient = contract_true_twins(&reduced);
        Self::compose(g.vertex_count(), &keep, quotient)
    }

    pub fn of_instance(inst: &ListColoringInstance) -> Self {
        let (reduced, keep) = remove_false_twins_listed(inst);
        let quotient = contract_true_twins_listed(&reduced);
        Self::compose(inst.graph.vertex_count(), &keep, quotient)
    }

    fn compose(n: usize, keep: &[usize], quotient: Quotient) -> Self {
        let mut original_to_quotient = vec![None; n];
        for (i, &v) in keep.iter().enumerate() {
            original_to_quotient[v] = Some(quotient.class_map[i]);
        }
        ModularReduction {
            quotient,
            original_to_quotient,
        }
    }
}
