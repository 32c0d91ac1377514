use cwcolor::expr::{annotate_liveness, evaluate, parse_expr, CwBuilder, CwExpr, Node};
use cwcolor::oracle::random_expr;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_expr() -> impl Strategy<Value = CwExpr> {
    (any::<u64>(), 1usize..=12, 2u32..=5).prop_map(|(seed, n, w)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_expr(&mut rng, n, w)
    })
}

/// The subtree rooted at `t` as a standalone expression, plus the number of
/// leaves preceding it.
fn subtree(e: &CwExpr, t: usize) -> (CwExpr, usize) {
    let mut size = vec![1usize; e.len()];
    for (id, n) in e.nodes().iter().enumerate() {
        size[id] = 1 + match *n {
            Node::Intro(_) => 0,
            Node::Union(l, r) => size[l] + size[r],
            Node::Rename { child, .. } | Node::Join { child, .. } => size[child],
        };
    }
    let start = t + 1 - size[t];
    let offset = e.nodes()[..start].iter().filter(|n| matches!(n, Node::Intro(_))).count();
    let mut b = CwBuilder::new();
    for n in &e.nodes()[start..=t] {
        match *n {
            Node::Intro(l) => b.intro(l),
            Node::Union(l, r) => b.union(l - start, r - start),
            Node::Rename { from, to, child } => b.rename(from, to, child - start),
            Node::Join { a, b: c, child } => b.join(a, c, child - start),
        };
    }
    (b.finish(t - start).unwrap(), offset)
}

/// Live labels by remaining-degree sums, recomputed from scratch per node.
fn naive_live(e: &CwExpr, t: usize) -> Vec<u32> {
    let g = evaluate(e).graph;
    let (sub, offset) = subtree(e, t);
    let gt = evaluate(&sub);
    let mut labels: Vec<u32> = gt.labels.clone();
    labels.sort_unstable();
    labels.dedup();
    labels
        .into_iter()
        .filter(|&l| {
            let members = (0..gt.labels.len()).filter(|&v| gt.labels[v] == l);
            let (full, part): (usize, usize) = members.fold((0, 0), |(a, b), v| {
                (a + g.degree(v + offset), b + gt.graph.degree(v))
            });
            full > part
        })
        .collect()
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(e in arb_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e.clone());
        let spaced = text.replace(' ', "\n  ").replace('(', "( ");
        prop_assert_eq!(parse_expr(&spaced).unwrap(), e);
    }

    #[test]
    fn liveness_matches_degree_sums(e in arb_expr()) {
        let live = annotate_liveness(&e);
        for t in 0..e.len() {
            prop_assert_eq!(live.at(t).to_vec(), naive_live(&e, t), "node {}", t);
        }
        prop_assert!(live.at(e.root()).is_empty());
        prop_assert!(live.max_live() <= e.width());
    }

    #[test]
    fn evaluate_is_label_permutation_equivariant(e in arb_expr(), shift in 1u32..1000) {
        // Labels are at most 5, so x -> 6 + shift - x is a bijection onto fresh labels.
        let f = |x: u32| 6 + shift - x;
        let p = e.map_labels(f).unwrap();
        let a = evaluate(&e);
        let b = evaluate(&p);
        prop_assert_eq!(&a.graph, &b.graph);
        let mapped: Vec<u32> = a.labels.iter().map(|&l| f(l)).collect();
        prop_assert_eq!(mapped, b.labels);
        prop_assert_eq!(e.width(), p.width());
    }

    #[test]
    fn repeated_join_is_idempotent(e in arb_expr(), i in 1u32..=5, j in 1u32..=5) {
        prop_assume!(i != j);
        let mut b = CwBuilder::new();
        let mut ids = Vec::new();
        for n in e.nodes() {
            ids.push(match *n {
                Node::Intro(l) => b.intro(l),
                Node::Union(l, r) => b.union(ids[l], ids[r]),
                Node::Rename { from, to, child } => b.rename(from, to, ids[child]),
                Node::Join { a, b: c, child } => b.join(a, c, ids[child]),
            });
        }
        let once = b.join(i, j, *ids.last().unwrap());
        let twice = b.join(i, j, once);
        let g1 = evaluate(&b.finish(once).unwrap()).graph;
        let g2 = evaluate(&b.finish(twice).unwrap()).graph;
        prop_assert_eq!(g1, g2);
    }
}
