use cwcolor::graph::ModularReduction;
use cwcolor::mtw::{
    decide_colorable_mtw, heuristic_td, list_colorable_mtw, make_nice, multicolor_report, multicolor_report_td,
    TreeDecomposition,
};
use cwcolor::oracle::{brute_colorable, brute_list_colorable, random_graph, random_twin_graph};
use cwcolor::{ColorSet, Graph, ListColoringInstance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_twin_graph() -> impl Strategy<Value = Graph> {
    (any::<u64>(), 1usize..=7).prop_map(|(seed, n)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_twin_graph(&mut rng, n)
    })
}

/// One bag holding everything, with a leaf bag per vertex hanging off it.
fn everything_bag(n: usize) -> TreeDecomposition {
    let mut bags = vec![(0..n).collect::<Vec<_>>()];
    let mut edges = Vec::new();
    for v in 0..n {
        bags.push(vec![v]);
        edges.push((0, v + 1));
    }
    TreeDecomposition { n, bags, edges }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn agrees_with_brute_force(g in arb_twin_graph(), k in 3u32..=5) {
        let q = ModularReduction::of_graph(&g).quotient;
        prop_assume!(q.graph.vertex_count() <= 10);
        prop_assume!((k as f64).powi(g.vertex_count() as i32) <= 1e9);
        prop_assert_eq!(decide_colorable_mtw(&g, k, None).unwrap(), brute_colorable(&g, k).unwrap());
    }

    #[test]
    fn dense_graphs_agree_with_brute_force(seed in any::<u64>(), n in 1usize..=9, k in 3u32..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.6);
        prop_assert_eq!(decide_colorable_mtw(&g, k, None).unwrap(), brute_colorable(&g, k).unwrap());
    }

    #[test]
    fn answer_does_not_depend_on_decomposition(g in arb_twin_graph(), k in 2u32..=4) {
        let n = g.vertex_count();
        let q = ModularReduction::of_graph(&g).quotient;
        let a = decide_colorable_mtw(&g, k, None).unwrap();
        let b = decide_colorable_mtw(&g, k, Some(&everything_bag(n))).unwrap();
        let c = decide_colorable_mtw(&g, k, Some(&heuristic_td(&g))).unwrap();
        let d = decide_colorable_mtw(&g, k, Some(&everything_bag(q.graph.vertex_count()))).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, c);
        prop_assert_eq!(a, d);
    }

    #[test]
    fn list_version_agrees_with_brute_force(g in arb_twin_graph(), k in 2u32..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Few distinct lists so that twins survive list-aware grouping.
        let pool: Vec<ColorSet> = (0..2).map(|_| ColorSet::from_bits(rng.gen_range(1..1u32 << k))).collect();
        let lists = (0..g.vertex_count()).map(|_| pool[rng.gen_range(0..2)]).collect();
        let inst = ListColoringInstance::new(g, k, lists).unwrap();
        prop_assume!(inst.lists.iter().map(|l| l.len() as f64).product::<f64>() <= 1e9);
        let r = list_colorable_mtw(&inst, None).unwrap();
        prop_assert_eq!(r.colorable, brute_list_colorable(&inst).unwrap());
    }

    #[test]
    fn vertices_in_every_bag_do_not_change_the_answer(g in arb_twin_graph(), k in 2u32..=4, extra in 1usize..=3) {
        let red = ModularReduction::of_graph(&g);
        let q = &red.quotient;
        let mut td = heuristic_td(&q.graph);
        for b in &mut td.bags {
            b.extend(0..extra.min(q.graph.vertex_count()));
            b.sort_unstable();
            b.dedup();
        }
        let a = multicolor_report_td(q, k, &td).unwrap();
        let nice = make_nice(&heuristic_td(&q.graph)).unwrap();
        let b = multicolor_report(q, k, &nice).unwrap();
        prop_assert_eq!(a.colorable, b.colorable);
    }

    #[test]
    fn heuristic_decomposition_is_valid(seed in any::<u64>(), n in 0usize..=20, p in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, p);
        heuristic_td(&g).validate(&g).unwrap();
    }
}
