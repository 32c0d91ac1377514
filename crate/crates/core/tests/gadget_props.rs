use cwcolor::dp::count_colorings;
use cwcolor::dp::CountMode;
use cwcolor::gadgets::{delist_cw, delist_graph, implication, or_gadget, weak_edge, InstanceBuilder, ListedCwExpr};
use cwcolor::expr::evaluate;
use cwcolor::oracle::{brute_colorable, brute_list_colorable, random_expr, random_graph};
use cwcolor::{ColorSet, ListColoringInstance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Place = fn(&mut InstanceBuilder, usize, usize, u32, u32) -> cwcolor::Result<usize>;

/// Extensible endpoint pairs `(a, b)` of a two-terminal gadget, row-major.
fn extensible(k: u32, c1: u32, c2: u32, place: Place) -> Vec<Vec<bool>> {
    let mut b = InstanceBuilder::new(k);
    let u1 = b.add_terminal("u1");
    let u2 = b.add_terminal("u2");
    place(&mut b, u1, u2, c1, c2).unwrap();
    let inst = b.finish().unwrap();
    (1..=k)
        .map(|a| {
            (1..=k)
                .map(|c| {
                    let mut p = inst.clone();
                    p.lists[u1] = ColorSet::singleton(a);
                    p.lists[u2] = ColorSet::singleton(c);
                    brute_list_colorable(&p).unwrap()
                })
                .collect()
        })
        .collect()
}

#[test]
fn weak_edge_table_k3() {
    let t = extensible(3, 1, 2, weak_edge);
    assert_eq!(
        t,
        vec![vec![true, false, true], vec![true, true, true], vec![true, true, true]]
    );
}

#[test]
fn weak_edge_blocks_exactly_one_pair() {
    for k in 3..=5 {
        for c1 in 1..=k {
            for c2 in 1..=k {
                let t = extensible(k, c1, c2, weak_edge);
                for a in 1..=k {
                    for b in 1..=k {
                        let want = (a, b) != (c1, c2);
                        assert_eq!(t[a as usize - 1][b as usize - 1], want, "k={k} ({c1},{c2}) at ({a},{b})");
                    }
                }
            }
        }
    }
}

#[test]
fn implication_table_k3() {
    let t = extensible(3, 1, 2, implication);
    assert_eq!(
        t,
        vec![vec![false, true, false], vec![true, true, true], vec![true, true, true]]
    );
}

#[test]
fn implication_forces_target_color() {
    for k in 3..=4 {
        for c1 in 1..=k {
            for c2 in 1..=k {
                let t = extensible(k, c1, c2, implication);
                for a in 1..=k {
                    for b in 1..=k {
                        let want = a != c1 || b == c2;
                        assert_eq!(t[a as usize - 1][b as usize - 1], want, "k={k} ({c1}->{c2}) at ({a},{b})");
                    }
                }
            }
        }
    }
}

#[test]
fn or_gadget_needs_and_allows_a_single_one() {
    for k in 3..=4 {
        for size in 1..=3 {
            let mut b = InstanceBuilder::new(k);
            let s: Vec<usize> = (0..size).map(|_| b.add_vertex(ColorSet::full(k))).collect();
            or_gadget(&mut b, &s).unwrap();
            let inst = b.finish().unwrap();
            // No vertex of S may avoid color 1 all at once.
            let mut none = inst.clone();
            for &u in &s {
                none.lists[u] = ColorSet::from_colors([2, 3]);
            }
            assert!(!brute_list_colorable(&none).unwrap(), "k={k} |S|={size}");
            // Color 1 on exactly one chosen vertex extends.
            for &u in &s {
                let mut one = inst.clone();
                for &w in &s {
                    one.lists[w] = if w == u { ColorSet::singleton(1) } else { ColorSet::from_colors([2, 3]) };
                }
                assert!(brute_list_colorable(&one).unwrap(), "k={k} |S|={size} u={u}");
            }
        }
    }
}

#[test]
fn gadget_internals_stay_local() {
    let mut b = InstanceBuilder::new(4);
    let t: Vec<usize> = (0..4).map(|i| b.add_terminal(&format!("t{i}"))).collect();
    weak_edge(&mut b, t[0], t[1], 1, 2).unwrap();
    implication(&mut b, t[1], t[2], 3, 3).unwrap();
    implication(&mut b, t[0], t[2], 2, 4).unwrap();
    or_gadget(&mut b, &[t[0], t[3]]).unwrap();
    assert_eq!(b.terminal("t2"), Some(t[2]));
    for p in b.placements() {
        for &v in &p.internal {
            assert!(b.graph().degree(v) <= 2);
            for &w in b.graph().neighbors(v) {
                assert!(p.internal.contains(&w) || p.endpoints.contains(&w));
            }
        }
    }
}

fn random_lists(rng: &mut impl Rng, n: usize, k: u32) -> Vec<ColorSet> {
    (0..n).map(|_| ColorSet::from_bits(rng.gen_range(1..1u32 << k))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn delist_graph_preserves_colorability(seed in any::<u64>(), n in 1usize..=8, k in 3u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.4);
        let lists = random_lists(&mut rng, n, k);
        let inst = ListColoringInstance::new(g, k, lists).unwrap();
        let d = delist_graph(&inst);
        prop_assert_eq!(d.vertex_count(), n + k as usize);
        prop_assert_eq!(brute_colorable(&d, k).unwrap(), brute_list_colorable(&inst).unwrap());
    }

    #[test]
    fn delist_cw_preserves_colorability(seed in any::<u64>(), n in 1usize..=6, w in 2u32..=3, k in 3u32..=4) {
        prop_assume!(k == 3 || w == 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, n, w);
        let lists = random_lists(&mut rng, n, k);
        let inst = ListColoringInstance::new(evaluate(&e).graph, k, lists.clone()).unwrap();
        let d = delist_cw(&ListedCwExpr::new(e.clone(), lists, k).unwrap(), k).unwrap();
        prop_assert_eq!(d.width(), e.width() + k as usize);
        let count: num_bigint::BigUint = count_colorings(&d, k, CountMode::Exact).unwrap();
        prop_assert_eq!(count > 0u8.into(), brute_list_colorable(&inst).unwrap());
    }
}
