//! Counting proper (list) colorings over a clique-width expression with
//! tables indexed by the color sets of live labels only.

mod ring;
mod table;

pub use ring::{is_prime, Exact, ModPrime, Ring};
pub use table::{moebius_in_place, radix, zeta_in_place, Dp, DpTable};

use num_bigint::BigUint;

use crate::colorset::{ColorSet, MAX_COLORS};
use crate::error::{Error, Result};
use crate::expr::{annotate_liveness, CwExpr, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    /// Count modulo a random 62-bit prime derived from the seed.
    ModPrime { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct DpOptions {
    pub mode: CountMode,
    /// Stop as soon as some table is identically zero.
    pub early_exit: bool,
    /// Largest table the run may allocate.
    pub max_entries: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            mode: CountMode::Exact,
            early_exit: false,
            max_entries: 1 << 27,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    pub peak_entries: usize,
    pub max_live: usize,
    pub intro_nodes: usize,
    pub union_nodes: usize,
    pub rename_nodes: usize,
    pub join_nodes: usize,
    /// Set when an all-zero table stopped the run.
    pub stopped_early: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    /// The count, or its residue when `modulus` is set.
    pub count: BigUint,
    pub modulus: Option<u64>,
    pub stats: DpStats,
}

impl CountResult {
    pub fn is_colorable(&self) -> bool {
        self.count != BigUint::from(0u8)
    }
}

/// Number of proper `k`-colorings of the graph of `e`.
pub fn count_colorings(e: &CwExpr, k: u32, mode: CountMode) -> Result<BigUint> {
    let opts = DpOptions {
        mode,
        ..DpOptions::default()
    };
    Ok(run(e, k, None, &opts)?.count)
}

/// Number of proper colorings where vertex `v` (leaf order) uses a color of `lists[v]`.
pub fn count_list_colorings(e: &CwExpr, k: u32, lists: &[ColorSet], mode: CountMode) -> Result<BigUint> {
    let opts = DpOptions {
        mode,
        ..DpOptions::default()
    };
    Ok(run(e, k, Some(lists), &opts)?.count)
}

pub fn decide_colorable(e: &CwExpr, k: u32) -> Result<bool> {
    let opts = DpOptions {
        early_exit: true,
        ..DpOptions::default()
    };
    Ok(run(e, k, None, &opts)?.is_colorable())
}

/// General entry point; `lists` defaults to the full palette.
pub fn run(e: &CwExpr, k: u32, lists: Option<&[ColorSet]>, opts: &DpOptions) -> Result<CountResult> {
    if !(2..=MAX_COLORS).contains(&k) {
        return Err(Error::ColorsOutOfRange {
            k,
            min: 2,
            max: MAX_COLORS,
        });
    }
    if let Some(l) = lists {
        if l.len() != e.vertex_count() {
            return Err(Error::InvalidInstance(format!(
                "{} lists for {} vertices",
                l.len(),
                e.vertex_count()
            )));
        }
        if let Some(v) = l.iter().position(|s| !s.within(k)) {
            return Err(Error::InvalidInstance(format!("list of vertex {} exceeds 1..={k}", v + 1)));
        }
    }
    match opts.mode {
        CountMode::Exact => {
            let (v, stats) = run_ring(Exact, e, k, lists, opts)?;
            Ok(CountResult {
                count: v,
                modulus: None,
                stats,
            })
        }
        CountMode::ModPrime { seed } => {
            let ring = ModPrime::random(seed);
            let (v, stats) = run_ring(ring, e, k, lists, opts)?;
            Ok(CountResult {
                count: BigUint::from(v),
                modulus: Some(ring.p),
                stats,
            })
        }
    }
}

fn run_ring<R: Ring>(
    ring: R,
    e: &CwExpr,
    k: u32,
    lists: Option<&[ColorSet]>,
    opts: &DpOptions,
) -> Result<(R::Elem, DpStats)> {
    let live = annotate_liveness(e);
    let dp = Dp {
        ring,
        k,
        max_entries: opts.max_entries,
    };
    let full = ColorSet::full(k);
    let mut stats = DpStats {
        max_live: live.max_live(),
        ..DpStats::default()
    };
    let mut stack: Vec<DpTable<R::Elem>> = Vec::new();
    let mut vertex = 0;
    for (id, node) in e.nodes().iter().enumerate() {
        let after = live.at(id);
        let t = match *node {
            Node::Intro(l) => {
                stats.intro_nodes += 1;
                let list = lists.map_or(full, |ls| ls[vertex]);
                vertex += 1;
                dp.introduce(l, list, !after.is_empty())?
            }
            Node::Union(..) => {
                stats.union_nodes += 1;
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                dp.union(a, b, after)?
            }
            Node::Rename { from, to, .. } => {
                stats.rename_nodes += 1;
                dp.rename(stack.pop().unwrap(), from, to, after)?
            }
            Node::Join { a, b, .. } => {
                stats.join_nodes += 1;
                let t = stack.pop().unwrap();
                if t.labels().contains(&a) && t.labels().contains(&b) {
                    dp.join(t, a, b, after)?
                } else {
                    // One side has no live vertex, so the join adds no new edge.
                    assert_eq!(t.labels(), after);
                    t
                }
            }
        };
        assert_eq!(t.labels(), after);
        assert_eq!(t.len(), radix(k).pow(after.len() as u32), "table size at node {id}");
        stats.peak_entries = stats.peak_entries.max(t.len());
        if opts.early_exit && dp.is_all_zero(&t) {
            stats.stopped_early = true;
            return Ok((dp.ring.zero(), stats));
        }
        stack.push(t);
    }
    let root = stack.pop().unwrap();
    assert!(stack.is_empty());
    let v = root.scalar_value().expect("root table has live labels").clone();
    Ok((v, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{complete_expr, cycle_expr, parse_expr};

    fn cs(c: &[u32]) -> ColorSet {
        ColorSet::from_colors(c.iter().copied())
    }

    fn exact(k: u32) -> Dp<Exact> {
        Dp::new(Exact, k)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn introduce_examples() {
        let t = exact(3).introduce(1, ColorSet::full(3), true).unwrap();
        let v: Vec<u64> = t.entries().iter().map(|x| x.try_into().unwrap()).collect();
        // Ranks: {1},{2},{1,2},{3},{1,3},{2,3}.
        assert_eq!(v, vec![1, 1, 0, 1, 0, 0]);
        let t = exact(3).introduce(1, ColorSet::full(3), false).unwrap();
        assert_eq!(t.scalar_value(), Some(&big(3)));
        let t = exact(2).introduce(1, ColorSet::full(2), true).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.entries().iter().all(|x| *x == big(1)));
    }

    #[test]
    fn join_examples() {
        let dp = exact(3);
        let mut t = DpTable::from_entries(3, vec![1, 2], vec![big(0); 36]);
        t.set(&[cs(&[1]), cs(&[1])], big(4));
        t.set(&[cs(&[1]), cs(&[2])], big(4));
        let j = dp.join(t.clone(), 1, 2, &[1, 2]).unwrap();
        assert_eq!(j.get(&[cs(&[1]), cs(&[1])]), &big(0));
        assert_eq!(j.get(&[cs(&[1]), cs(&[2])]), &big(4));

        // Label 1 dies: out[S2] sums inputs over S1 disjoint from S2.
        let mut t = DpTable::from_entries(3, vec![1, 2], (0..36u64).map(big).collect());
        let j = dp.join(t.clone(), 1, 2, &[2]).unwrap();
        for s2 in 1..=6u32 {
            let mut want = big(0);
            for s1 in 1..=6u32 {
                if s1 & s2 == 0 {
                    want += t.get(&[ColorSet::from_bits(s1), ColorSet::from_bits(s2)]).clone();
                }
            }
            assert_eq!(j.get(&[ColorSet::from_bits(s2)]), &want);
        }
        t.set(&[cs(&[1]), cs(&[1])], big(9));
        assert!(matches!(dp.join(t, 1, 3, &[1, 2]), Err(Error::LabelNotLive(3))));
    }

    #[test]
    fn rename_examples() {
        let dp = exact(3);
        let mut t = DpTable::from_entries(3, vec![1, 2], vec![big(0); 36]);
        t.set(&[cs(&[1]), cs(&[2])], big(5));
        let r = dp.rename(t, 1, 2, &[2]).unwrap();
        assert_eq!(r.get(&[cs(&[1, 2])]), &big(5));
        assert_eq!(r.entries().iter().filter(|x| **x != big(0)).count(), 1);

        let mut t = DpTable::from_entries(3, vec![1, 2], vec![big(0); 36]);
        t.set(&[cs(&[1, 2]), cs(&[2, 3])], big(7));
        let r = dp.rename(t, 1, 2, &[2]).unwrap();
        assert!(r.entries().iter().all(|x| *x == big(0)));

        let t = DpTable::from_entries(3, vec![2], (0..6u64).map(big).collect());
        assert_eq!(dp.rename(t.clone(), 1, 2, &[2]).unwrap(), t);
        assert!(dp.rename(t.clone(), 2, 2, &[2]).is_err());

        // Moving a coordinate past another label keeps signatures intact.
        let mut t = DpTable::from_entries(3, vec![1, 2], vec![big(0); 36]);
        t.set(&[cs(&[3]), cs(&[1, 2])], big(11));
        let r = dp.rename(t, 1, 5, &[2, 5]).unwrap();
        assert_eq!(r.get(&[cs(&[1, 2]), cs(&[3])]), &big(11));
    }

    #[test]
    fn zeta_examples() {
        let mut t = DpTable::from_entries(3, vec![1], vec![big(0); 6]);
        t.set(&[cs(&[1])], big(1));
        zeta_in_place(&Exact, &mut t, 1).unwrap();
        for (s, want) in [(&[1][..], 1), (&[1, 2], 1), (&[1, 3], 1), (&[2], 0), (&[3], 0), (&[2, 3], 0)] {
            assert_eq!(t.get(&[cs(s)]), &big(want), "{s:?}");
        }
        // All-ones input gives the number of proper nonempty subsets.
        let mut t = DpTable::from_entries(3, vec![1], vec![big(1); 6]);
        zeta_in_place(&Exact, &mut t, 1).unwrap();
        for (s, want) in [(&[1][..], 1), (&[2], 1), (&[3], 1), (&[1, 2], 3), (&[1, 3], 3), (&[2, 3], 3)] {
            assert_eq!(t.get(&[cs(s)]), &big(want), "{s:?}");
        }
        moebius_in_place(&Exact, &mut t, 1).unwrap();
        assert!(t.entries().iter().all(|x| *x == big(1)));

        let mut s = DpTable::scalar(3, big(4));
        assert!(zeta_in_place(&Exact, &mut s, 1).is_err());
        assert_eq!(s.scalar_value(), Some(&big(4)));
    }

    #[test]
    fn union_with_scalar_side_scales() {
        let dp = exact(3);
        let a = DpTable::from_entries(3, vec![1], (1..=6u64).map(big).collect());
        let u = dp.union(a.clone(), DpTable::scalar(3, big(3)), &[1]).unwrap();
        let want: Vec<BigUint> = (1..=6u64).map(|x| big(3 * x)).collect();
        assert_eq!(u.entries(), &want[..]);
    }

    #[test]
    fn count_examples() {
        let k3 = parse_expr("(join 1 2 (join 1 3 (join 2 3 (union (intro 1) (union (intro 2) (intro 3))))))").unwrap();
        assert_eq!(count_colorings(&k3, 3, CountMode::Exact).unwrap(), big(6));
        assert_eq!(count_colorings(&cycle_expr(5), 3, CountMode::Exact).unwrap(), big(30));
        assert_eq!(count_colorings(&complete_expr(4), 3, CountMode::Exact).unwrap(), big(0));
        assert!(!decide_colorable(&complete_expr(4), 3).unwrap());
        assert!(decide_colorable(&complete_expr(4), 4).unwrap());
        assert!(!decide_colorable(&cycle_expr(5), 2).unwrap());
        assert!(count_colorings(&k3, 1, CountMode::Exact).is_err());
        assert!(count_colorings(&k3, 31, CountMode::Exact).is_err());
    }

    #[test]
    fn mod_prime_matches_small_counts() {
        let r = run(
            &cycle_expr(7),
            3,
            None,
            &DpOptions {
                mode: CountMode::ModPrime { seed: 1 },
                ..DpOptions::default()
            },
        )
        .unwrap();
        // (k-1)^n + (-1)^n (k-1) for cycles.
        assert_eq!(r.count, big(128 - 2));
        assert!(r.modulus.is_some());
    }

    #[test]
    fn list_colorings() {
        let e = parse_expr("(join 1 2 (union (intro 1) (intro 2)))").unwrap();
        let n = count_list_colorings(&e, 3, &[cs(&[1]), cs(&[1, 2])], CountMode::Exact).unwrap();
        assert_eq!(n, big(1));
        let n = count_list_colorings(&e, 3, &[cs(&[1]), cs(&[1])], CountMode::Exact).unwrap();
        assert_eq!(n, big(0));
    }
}
