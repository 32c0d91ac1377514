//! Boolean multicoloring DP over a nice tree decomposition.
//!
//! Vertices that sit in every bag ("global" vertices) are not part of the
//! nice decomposition; instead every table entry is a bitset over the joint
//! choices of the global vertices. Without global vertices each bitset is a
//! single bit and this is the plain dense DP.

use std::collections::HashMap;

use super::nice::{NiceNode, NiceTreeDecomposition};
use crate::colorset::ColorSet;
use crate::graph::Quotient;

/// Largest number of joint global choices kept as bitset positions.
pub const MAX_GLOBAL_STATES: u64 = 1 << 20;

pub(crate) struct Outcome {
    pub colorable: bool,
    pub peak_states: usize,
}

struct Globals {
    verts: Vec<usize>,
    radices: Vec<u64>,
    strides: Vec<u64>,
    /// Joint global choice behind each bit position.
    alive: Vec<u64>,
    is_global: Vec<Option<usize>>,
}

impl Globals {
    fn option(&self, state: u64, g: usize) -> usize {
        ((state / self.strides[g]) % self.radices[g]) as usize
    }

    fn words(&self) -> usize {
        self.alive.len().div_ceil(64).max(1)
    }
}

fn product(xs: &[usize]) -> usize {
    xs.iter().product()
}

/// `options[v]` lists the admissible color sets of quotient vertex `v`.
pub(crate) fn run(
    q: &Quotient,
    k: u32,
    options: &[Vec<ColorSet>],
    ntd: &NiceTreeDecomposition,
    global: &[usize],
) -> Outcome {
    let n = q.graph.vertex_count();
    let bound = super::binomial(k as u64, k as u64 / 2) as f64;
    let mut is_global = vec![None; n];
    for (i, &v) in global.iter().enumerate() {
        is_global[v] = Some(i);
    }
    let radices: Vec<u64> = global.iter().map(|&v| options[v].len() as u64).collect();
    let mut strides = Vec::with_capacity(global.len());
    let mut acc = 1u64;
    for &r in &radices {
        strides.push(acc);
        acc *= r;
    }
    let mut gl = Globals {
        verts: global.to_vec(),
        radices,
        strides,
        alive: Vec::new(),
        is_global,
    };
    // Joint global choices that are proper among the global vertices.
    let global_edges: Vec<(usize, usize)> = (0..global.len())
        .flat_map(|a| (a + 1..global.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| q.graph.has_edge(global[a], global[b]))
        .collect();
    gl.alive = (0..acc)
        .filter(|&s| {
            global_edges.iter().all(|&(a, b)| {
                options[global[a]][gl.option(s, a)].is_disjoint(options[global[b]][gl.option(s, b)])
            })
        })
        .collect();

    // compat[(g, set)]: positions whose choice for global g avoids `set`.
    let mut compat: HashMap<(usize, u32), Vec<u64>> = HashMap::new();
    let mut tables: Vec<Option<Vec<u64>>> = vec![None; ntd.nodes.len()];
    let mut pending = 0usize;
    let mut peak = 0usize;

    for (id, node) in ntd.nodes.iter().enumerate() {
        let w = gl.words();
        let bag = &ntd.bags[id];
        let radices: Vec<usize> = bag.iter().map(|&v| options[v].len()).collect();
        let len = product(&radices);
        let states = len * gl.alive.len().max(1);
        assert!(
            states as f64 <= bound.powi((bag.len() + global.len()) as i32),
            "bag states {states} exceed C(k, k/2)^{}",
            bag.len() + global.len()
        );
        peak = peak.max(states);
        let mut take = |c: usize, tables: &mut Vec<Option<Vec<u64>>>| {
            pending -= 1;
            tables[c].take().expect("child table")
        };
        let t: Vec<u64> = match *node {
            NiceNode::Leaf => {
                let mut t = vec![!0u64; w];
                let extra = w * 64 - gl.alive.len();
                if extra > 0 {
                    t[w - 1] = if gl.alive.is_empty() { 0 } else { !0u64 >> extra };
                }
                t
            }
            NiceNode::Introduce { v, child } => {
                let ct = take(child, &mut tables);
                let p = bag.binary_search(&v).unwrap();
                let low = product(&radices[..p]);
                let r = radices[p];
                let nbrs: Vec<(usize, usize)> = bag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| q.graph.has_edge(u, v))
                    .map(|(i, &u)| (product(&radices[..i]), u))
                    .collect();
                let gnbrs: Vec<usize> = q.graph.neighbors(v).iter().filter_map(|&u| gl.is_global[u]).collect();
                // Mask per option of v from its global neighbours.
                let masks: Vec<Option<Vec<u64>>> = options[v]
                    .iter()
                    .map(|&mine| {
                        let mut m: Option<Vec<u64>> = None;
                        for &g in &gnbrs {
                            let c = compat.entry((g, mine.bits())).or_insert_with(|| {
                                let mut bits = vec![0u64; w];
                                for (pos, &s) in gl.alive.iter().enumerate() {
                                    if options[gl.verts[g]][gl.option(s, g)].is_disjoint(mine) {
                                        bits[pos / 64] |= 1 << (pos % 64);
                                    }
                                }
                                bits
                            });
                            m = Some(match m {
                                None => c.clone(),
                                Some(mut m) => {
                                    m.iter_mut().zip(c.iter()).for_each(|(a, b)| *a &= b);
                                    m
                                }
                            });
                        }
                        m
                    })
                    .collect();
                let mut out = vec![0u64; len * w];
                for idx in 0..len {
                    let lo = idx % low;
                    let o = (idx / low) % r;
                    let hi = idx / (low * r);
                    let src = &ct[(lo + hi * low) * w..][..w];
                    if src.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let mine = options[v][o];
                    let ok = nbrs.iter().all(|&(stride, u)| {
                        let pos = bag.binary_search(&u).unwrap();
                        mine.is_disjoint(options[u][(idx / stride) % radices[pos]])
                    });
                    if !ok {
                        continue;
                    }
                    let dst = &mut out[idx * w..][..w];
                    match &masks[o] {
                        None => dst.copy_from_slice(src),
                        Some(m) => dst.iter_mut().zip(src.iter().zip(m)).for_each(|(d, (s, m))| *d = s & m),
                    }
                }
                out
            }
            NiceNode::Forget { v, child } => {
                let ct = take(child, &mut tables);
                let cbag = &ntd.bags[child];
                let p = cbag.binary_search(&v).unwrap();
                let low = product(&radices[..p]);
                let r = options[v].len();
                let mut out = vec![0u64; len * w];
                for idx in 0..len {
                    let lo = idx % low;
                    let hi = idx / low;
                    let dst = &mut out[idx * w..][..w];
                    for o in 0..r {
                        let src = &ct[(lo + o * low + hi * low * r) * w..][..w];
                        dst.iter_mut().zip(src).for_each(|(d, s)| *d |= s);
                    }
                }
                out
            }
            NiceNode::Join { left, right } => {
                let a = take(left, &mut tables);
                let b = take(right, &mut tables);
                a.iter().zip(&b).map(|(&x, &y)| x & y).collect()
            }
        };
        if t.iter().all(|&x| x == 0) {
            return Outcome {
                colorable: false,
                peak_states: peak,
            };
        }
        let t = if len == 1 && pending == 0 { compact(&mut gl, &mut compat, t) } else { t };
        tables[id] = Some(t);
        pending += 1;
    }
    Outcome {
        colorable: true,
        peak_states: peak,
    }
}

/// Drops dead global choices once they are dead everywhere, i.e. when this
/// single-entry table is the only one alive.
fn compact(gl: &mut Globals, compat: &mut HashMap<(usize, u32), Vec<u64>>, t: Vec<u64>) -> Vec<u64> {
    let live: usize = t.iter().map(|x| x.count_ones() as usize).sum();
    if live * 2 > gl.alive.len() {
        return t;
    }
    gl.alive = gl
        .alive
        .iter()
        .enumerate()
        .filter(|&(pos, _)| t[pos / 64] >> (pos % 64) & 1 == 1)
        .map(|(_, &s)| s)
        .collect();
    compat.clear();
    let w = gl.words();
    let mut out = vec![!0u64; w];
    let extra = w * 64 - gl.alive.len();
    if extra > 0 {
        out[w - 1] = !0u64 >> extra;
    }
    out
}
