//! k-colorability through multicoloring of the twin quotient over a nice
//! tree decomposition.

mod multicolor;
mod nice;
mod td;

pub use nice::{make_nice, NiceNode, NiceTreeDecomposition};
pub use td::{heuristic_td, parse_td, parse_td_unchecked, TreeDecomposition};

use crate::colorset::{ColorSet, MAX_COLORS};
use crate::error::{Error, Result};
use crate::graph::{Graph, ListColoringInstance, ModularReduction, Quotient};

/// Outcome of a multicoloring run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticolorReport {
    pub colorable: bool,
    /// Set when the instance was rejected before the DP ran.
    pub reason: Option<String>,
    pub peak_states: usize,
    pub width: usize,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Decides whether every quotient vertex `v` can get `demand[v]` colors from
/// its list so that adjacent vertices get disjoint sets.
pub fn decide_multicolor(q: &Quotient, k: u32, ntd: &NiceTreeDecomposition) -> Result<bool> {
    Ok(multicolor_report(q, k, ntd)?.colorable)
}

pub fn multicolor_report(q: &Quotient, k: u32, ntd: &NiceTreeDecomposition) -> Result<MulticolorReport> {
    let options = match vertex_options(q, k)? {
        Ok(o) => o,
        Err(reason) => return Ok(rejected(reason, ntd.width())),
    };
    let out = multicolor::run(q, k, &options, ntd, &[]);
    Ok(MulticolorReport {
        colorable: out.colorable,
        reason: None,
        peak_states: out.peak_states,
        width: ntd.width(),
    })
}

fn rejected(reason: String, width: usize) -> MulticolorReport {
    MulticolorReport {
        colorable: false,
        reason: Some(reason),
        peak_states: 0,
        width,
    }
}

/// Demand-sized subsets of each vertex's list, by increasing bits, or the
/// reason the instance is trivially infeasible.
fn vertex_options(q: &Quotient, k: u32) -> Result<std::result::Result<Vec<Vec<ColorSet>>, String>> {
    if !(1..=MAX_COLORS).contains(&k) {
        return Err(Error::ColorsOutOfRange {
            k,
            min: 1,
            max: MAX_COLORS,
        });
    }
    let n = q.graph.vertex_count();
    let full = ColorSet::full(k);
    let lists: Vec<ColorSet> = match &q.lists {
        Some(l) => l.clone(),
        None => vec![full; n],
    };
    if let Some(v) = (0..n).find(|&v| q.demand[v] > k) {
        return Ok(Err(format!(
            "vertex {} has demand {} > k = {k}: it stands for a clique of more than k vertices",
            v + 1,
            q.demand[v]
        )));
    }
    let options: Vec<Vec<ColorSet>> = (0..n).map(|v| lists[v].subsets_of_size(q.demand[v])).collect();
    if let Some(v) = (0..n).find(|&v| options[v].is_empty()) {
        return Ok(Err(format!(
            "vertex {} needs {} colors from list {}",
            v + 1,
            q.demand[v],
            lists[v]
        )));
    }
    Ok(Ok(options))
}

/// Runs the DP on a decomposition of `q`, pulling vertices present in every
/// bag out of the bags while their joint choices stay few enough.
pub fn multicolor_report_td(q: &Quotient, k: u32, td: &TreeDecomposition) -> Result<MulticolorReport> {
    let options = match vertex_options(q, k)? {
        Ok(o) => o,
        Err(reason) => return Ok(rejected(reason, td.width())),
    };
    let mut common: Vec<usize> = td.bags.first().cloned().unwrap_or_default();
    for b in &td.bags[1.min(td.bags.len())..] {
        common.retain(|v| b.binary_search(v).is_ok());
    }
    common.sort_by_key(|&v| options[v].len());
    let mut global = Vec::new();
    let mut states = 1u64;
    for v in common {
        let r = options[v].len() as u64;
        if states * r > multicolor::MAX_GLOBAL_STATES {
            break;
        }
        states *= r;
        global.push(v);
    }
    global.sort_unstable();
    let stripped = TreeDecomposition {
        n: td.n,
        bags: td
            .bags
            .iter()
            .map(|b| b.iter().copied().filter(|v| global.binary_search(v).is_err()).collect())
            .collect(),
        edges: td.edges.clone(),
    };
    let nice = make_nice(&stripped)?;
    let out = multicolor::run(q, k, &options, &nice, &global);
    Ok(MulticolorReport {
        colorable: out.colorable,
        reason: None,
        peak_states: out.peak_states,
        width: td.width(),
    })
}

/// Prepares the twin quotient of `inst` and a decomposition for it. A supplied
/// decomposition may be of the quotient or of the input graph itself.
pub fn quotient_with_td(
    inst: &ListColoringInstance,
    td: Option<&TreeDecomposition>,
) -> Result<(ModularReduction, TreeDecomposition)> {
    let red = ModularReduction::of_instance(inst);
    let qn = red.quotient.graph.vertex_count();
    let qtd = match td {
        None => heuristic_td(&red.quotient.graph),
        Some(t) if t.n == inst.graph.vertex_count() => {
            t.validate(&inst.graph)?;
            t.mapped(&red.original_to_quotient, qn)
        }
        Some(t) if t.n == qn => t.clone(),
        Some(t) => {
            return Err(Error::Decomposition(format!(
                "decomposition has {} vertices; expected {} (graph) or {} (quotient)",
                t.n,
                inst.graph.vertex_count(),
                qn
            )))
        }
    };
    qtd.validate(&red.quotient.graph)?;
    Ok((red, qtd))
}

pub fn list_colorable_mtw(inst: &ListColoringInstance, td: Option<&TreeDecomposition>) -> Result<MulticolorReport> {
    inst.validate()?;
    let (red, qtd) = quotient_with_td(inst, td)?;
    multicolor_report_td(&red.quotient, inst.k, &qtd)
}

/// k-colorability of `g` via false-twin removal, true-twin contraction and
/// multicoloring over a decomposition of the quotient.
pub fn decide_colorable_mtw(g: &Graph, k: u32, td: Option<&TreeDecomposition>) -> Result<bool> {
    if !(1..=MAX_COLORS).contains(&k) {
        return Err(Error::ColorsOutOfRange {
            k,
            min: 1,
            max: MAX_COLORS,
        });
    }
    let inst = ListColoringInstance::uniform(g.clone(), k);
    Ok(list_colorable_mtw(&inst, td)?.colorable)
}
