use std::time::Instant;

use anyhow::Result;
use cwcolor::dp::{run, CountMode, DpOptions};
use cwcolor::expr::parse_expr;
use cwcolor::graph::dimacs::{parse_graph, parse_lists};
use cwcolor::mtw::{multicolor_report_td, parse_td_unchecked, quotient_with_td};
use cwcolor::reductions::sha256_hex;
use cwcolor::ListColoringInstance;

use crate::io::read;
use crate::report::{yes_no, RunReport};
use crate::{SolveCwArgs, SolveMtwArgs};

/// Returns whether the input is colorable.
pub fn solve_cw(a: &SolveCwArgs, threads: usize) -> Result<bool> {
    let start = Instant::now();
    let text = read(&a.expr)?;
    let e = parse_expr(&text)?;
    let lists = match &a.lists {
        Some(p) => Some(parse_lists(&read(p)?, e.vertex_count(), a.k)?),
        None => None,
    };
    let opts = DpOptions {
        mode: match a.mod_prime {
            Some(seed) => CountMode::ModPrime { seed },
            None => CountMode::Exact,
        },
        early_exit: !a.count,
        ..DpOptions::default()
    };
    let res = run(&e, a.k, lists.as_deref(), &opts)?;
    let colorable = res.is_colorable();

    let mut r = RunReport::default();
    r.set("input", a.expr.display());
    r.set("input_sha256", sha256_hex(&text));
    r.set("k", a.k);
    r.set("mode", if a.count { "count" } else { "decide" });
    r.set("colorable", yes_no(colorable));
    if a.count {
        r.set("count", &res.count);
    }
    if let Some(p) = res.modulus {
        r.set("modulus", p);
    }
    let s = &res.stats;
    r.set("vertices", e.vertex_count());
    r.set("width", e.width());
    r.set("peak_entries", s.peak_entries);
    r.set("max_live", s.max_live);
    r.set("intro_nodes", s.intro_nodes);
    r.set("union_nodes", s.union_nodes);
    r.set("rename_nodes", s.rename_nodes);
    r.set("join_nodes", s.join_nodes);
    r.set("stopped_early", s.stopped_early);
    r.set("threads", threads);
    r.set("wall_ms", start.elapsed().as_millis());
    r.print();
    Ok(colorable)
}

pub fn solve_mtw(a: &SolveMtwArgs, threads: usize) -> Result<bool> {
    let start = Instant::now();
    let text = read(&a.graph)?;
    let g = parse_graph(&text)?;
    let lists = match &a.lists {
        Some(p) => parse_lists(&read(p)?, g.vertex_count(), a.k)?,
        None => vec![cwcolor::ColorSet::full(a.k); g.vertex_count()],
    };
    let td = match &a.td {
        Some(p) => Some(parse_td_unchecked(&read(p)?)?),
        None => None,
    };
    let n = g.vertex_count();
    let inst = ListColoringInstance::new(g, a.k, lists)?;
    let (red, qtd) = quotient_with_td(&inst, td.as_ref())?;
    let rep = multicolor_report_td(&red.quotient, a.k, &qtd)?;

    let mut r = RunReport::default();
    r.set("input", a.graph.display());
    r.set("input_sha256", sha256_hex(&text));
    r.set("k", a.k);
    r.set("colorable", yes_no(rep.colorable));
    if let Some(reason) = &rep.reason {
        r.set("reason", reason);
    }
    r.set("vertices", n);
    r.set("quotient_vertices", red.quotient.graph.vertex_count());
    r.set("decomposition", if a.td.is_some() { "supplied" } else { "min-fill" });
    r.set("width", rep.width);
    r.set("peak_states", rep.peak_states);
    r.set("threads", threads);
    r.set("wall_ms", start.elapsed().as_millis());
    r.print();
    Ok(rep.colorable)
}
