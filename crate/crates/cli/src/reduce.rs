use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cwcolor::dp::{run as run_dp, CountMode, DpOptions};
use cwcolor::graph::dimacs::{write_graph, write_lists};
use cwcolor::mtw::list_colorable_mtw;
use cwcolor::oracle::{brute_csp, brute_sat};
use cwcolor::reductions::{
    csp_to_coloring_cw, csp_to_coloring_mpw, eth_pipeline, parse_cnf, parse_csp, sat_to_csp, sha256_hex,
    verify_witness, GeneratedInstance, GroupingParams, Provenance, Witness,
};
use cwcolor::Error;

use crate::io::{output_path, read, write_atomic};
use crate::{OutArgs, ReduceCmd};

pub fn run(cmd: &ReduceCmd) -> Result<()> {
    match cmd {
        ReduceCmd::Sat2csp { cnf, b, t, out } => {
            let text = read(cnf)?;
            let f = parse_cnf(&text)?;
            let csp = sat_to_csp(&f, *b, *t)?;
            let params = GroupingParams::new(f.n, *b, *t)?;
            let mut prov = Provenance::default();
            prov.set("kind", "sat2csp");
            prov.set("source_sha256", sha256_hex(&text));
            prov.set("sat_vars", f.n);
            prov.set("clauses", f.clauses.len());
            prov.set("B", b);
            prov.set("t", t);
            prov.set("p", params.p);
            prov.set("groups", params.groups.len());
            prov.set("n", csp.n);
            prov.set("m", csp.constraints.len());
            prov.set("q", csp.q());
            fs::create_dir_all(&out.out)?;
            let files = [
                (output_path(&out.out, cnf, ".csp"), csp.to_text()),
                (output_path(&out.out, cnf, ".prov"), prov.to_text()),
            ];
            write_all(&files)?;
            if out.verify {
                match (brute_sat(&f), brute_csp(&csp)) {
                    (Ok(a), Ok(b)) if a == b => println!("verify: ok (satisfiable: {a})"),
                    (Ok(a), Ok(b)) => bail!("verify: formula satisfiable = {a} but CSP satisfiable = {b}"),
                    (Err(e), _) | (_, Err(e)) => println!("verify: ok (brute force skipped: {e})"),
                }
            }
            Ok(())
        }
        ReduceCmd::Csp2cw { csp, k, out } => {
            let text = read(csp)?;
            let c = parse_csp(&text)?;
            let g = csp_to_coloring_cw(&c, *k)?;
            emit(&g, csp, out, || brute_csp(&c))
        }
        ReduceCmd::Csp2mpw { csp, k, out } => {
            let text = read(csp)?;
            let c = parse_csp(&text)?;
            let g = csp_to_coloring_mpw(&c, *k)?;
            emit(&g, csp, out, || brute_csp(&c))
        }
        ReduceCmd::Eth { cnf, out } => {
            let text = read(cnf)?;
            let f = parse_cnf(&text)?;
            let g = eth_pipeline(&f)?;
            emit(&g, cnf, out, || brute_sat(&f))
        }
    }
}

fn write_all(files: &[(std::path::PathBuf, String)]) -> Result<()> {
    for (path, contents) in files {
        write_atomic(path, contents)?;
        println!("wrote: {}", path.display());
    }
    Ok(())
}

/// Writes the instance files, then optionally verifies against `oracle`.
fn emit(g: &GeneratedInstance, input: &Path, out: &OutArgs, oracle: impl FnOnce() -> cwcolor::Result<bool>) -> Result<()> {
    fs::create_dir_all(&out.out).with_context(|| format!("creating {}", out.out.display()))?;
    let witness = match &g.witness {
        Witness::Expr(e) => (output_path(&out.out, input, ".cwe"), e.serialize()),
        Witness::Td(td) => (output_path(&out.out, input, ".td"), td.to_text()),
    };
    let files = [
        (output_path(&out.out, input, ".graph"), write_graph(&g.instance.graph)),
        (output_path(&out.out, input, ".lists"), write_lists(&g.instance)),
        witness,
        (output_path(&out.out, input, ".plain.graph"), write_graph(&g.plain)),
        (output_path(&out.out, input, ".prov"), g.provenance.to_text()),
    ];
    write_all(&files)?;
    if out.verify {
        verify(g, oracle)?;
    }
    Ok(())
}

fn verify(g: &GeneratedInstance, oracle: impl FnOnce() -> cwcolor::Result<bool>) -> Result<()> {
    verify_witness(g).context("verify: witness does not match the instance")?;
    let expected = match oracle() {
        Ok(b) => b,
        Err(Error::OracleGuard(why)) => {
            println!("verify: ok (witness only; brute force skipped: {why})");
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let got = match &g.witness {
        Witness::Expr(e) => {
            let opts = DpOptions {
                mode: CountMode::Exact,
                early_exit: true,
                ..DpOptions::default()
            };
            run_dp(e, g.k(), Some(&g.instance.lists), &opts)?.is_colorable()
        }
        Witness::Td(td) => list_colorable_mtw(&g.instance, Some(td))?.colorable,
    };
    if got != expected {
        bail!("verify: instance colorable = {got} but source satisfiable = {expected}");
    }
    println!("verify: ok (colorable: {got})");
    Ok(())
}
