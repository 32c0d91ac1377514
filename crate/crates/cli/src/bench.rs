use std::fmt::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use cwcolor::dp::{self, radix, CountResult, DpOptions};
use cwcolor::expr::{CwBuilder, CwExpr};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::write_atomic;
use crate::BenchArgs;

/// `K_w` with every vertex on its own label: all `w` labels stay live until
/// the joins at the top, after a random union tree over shuffled leaves.
pub fn distinct_label_clique(w: u32, seed: u64) -> CwExpr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = CwBuilder::new();
    let mut labels: Vec<u32> = (1..=w).collect();
    labels.shuffle(&mut rng);
    let mut parts: Vec<_> = labels.iter().map(|&l| b.intro(l)).collect();
    while parts.len() > 1 {
        let i = rng.gen_range(0..parts.len() - 1);
        let r = parts.remove(i + 1);
        parts[i] = b.union(parts[i], r);
    }
    let mut root = parts[0];
    for i in 1..=w {
        for j in i + 1..=w {
            root = b.join(i, j, root);
        }
    }
    b.finish(root).expect("well-formed expression")
}

pub fn run(a: &BenchArgs) -> Result<()> {
    let rows: Vec<(u32, u32)> = match a.profile.as_str() {
        "width-scaling" => (2..=a.max).map(|w| (a.k, w)).collect(),
        "k-scaling" => (2..=a.max).map(|k| (k, 2)).collect(),
        "empty" => Vec::new(),
        other => bail!("unknown bench profile `{other}` (width-scaling, k-scaling, empty)"),
    };
    let mut csv = String::from("k,width,n,peak_entries,wall_ms\n");
    for (k, w) in rows {
        for seed in 0..a.seeds {
            let e = distinct_label_clique(w, seed);
            let start = Instant::now();
            let res = run_dp(&e, k)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let s = &res.stats;
            let bound = (radix(k) as u128).pow(s.max_live as u32);
            if s.peak_entries as u128 > bound {
                bail!("k = {k}, width {w}: peak {} exceeds (2^k - 2)^{}", s.peak_entries, s.max_live);
            }
            writeln!(csv, "{k},{},{},{},{ms:.3}", e.width(), e.vertex_count(), s.peak_entries)?;
        }
    }
    write_atomic(&a.out, &csv)?;
    println!("wrote: {}", a.out.display());
    Ok(())
}

fn run_dp(e: &CwExpr, k: u32) -> cwcolor::Result<CountResult> {
    dp::run(e, k, None, &DpOptions::default())
}
