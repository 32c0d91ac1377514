mod bench;
mod io;
mod reduce;
mod report;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cwcolor", version, about = "Exact graph coloring over clique-width expressions and modular tree decompositions")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count or decide colorings of a clique-width expression (`.cwe`).
    SolveCw(SolveCwArgs),
    /// Decide k-colorability of a DIMACS graph through its twin quotient.
    SolveMtw(SolveMtwArgs),
    /// Generate instances from SAT or CSP inputs.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Measure DP table sizes on expression families and write a CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
pub struct SolveCwArgs {
    pub expr: PathBuf,
    #[arg(short)]
    pub k: u32,
    /// Print the exact number of colorings.
    #[arg(long, conflicts_with = "decide")]
    pub count: bool,
    /// Only decide colorability, stopping at the first empty table (default).
    #[arg(long)]
    pub decide: bool,
    /// Count modulo a random 62-bit prime drawn from this seed.
    #[arg(long, value_name = "SEED")]
    pub mod_prime: Option<u64>,
    /// Color lists (`l <v> <c...>` lines); vertices are in leaf order.
    #[arg(long)]
    pub lists: Option<PathBuf>,
}

#[derive(Args)]
pub struct SolveMtwArgs {
    pub graph: PathBuf,
    #[arg(short)]
    pub k: u32,
    /// PACE `.td` decomposition of the graph or of its twin quotient.
    #[arg(long)]
    pub td: Option<PathBuf>,
    #[arg(long)]
    pub lists: Option<PathBuf>,
}

#[derive(Args)]
pub struct OutArgs {
    /// Output directory; files are named after the input.
    #[arg(short, long, default_value = ".")]
    pub out: PathBuf,
    /// Re-check the witness and, when small enough, compare against brute force.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Subcommand)]
pub enum ReduceCmd {
    /// DIMACS CNF to CSP by grouping `t` variables into base-`B` digits.
    Sat2csp {
        cnf: PathBuf,
        #[arg(short = 'B')]
        b: u32,
        #[arg(short)]
        t: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// CSP over `2^k - 2` values to list coloring with a clique-width expression.
    Csp2cw {
        csp: PathBuf,
        #[arg(short)]
        k: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// CSP over `C(k, k/2)` values to list coloring with a quotient path decomposition.
    Csp2mpw {
        csp: PathBuf,
        #[arg(short)]
        k: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// 3-CNF through the grouped CSP to list coloring with a quotient path decomposition.
    Eth {
        cnf: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
pub struct BenchArgs {
    /// `width-scaling`, `k-scaling` or `empty`.
    pub profile: String,
    /// Number of seeds per row; each seed shuffles the union tree.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(short, default_value_t = 3)]
    pub k: u32,
    /// Largest width (width-scaling) or largest k (k-scaling).
    #[arg(long, default_value_t = 6)]
    pub max: u32,
    #[arg(long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = io::threads().and_then(|threads| match cli.cmd {
        Command::SolveCw(a) => solve::solve_cw(&a, threads),
        Command::SolveMtw(a) => solve::solve_mtw(&a, threads),
        Command::Reduce(r) => reduce::run(&r).map(|()| true),
        Command::Bench(b) => bench::run(&b).map(|()| true),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
