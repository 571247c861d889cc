mod commands;
mod ctx;
mod gen;
mod lab;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::ctx::{Ctx, Unverified};

pub const OUT_DIR_ENV: &str = "LOWRW_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "lowrw", version, about = "Low rank-width colorings: build, verify, and probe their limits")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write a run manifest here; `report replay` reruns it.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Report elapsed times as 0 so outputs are byte-reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph family as an edge list.
    Gen(gen::GenArgs),
    /// r-th power of a graph.
    Power {
        #[arg(short)]
        r: usize,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Weak r-coloring number of a vertex order.
    Wcol {
        #[arg(short)]
        r: usize,
        #[arg(short, long)]
        input: PathBuf,
        /// Minimize over all orders (small graphs only).
        #[arg(long)]
        exact: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tree-depth colorings, refinements and the power pipeline.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Check colorings and decompositions.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Rank-width and tree-depth.
    #[command(subcommand)]
    Width(WidthCmd),
    /// Lower-bound experiments on twisted chains.
    #[command(subcommand)]
    Lab(lab::LabCmd),
    /// Cliques, independent sets and cographs from low-width colorings.
    #[command(subcommand)]
    Eh(EhCmd),
    /// Proper colorings built class by class.
    #[command(subcommand)]
    Chi(ChiCmd),
    /// Sweeps and manifest replays.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum TdStrategyArg {
    Auto,
    ExactSmall,
    WcolGreedy,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum RefineMode {
    Good,
    Excellent,
}

#[derive(Subcommand, Debug)]
pub enum ColorCmd {
    /// A coloring where any p classes induce tree-depth at most their count.
    Td {
        #[arg(short)]
        p: usize,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TdStrategyArg::Auto)]
        strategy: TdStrategyArg,
    },
    /// Refine a base coloring along weak-reachability orders.
    Refine {
        #[arg(long, value_enum, default_value_t = RefineMode::Excellent)]
        mode: RefineMode,
        #[arg(short)]
        r: usize,
        #[arg(short, long)]
        input: PathBuf,
        /// Base coloring JSON.
        #[arg(short, long)]
        coloring: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Color G so that the coloring has low rank-width on G^r.
    Lowrw {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        p: usize,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the verification profile here.
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Random sets checked for power equality.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum VerifyMode {
    Lowrw,
    Td,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Check a coloring: rank-width (lowrw) or tree-depth (td) of class unions.
    Coloring {
        #[arg(long, value_enum, default_value_t = VerifyMode::Lowrw)]
        mode: VerifyMode,
        #[arg(short)]
        p: usize,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        coloring: PathBuf,
        /// `unbounded`, `linear:F`, `tdpower:R,D`, `table:Q1,Q2,..` or JSON.
        /// Defaults to the budget recorded in a refinement coloring.
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, default_value_t = 12)]
        exact_cap: usize,
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Check a rank decomposition and report its width.
    Decomposition {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        decomposition: PathBuf,
        /// Fail if the width exceeds this.
        #[arg(long)]
        max_width: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum WidthCmd {
    /// Rank-width: exact on small components, an upper bound otherwise.
    Rank {
        #[arg(short, long)]
        input: PathBuf,
        /// Require an exact value for the whole graph.
        #[arg(long, conflicts_with = "upper")]
        exact: bool,
        /// Only the caterpillar upper bound.
        #[arg(long)]
        upper: bool,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        /// Write the witness decomposition here.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact tree-depth.
    Treedepth {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 14)]
        cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum EhMode {
    Witness,
    Cograph,
}

#[derive(Subcommand, Debug)]
pub enum EhCmd {
    /// A clique or independent set (witness) or an induced cograph.
    Extract {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = EhMode::Witness)]
        mode: EhMode,
        /// Coloring whose classes have rank-width at most `--r1` (default:
        /// one class).
        #[arg(short, long)]
        coloring: Option<PathBuf>,
        /// Class width bound; measured when omitted.
        #[arg(long)]
        r1: Option<usize>,
        /// Largest class (or graph) solved exactly.
        #[arg(long, default_value_t = 12)]
        exact_cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChiCmd {
    /// Proper coloring from a class coloring and greedy colorings of classes.
    Product {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        coloring: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReportCmd {
    /// Run a sweep spec and write one CSV row per run.
    Sweep(sweep::SweepArgs),
    /// Rerun the command recorded in a manifest.
    Replay {
        #[arg(long = "from")]
        from: PathBuf,
    },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub seed: u64,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub elapsed_ms: u64,
}

/// Arguments without the program name and any `--manifest` option.
fn recorded_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}

fn run(cli: Cli, argv: &[String]) -> Result<()> {
    if let Some(t) = cli.threads {
        // A second call (replays) keeps the first pool; that is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let ctx = Ctx::new(cli.seed, cli.no_timing, out_dir);
    let start = Instant::now();
    let result = match cli.command {
        Command::Report(ReportCmd::Replay { from }) => {
            let m: RunManifest = ctx.read_json(&from)?;
            let mut args = vec!["lowrw".to_string()];
            args.extend(m.command.iter().cloned());
            let replayed = Cli::try_parse_from(&args).context("manifest command does not parse")?;
            run(replayed, &args)
        }
        command => commands::dispatch(&ctx, command),
    };
    if let Some(path) = &cli.manifest {
        let m = RunManifest {
            tool: "lowrw".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: recorded_args(argv),
            seed: cli.seed,
            inputs: ctx.inputs.borrow().clone(),
            outputs: ctx.outputs.borrow().clone(),
            elapsed_ms: ctx.millis(start.elapsed()),
        };
        ctx.emit_json(Some(path), &m)?;
    }
    result
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<Unverified>().is_some() => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
