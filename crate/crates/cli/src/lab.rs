use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Subcommand;
use lowrw::coloring::Coloring;
use lowrw::generators::{twisted_chain, ChainVariant};
use lowrw::lab::{
    certificate_rank, lower_bound_certificate, monochromatic_substructure, random_balanced_partition, ramsey_bireduce,
    verify_extraction, Bipartition, LowerBoundOutcome, MatchingCertificate,
};
use lowrw::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::ctx::{unverified, Ctx};

#[derive(Subcommand, Debug)]
pub enum LabCmd {
    /// Ordered-matching certificate for a bipartition of a twisted chain.
    Certificate {
        /// Order of the twisted chain.
        #[arg(short)]
        m: usize,
        /// Host graph (defaults to the bare chain of order m).
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Bipartition JSON; otherwise a seeded random balanced one.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Check this certificate instead of searching.
        #[arg(long)]
        check: Option<PathBuf>,
        /// Harness mode: this many seeds from `--seed`, CSV out.
        #[arg(long)]
        runs: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Monochromatic k x k blocks of seeded random functions.
    Ramsey {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        d: usize,
        /// Side length of the grid.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        runs: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Monochromatic twisted chains inside colored ones.
    Extract {
        /// Order of the host chain.
        #[arg(short)]
        m: usize,
        /// Colors of the seeded random colorings.
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 2)]
        target: usize,
        /// Coloring JSON of the host (single run).
        #[arg(short, long)]
        coloring: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        runs: u64,
        #[arg(long, default_value_t = 1 << 20)]
        node_budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn host(ctx: &Ctx, m: usize, input: &Option<PathBuf>) -> Result<Graph> {
    match input {
        Some(p) => ctx.read_graph(p),
        None => Ok(twisted_chain(m, ChainVariant::Bare)),
    }
}

/// Certificate order, or `None` with a reason.
pub fn certificate_run(g: &Graph, m: usize, partition: &Bipartition) -> Result<LowerBoundOutcome, String> {
    let outcome = lower_bound_certificate(g, m, partition).map_err(|e| e.to_string())?;
    if let LowerBoundOutcome::Certificate(cert) = &outcome {
        cert.check_sides(partition).map_err(|e| e.to_string())?;
        let rank = certificate_rank(g, cert).map_err(|e| e.to_string())?;
        if rank != cert.order {
            return Err(format!("rank {rank} but order {}", cert.order));
        }
    }
    Ok(outcome)
}

fn csv_rows<F>(seeds: Vec<u64>, header: &str, f: F) -> (String, bool)
where
    F: Fn(u64) -> (String, bool) + Sync,
{
    let rows: Vec<(String, bool)> = seeds.par_iter().map(|&s| f(s)).collect();
    let mut out = format!("{header}\n");
    let mut ok = true;
    for (row, good) in rows {
        out.push_str(&row);
        out.push('\n');
        ok &= good;
    }
    (out, ok)
}

pub fn run(ctx: &Ctx, cmd: LabCmd) -> Result<()> {
    match cmd {
        LabCmd::Certificate {
            m,
            input,
            partition,
            check,
            runs,
            output,
        } => {
            let g = host(ctx, m, &input)?;
            if let Some(runs) = runs {
                let seeds: Vec<u64> = (ctx.seed..ctx.seed + runs).collect();
                let (csv, ok) = csv_rows(seeds, "seed,achieved_order,verified", |s| {
                    let p = random_balanced_partition(m, s);
                    match certificate_run(&g, m, &p) {
                        Ok(LowerBoundOutcome::Certificate(c)) => {
                            let good = c.order >= m / 12;
                            (format!("{s},{},{good}", c.order), good)
                        }
                        _ => (format!("{s},0,false"), false),
                    }
                });
                ctx.emit(output.as_deref(), &csv)?;
                if !ok {
                    return Err(unverified("some runs produced no valid certificate"));
                }
                return Ok(());
            }
            let p: Bipartition = match &partition {
                Some(path) => ctx.read_json(path)?,
                None => random_balanced_partition(m, ctx.seed),
            };
            if p.len() != g.n() {
                bail!("partition covers {} vertices, graph has {}", p.len(), g.n());
            }
            if let Some(path) = &check {
                let cert: MatchingCertificate = ctx.read_json(path)?;
                cert.check_sides(&p).map_err(|e| unverified(e.to_string()))?;
                let rank = certificate_rank(&g, &cert).map_err(|e| unverified(e.to_string()))?;
                ctx.emit_json(output.as_deref(), &json!({"order": cert.order, "rank": rank}))?;
                if rank != cert.order {
                    return Err(unverified(format!("rank {rank} below order {}", cert.order)));
                }
                return Ok(());
            }
            let outcome = certificate_run(&g, m, &p).map_err(unverified)?;
            ctx.emit_json(output.as_deref(), &outcome)
        }
        LabCmd::Ramsey {
            k,
            d,
            size,
            runs,
            output,
        } => {
            if d == 0 {
                bail!("-d must be positive");
            }
            let seeds: Vec<u64> = (ctx.seed..ctx.seed + runs).collect();
            let (csv, ok) = csv_rows(seeds, "seed,achieved_order,verified,guaranteed", |s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let table: Vec<Vec<usize>> = (0..size).map(|_| (0..size).map(|_| rng.gen_range(1..=d)).collect()).collect();
                let f = |x: usize, y: usize| table[x][y];
                let idx: Vec<usize> = (0..size).collect();
                let r = ramsey_bireduce(&idx, &idx, f, k, d);
                let constant = r.xs.iter().all(|&x| r.ys.iter().all(|&y| Some(f(x, y)) == r.value));
                let good = constant && r.complete;
                (
                    format!("{s},{},{good},{}", r.xs.len().min(r.ys.len()), r.guaranteed),
                    constant && (good || !r.guaranteed),
                )
            });
            ctx.emit(output.as_deref(), &csv)?;
            if !ok {
                return Err(unverified("a guaranteed block was not found"));
            }
            Ok(())
        }
        LabCmd::Extract {
            m,
            colors,
            target,
            coloring,
            runs,
            node_budget,
            output,
        } => {
            let g = twisted_chain(m, ChainVariant::Bare);
            if let Some(path) = &coloring {
                let c: Coloring = ctx.read_json(path)?;
                let rep = monochromatic_substructure(&g, m, &c, target, node_budget)?;
                verify_extraction(&g, &c, &rep).map_err(|e| unverified(e.to_string()))?;
                return ctx.emit_json(output.as_deref(), &rep);
            }
            if colors == 0 {
                bail!("--colors must be positive");
            }
            let seeds: Vec<u64> = (ctx.seed..ctx.seed + runs).collect();
            let (csv, ok) = csv_rows(seeds, "seed,achieved_order,verified", |s| {
                let c = random_coloring(g.n(), colors, s);
                match monochromatic_substructure(&g, m, &c, target, node_budget) {
                    Ok(rep) => {
                        let good = verify_extraction(&g, &c, &rep).is_ok();
                        let mut row = String::new();
                        let _ = write!(row, "{s},{},{good}", rep.achieved);
                        (row, good)
                    }
                    Err(_) => (format!("{s},0,false"), false),
                }
            });
            ctx.emit(output.as_deref(), &csv)?;
            if !ok {
                return Err(unverified("an extracted substructure failed verification"));
            }
            Ok(())
        }
    }
}

pub fn random_coloring(n: usize, d: usize, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = (0..n).map(|_| rng.gen_range(1..=d)).collect();
    Coloring::with_palette(colors, d).expect("colors in range")
}
