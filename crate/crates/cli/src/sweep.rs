//! `report sweep`: one CSV row per (run, seed), in spec order.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use lowrw::coloring::{
    low_rankwidth_coloring_of_power, treedepth_coloring, verify_low_rw_coloring, verify_td_coloring, Budget,
    ColoringProfile, PipelineOptions,
};
use lowrw::generators::row_coloring;
use lowrw::lab::{monochromatic_substructure, random_balanced_partition, verify_extraction, LowerBoundOutcome};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ctx::{unverified, Ctx};
use crate::gen::{self, Family, GenArgs, VariantArg};
use crate::lab::{certificate_run, random_coloring};

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Sweep spec JSON: `{"runs": [...]}`.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    /// Row coloring of `H_{n,m}` or its row-clique version, budget `3i`.
    RowColoring,
    /// Tree-depth coloring, checked on every union of at most `p` classes.
    Td,
    /// Low rank-width coloring of `G^r`.
    Lowrw,
    /// Matching certificate for a seeded balanced bipartition of a chain.
    Certificate,
    /// Monochromatic sub-chain of a seeded random coloring of a chain.
    Extract,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRun {
    #[serde(default)]
    pub name: Option<String>,
    pub family: Family,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub prob: Option<f64>,
    #[serde(default)]
    pub variant: VariantArg,
    pub pipeline: Pipeline,
    #[serde(default = "one")]
    pub p: usize,
    #[serde(default = "two")]
    pub r: usize,
    /// Colors for `extract`.
    #[serde(default = "two")]
    pub colors: usize,
    /// Target order for `extract`.
    #[serde(default = "two")]
    pub target: usize,
    #[serde(default = "zero_seed")]
    pub seeds: Vec<u64>,
}

fn one() -> usize {
    1
}
fn two() -> usize {
    2
}
fn zero_seed() -> Vec<u64> {
    vec![0]
}

#[derive(Deserialize, Serialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub runs: Vec<SweepRun>,
}

#[derive(Serialize, Debug, Default, Clone, PartialEq, Eq)]
pub struct Row {
    pub instance: String,
    pub pipeline: String,
    pub seed: u64,
    pub n: usize,
    pub palette: usize,
    /// Largest measured width for `i = 1..p`, `;`-separated.
    pub max_width: String,
    pub budget: String,
    pub verified: bool,
    pub achieved_order: String,
    pub elapsed_ms: u64,
    pub error: String,
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn fill_profile(row: &mut Row, prof: &ColoringProfile) {
    row.palette = prof.palette_size;
    row.max_width = join(&prof.measured);
    row.budget = join(prof.budget.iter().map(|b| b.map_or("-".to_string(), |q| q.to_string())));
    row.verified = prof.verified;
}

fn instance_name(run: &SweepRun) -> String {
    if let Some(name) = &run.name {
        return name.clone();
    }
    let mut s = serde_json::to_value(run.family).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    for (k, v) in [("n", run.n), ("m", run.m), ("d", run.d)] {
        if let Some(v) = v {
            s.push_str(&format!("-{k}{v}"));
        }
    }
    s
}

fn execute(run: &SweepRun, seed: u64, no_timing: bool) -> Row {
    let mut row = Row {
        instance: instance_name(run),
        pipeline: serde_json::to_value(run.pipeline).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        seed,
        ..Row::default()
    };
    let start = Instant::now();
    if let Err(e) = execute_inner(run, seed, &mut row) {
        row.verified = false;
        row.error = format!("{e:#}");
    }
    row.elapsed_ms = if no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    row
}

fn execute_inner(run: &SweepRun, seed: u64, row: &mut Row) -> Result<()> {
    let ctx = Ctx::new(seed, true, None);
    let args = GenArgs {
        family: run.family,
        n: run.n,
        m: run.m,
        d: run.d,
        prob: run.prob,
        variant: run.variant,
        rotations: None,
        input: None,
        output: None,
        labels: None,
        model: None,
    };
    let (g, _) = gen::build(&ctx, &args)?;
    row.n = g.n();
    match run.pipeline {
        Pipeline::RowColoring => {
            if !matches!(run.family, Family::H | Family::HTilde) {
                bail!("row-coloring needs family h or h-tilde");
            }
            let (n, m) = (run.n.context("n")?, run.m.context("m")?);
            let c = row_coloring(n, m, run.p);
            let prof = verify_low_rw_coloring(&g, &c, run.p, &Budget::Linear { factor: 3 })?;
            fill_profile(row, &prof);
        }
        Pipeline::Td => {
            let c = treedepth_coloring(&g, run.p)?;
            let rep = verify_td_coloring(&g, &c, run.p)?;
            row.palette = c.palette_size();
            row.verified = rep.verified;
        }
        Pipeline::Lowrw => {
            let opts = PipelineOptions {
                seed,
                ..PipelineOptions::default()
            };
            let rep = low_rankwidth_coloring_of_power(&g, run.r, run.p, &opts)?;
            fill_profile(row, &rep.profile);
            row.verified = rep.verified();
        }
        Pipeline::Certificate => {
            let order = run.n.context("certificate needs n (chain order)")?;
            let p = random_balanced_partition(order, seed);
            match certificate_run(&g, order, &p).map_err(anyhow::Error::msg)? {
                LowerBoundOutcome::Certificate(c) => {
                    row.achieved_order = c.order.to_string();
                    row.verified = c.order >= order / 12;
                }
                LowerBoundOutcome::Imbalance(r) => bail!("imbalance on a balanced partition: {r:?}"),
            }
        }
        Pipeline::Extract => {
            let order = run.n.context("extract needs n (chain order)")?;
            let c = random_coloring(g.n(), run.colors, seed);
            let rep = monochromatic_substructure(&g, order, &c, run.target, 1 << 20)?;
            verify_extraction(&g, &c, &rep)?;
            row.palette = run.colors;
            row.achieved_order = rep.achieved.to_string();
            row.verified = true;
        }
    }
    Ok(())
}

pub fn run(ctx: &Ctx, a: &SweepArgs) -> Result<()> {
    let spec: SweepSpec = ctx.read_json(&a.spec)?;
    let jobs: Vec<(&SweepRun, u64)> = spec.runs.iter().flat_map(|r| r.seeds.iter().map(move |&s| (r, s))).collect();
    let no_timing = ctx.no_timing;
    let rows: Vec<Row> = jobs.par_iter().map(|&(r, s)| execute(r, s, no_timing)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "instance",
            "pipeline",
            "seed",
            "n",
            "palette",
            "max_width",
            "budget",
            "verified",
            "achieved_order",
            "elapsed_ms",
            "error",
        ])?;
    }
    for row in &rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().context("flushing CSV")?;
    ctx.emit(a.output.as_deref(), &String::from_utf8(bytes)?)?;
    let failed = rows.iter().filter(|r| !r.verified).count();
    if failed > 0 {
        return Err(unverified(format!("{failed} of {} sweep rows failed", rows.len())));
    }
    Ok(())
}
