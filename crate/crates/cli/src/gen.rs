use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use lowrw::generators::{self as gens, ChainVariant, RotationSystem};
use lowrw::io::{write_edge_list, write_labels};
use lowrw::Graph;
use serde::{Deserialize, Serialize};

use crate::ctx::Ctx;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// H_{n,m}: n rows of m vertices (`--n`, `--m`).
    H,
    /// H_{n,m} with every row a clique.
    HTilde,
    /// Twisted chain of order `--n` (`--variant`).
    Chain,
    /// Intersection graph of the interval model, in twisted chain ids.
    IntervalModel,
    /// Intersection graph of the segment model, in twisted chain ids.
    SegmentModel,
    /// `--n` x `--m` grid.
    Grid,
    Path,
    Cycle,
    /// Star with `--n` leaves.
    Star,
    /// Random `--d`-degenerate graph on `--n` vertices.
    Degenerate,
    /// G(n, p) with `--prob`.
    Gnp,
    /// Random cograph on `--n` vertices.
    Cograph,
    /// Map graph of a plane embedding (`--rotations`, or the `--n` x `--m` grid).
    Map,
    /// Line graph of `--input`.
    Line,
}

#[derive(Copy, Clone, Debug, Default, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantArg {
    #[default]
    Bare,
    Interval,
    PermutationDerived,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub prob: Option<f64>,
    #[arg(long, value_enum, default_value_t = VariantArg::Bare)]
    pub variant: VariantArg,
    /// Rotation system JSON for `map`.
    #[arg(long)]
    pub rotations: Option<PathBuf>,
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Label sidecar output (families with labels).
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Model JSON output (`interval-model`, `segment-model`).
    #[arg(long)]
    pub model: Option<PathBuf>,
}

fn need(v: Option<usize>, flag: &str, family: Family) -> Result<usize> {
    match v {
        Some(0) => bail!("--{flag} must be positive for {family:?}"),
        Some(x) => Ok(x),
        None => bail!("{family:?} needs --{flag}"),
    }
}

/// Builds the requested graph; also returns model JSON where relevant.
pub fn build(ctx: &Ctx, a: &GenArgs) -> Result<(Graph, Option<String>)> {
    let f = a.family;
    let n = || need(a.n, "n", f);
    let m = || need(a.m, "m", f);
    let g = match f {
        Family::H => gens::h_graph(n()?, m()?),
        Family::HTilde => gens::h_tilde(n()?, m()?),
        Family::Chain => {
            let variant = match a.variant {
                VariantArg::Bare => ChainVariant::Bare,
                VariantArg::Interval => ChainVariant::Interval,
                VariantArg::PermutationDerived => ChainVariant::PermutationDerived,
            };
            gens::twisted_chain(n()?, variant)
        }
        Family::IntervalModel => {
            let order = n()?;
            let model = gens::interval_model(order);
            let json = serde_json::json!({ "intervals": model.intervals, "relabel": model.relabel });
            let labels = chain_labels(order);
            return Ok((model.chain_graph().set_labels(labels)?, Some(json.to_string() + "\n")));
        }
        Family::SegmentModel => {
            let order = n()?;
            let model = gens::segment_model(order);
            let json = serde_json::json!({ "segments": model.segments, "relabel": model.relabel });
            let labels = chain_labels(order);
            return Ok((model.chain_graph().set_labels(labels)?, Some(json.to_string() + "\n")));
        }
        Family::Grid => gens::grid(n()?, m()?),
        Family::Path => gens::path(n()?),
        Family::Cycle => gens::cycle(n()?),
        Family::Star => gens::star(a.n.context("star needs --n")?),
        Family::Degenerate => gens::random_degenerate(n()?, a.d.context("degenerate needs --d")?, ctx.seed),
        Family::Gnp => {
            let p = a.prob.context("gnp needs --prob")?;
            if !(0.0..=1.0).contains(&p) {
                bail!("--prob must lie in [0, 1]");
            }
            gens::gnp(n()?, p, ctx.seed)
        }
        Family::Cograph => gens::random_cograph(n()?, ctx.seed),
        Family::Map => {
            let rs: RotationSystem = match &a.rotations {
                Some(path) => ctx.read_json(path)?,
                None => gens::grid_rotation_system(n()?, m()?),
            };
            gens::radial_square_map_graph(&rs)?
        }
        Family::Line => {
            let path = a.input.as_ref().context("line needs --input")?;
            gens::line_graph(&ctx.read_graph(path)?)?
        }
    };
    Ok((g, None))
}

fn chain_labels(order: usize) -> Vec<lowrw::labels::VertexLabel> {
    gens::twisted_chain(order, ChainVariant::Bare)
        .labels()
        .expect("chains carry labels")
        .to_vec()
}

pub fn run(ctx: &Ctx, a: &GenArgs) -> Result<()> {
    let (g, model) = build(ctx, a)?;
    ctx.emit(a.output.as_deref(), &write_edge_list(&g))?;
    if let Some(path) = &a.labels {
        let labels = g.labels().context("this family has no labels")?;
        ctx.emit(Some(path), &write_labels(labels))?;
    }
    if let Some(path) = &a.model {
        let json = model.context("only interval-model and segment-model have a model")?;
        ctx.emit(Some(path), &json)?;
    }
    Ok(())
}
