use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use lowrw::coloring::{
    excellent_refinement, good_refinement, low_rankwidth_coloring_of_power, treedepth_coloring_with,
    verify_low_rw_coloring_with, verify_td_coloring_capped, Budget, Coloring, PipelineOptions, RefinementColoring,
    TdColoringOptions, TdStrategy, VerifyOptions,
};
use lowrw::ehchi::{
    chi_product_coloring, class_decompositions_capped, cograph_extract, eh_witness_capped, greedy_degeneracy_coloring, is_cograph,
    kappa,
};
use lowrw::io::write_edge_list;
use lowrw::orderings::{wcol_exact, wcol_heuristic};
use lowrw::width::{
    rank_width_by_components, rank_width_exact_capped, rank_width_upper, tree_depth_exact_capped, OrderStrategy,
    RankDecomposition, WidthReport,
};
use lowrw::Graph;
use serde_json::json;

use crate::ctx::{unverified, Ctx};
use crate::{
    gen, lab, sweep, ChiCmd, ColorCmd, Command, EhCmd, EhMode, RefineMode, ReportCmd, TdStrategyArg, VerifyCmd,
    VerifyMode, WidthCmd,
};

pub fn dispatch(ctx: &Ctx, command: Command) -> Result<()> {
    match command {
        Command::Gen(a) => gen::run(ctx, &a),
        Command::Power { r, input, output } => {
            let g = ctx.read_graph(&input)?;
            ctx.emit(output.as_deref(), &write_edge_list(&g.power(r)?))
        }
        Command::Wcol {
            r,
            input,
            exact,
            output,
        } => {
            let g = ctx.read_graph(&input)?;
            let (value, order, method) = if exact {
                let (v, o) = wcol_exact(&g, r)?;
                (v, o, "exact")
            } else {
                let (v, o) = wcol_heuristic(&g, r);
                (v, o, "heuristic")
            };
            ctx.emit_json(output.as_deref(), &json!({"r": r, "value": value, "method": method, "order": order}))
        }
        Command::Color(c) => color(ctx, c),
        Command::Verify(v) => verify(ctx, v),
        Command::Width(w) => width(ctx, w),
        Command::Lab(l) => lab::run(ctx, l),
        Command::Eh(e) => eh(ctx, e),
        Command::Chi(ChiCmd::Product {
            input,
            coloring,
            output,
        }) => {
            let g = ctx.read_graph(&input)?;
            let c: Coloring = ctx.read_json(&coloring)?;
            let pc = chi_product_coloring(&g, &c, greedy_degeneracy_coloring).map_err(|e| unverified(e.to_string()))?;
            ctx.emit_json(output.as_deref(), &pc)
        }
        Command::Report(ReportCmd::Sweep(a)) => sweep::run(ctx, &a),
        Command::Report(ReportCmd::Replay { .. }) => unreachable!("handled by the caller"),
    }
}

fn color(ctx: &Ctx, cmd: ColorCmd) -> Result<()> {
    match cmd {
        ColorCmd::Td {
            p,
            input,
            output,
            strategy,
        } => {
            let g = ctx.read_graph(&input)?;
            let opts = TdColoringOptions {
                strategy: match strategy {
                    TdStrategyArg::Auto => TdStrategy::Auto,
                    TdStrategyArg::ExactSmall => TdStrategy::ExactSmall,
                    TdStrategyArg::WcolGreedy => TdStrategy::WcolGreedy,
                },
                ..TdColoringOptions::default()
            };
            let c = treedepth_coloring_with(&g, p, &opts)?;
            ctx.emit_json(output.as_deref(), &c)
        }
        ColorCmd::Refine {
            mode,
            r,
            input,
            coloring,
            output,
        } => {
            let g = ctx.read_graph(&input)?;
            let base: Coloring = ctx.read_json(&coloring)?;
            let refined = match mode {
                RefineMode::Good => good_refinement(&g, &base, r, &wcol_heuristic(&g, r).1)?,
                RefineMode::Excellent => {
                    let orders: Vec<_> = (2..=r).map(|l| wcol_heuristic(&g, l).1).collect();
                    excellent_refinement(&g, &base, r, &orders)?
                }
            };
            ctx.emit_json(output.as_deref(), &refined)
        }
        ColorCmd::Lowrw {
            r,
            p,
            input,
            output,
            profile,
            samples,
        } => {
            let g = ctx.read_graph(&input)?;
            let opts = PipelineOptions {
                random_samples: samples,
                seed: ctx.seed,
                ..PipelineOptions::default()
            };
            let report = low_rankwidth_coloring_of_power(&g, r, p, &opts)?;
            ctx.emit_json(output.as_deref(), &report.coloring)?;
            if let Some(path) = &profile {
                ctx.emit_json(
                    Some(path),
                    &json!({
                        "profile": report.profile,
                        "wcols": report.wcols,
                        "d_r": report.d_r,
                        "td_classes": report.td_classes,
                        "power_checks": report.power_checks,
                        "power_violations": report.power_violations,
                        "seed": report.seed,
                    }),
                )?;
            }
            if !report.verified() {
                return Err(unverified(format!(
                    "{} width violations, {} power-equality violations",
                    report.profile.violations.len(),
                    report.power_violations.len()
                )));
            }
            Ok(())
        }
    }
}

/// `unbounded`, `linear:F`, `tdpower:R,D`, `table:Q1,Q2,...`, or Budget JSON.
pub fn parse_budget(s: &str) -> Result<Budget> {
    let nums = |body: &str| -> Result<Vec<u64>> {
        body.split(',')
            .map(|x| x.trim().parse::<u64>().with_context(|| format!("bad number `{x}` in budget")))
            .collect()
    };
    if s.trim_start().starts_with('{') {
        return serde_json::from_str(s).context("budget JSON");
    }
    let (kind, body) = s.split_once(':').unwrap_or((s, ""));
    Ok(match kind {
        "unbounded" => Budget::Unbounded,
        "linear" => Budget::Linear {
            factor: nums(body)?.first().copied().context("linear:F")?,
        },
        "tdpower" => match nums(body)?[..] {
            [r, d] => Budget::TreeDepthPower { r, d },
            _ => bail!("tdpower needs R,D"),
        },
        "table" => Budget::Table { values: nums(body)? },
        other => bail!("unknown budget kind `{other}`"),
    })
}

fn verify(ctx: &Ctx, cmd: VerifyCmd) -> Result<()> {
    match cmd {
        VerifyCmd::Coloring {
            mode,
            p,
            input,
            coloring,
            budget,
            exact_cap,
            profile,
        } => {
            let g = ctx.read_graph(&input)?;
            let text = ctx.read_text(&coloring)?;
            let c: Coloring = serde_json::from_str(&text).context("parsing coloring JSON")?;
            match mode {
                VerifyMode::Td => {
                    let report = verify_td_coloring_capped(&g, &c, p, exact_cap.max(14))?;
                    ctx.emit_json(profile.as_deref(), &report)?;
                    if !report.verified {
                        return Err(unverified(format!("tree-depth violation {:?}", report.violation)));
                    }
                }
                VerifyMode::Lowrw => {
                    let budget = match budget {
                        Some(b) => parse_budget(&b)?,
                        None => match serde_json::from_str::<RefinementColoring>(&text) {
                            Ok(rc) => Budget::TreeDepthPower {
                                r: rc.radius() as u64,
                                d: rc.d_product(),
                            },
                            Err(_) => Budget::Unbounded,
                        },
                    };
                    let opts = VerifyOptions { exact_cap };
                    let prof = verify_low_rw_coloring_with(&g, &c, p, &budget, &opts)?;
                    ctx.emit_json(profile.as_deref(), &prof)?;
                    if !prof.verified {
                        return Err(unverified(format!("{} unions exceed the budget", prof.violations.len())));
                    }
                }
            }
            Ok(())
        }
        VerifyCmd::Decomposition {
            input,
            decomposition,
            max_width,
        } => {
            let g = ctx.read_graph(&input)?;
            let d: RankDecomposition = ctx.read_json(&decomposition)?;
            let w = d.width(&g).map_err(|e| unverified(e.to_string()))?;
            ctx.emit_json(None, &json!({"valid": true, "width": w}))?;
            if let Some(max) = max_width.filter(|&m| w > m) {
                return Err(unverified(format!("width {w} exceeds {max}")));
            }
            Ok(())
        }
    }
}

fn width(ctx: &Ctx, cmd: WidthCmd) -> Result<()> {
    match cmd {
        WidthCmd::Rank {
            input,
            exact,
            upper,
            cap,
            decomposition,
            output,
        } => {
            let g = ctx.read_graph(&input)?;
            let mut report: WidthReport = if exact {
                rank_width_exact_capped(&g, cap)?
            } else if upper {
                rank_width_upper(&g, OrderStrategy::Best)
            } else {
                rank_width_by_components(&g, cap)
            };
            if ctx.no_timing {
                report.elapsed = std::time::Duration::ZERO;
            }
            if let Some(path) = &decomposition {
                let d = report.decomposition.as_ref().context("graphs on one vertex have no decomposition")?;
                ctx.emit_json(Some(path), d)?;
            }
            ctx.emit_json(output.as_deref(), &report)
        }
        WidthCmd::Treedepth { input, cap, output } => {
            let g = ctx.read_graph(&input)?;
            let start = Instant::now();
            let value = tree_depth_exact_capped(&g, cap)?;
            ctx.emit_json(
                output.as_deref(),
                &json!({"value": value, "method": "exact", "elapsed_ms": ctx.millis(start.elapsed())}),
            )
        }
    }
}

/// Decomposition of `g` of the smallest width available: exact when small.
fn best_decomposition(g: &Graph, cap: usize) -> Result<(usize, Option<RankDecomposition>)> {
    let upper = rank_width_upper(g, OrderStrategy::Best);
    if g.n() <= cap {
        let exact = rank_width_exact_capped(g, cap)?;
        if exact.value < upper.value {
            return Ok((exact.value, exact.decomposition));
        }
    }
    Ok((upper.value, upper.decomposition))
}

fn eh(ctx: &Ctx, cmd: EhCmd) -> Result<()> {
    let EhCmd::Extract {
        input,
        mode,
        coloring,
        r1,
        exact_cap,
        output,
    } = cmd;
    let g = ctx.read_graph(&input)?;
    match mode {
        EhMode::Cograph => {
            let (w, d) = best_decomposition(&g, exact_cap)?;
            let p = r1.unwrap_or(w);
            let set = cograph_extract(&g, d.as_ref(), p).map_err(|e| unverified(e.to_string()))?;
            let (sub, map) = g.induced_subgraph(&set)?;
            let tree = is_cograph(&sub).context("extracted set is not a cograph")?;
            emit_cograph(ctx, output.as_deref(), &set.to_vec(), p, g.n(), &tree, &map)
        }
        EhMode::Witness => {
            let c: Coloring = match &coloring {
                Some(path) => ctx.read_json(path)?,
                None => Coloring::constant(g.n()),
            };
            let r1 = match r1 {
                Some(r) => r,
                None => class_r1(&g, &c, exact_cap)?,
            };
            let (witness, params) = eh_witness_capped(&g, &c, r1, exact_cap).map_err(|e| unverified(e.to_string()))?;
            let mut v = serde_json::to_value(&witness)?;
            v["params"] = serde_json::to_value(params)?;
            ctx.emit_json(output.as_deref(), &v)
        }
    }
}

fn emit_cograph(
    ctx: &Ctx,
    output: Option<&Path>,
    vertices: &[usize],
    p: usize,
    n: usize,
    tree: &lowrw::ehchi::Cotree,
    map: &[usize],
) -> Result<()> {
    // The cotree is over the subgraph; rename leaves to host ids.
    let mut t = serde_json::to_value(tree)?;
    fn rename(v: &mut serde_json::Value, map: &[usize]) {
        if let Some(x) = v.get("vertex").and_then(|x| x.as_u64()) {
            v["vertex"] = json!(map[x as usize]);
        }
        if let Some(children) = v.get_mut("children").and_then(|c| c.as_array_mut()) {
            children.iter_mut().for_each(|c| rename(c, map));
        }
    }
    rename(&mut t, map);
    ctx.emit_json(
        output,
        &json!({"vertices": vertices, "p": p, "n": n, "kappa": kappa(p), "cotree": t}),
    )
}

/// Smallest `r1` the classes can be certified for.
fn class_r1(g: &Graph, c: &Coloring, cap: usize) -> Result<usize> {
    let mut r1 = 0;
    for color in c.used_colors() {
        let (sub, _) = g.induced_subgraph(&c.class(color))?;
        r1 = r1.max(best_decomposition(&sub, cap)?.0);
    }
    class_decompositions_capped(g, c, r1, cap)?;
    Ok(r1)
}
