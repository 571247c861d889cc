//! Monochromatic blocks in colored grids, and their use to pull a smaller
//! twisted chain with monochromatic parts out of a colored one.

use serde::{Deserialize, Serialize};

use super::LabError;
use crate::bitset::BitSet;
use crate::coloring::Coloring;
use crate::generators::{twisted_chain_id, ChainVariant};
use crate::graph::Graph;
use crate::labels::{ChainLabel, VertexLabel};

/// `k * d^(d k)`, or `None` on overflow.
pub fn ramsey_bound(k: usize, d: usize) -> Option<usize> {
    let exp = u32::try_from(d.checked_mul(k)?).ok()?;
    d.checked_pow(exp)?.checked_mul(k)
}

/// A block `xs x ys` on which `f` is constant (`value`). `complete` means
/// both sides reached the requested size; `guaranteed` means the input was
/// large enough for that to be forced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyResult {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub value: Option<usize>,
    pub guaranteed: bool,
    pub complete: bool,
}

/// Largest `t` and rows `R`, `|R| >= t`, whose masks share at least `t`
/// columns, up to `target`. Depth-first over rows with the bound
/// `min(|R| + rows left, |common|)`. Returns the block and whether the
/// search finished within `budget` nodes.
pub(crate) fn max_square_block(masks: &[BitSet], width: usize, target: usize, budget: u64) -> (Vec<usize>, BitSet, bool) {
    struct Search<'a> {
        masks: &'a [BitSet],
        target: usize,
        budget: u64,
        nodes: u64,
        best: usize,
        best_rows: Vec<usize>,
        best_cols: BitSet,
    }
    impl Search<'_> {
        fn dfs(&mut self, next: usize, rows: &mut Vec<usize>, common: &BitSet) {
            self.nodes += 1;
            let value = rows.len().min(common.count());
            if value > self.best {
                self.best = value;
                self.best_rows = rows.clone();
                self.best_cols = common.clone();
            }
            if self.best >= self.target || self.nodes >= self.budget {
                return;
            }
            let left = self.masks.len() - next;
            if (rows.len() + left).min(common.count()) <= self.best {
                return;
            }
            for i in next..self.masks.len() {
                let inter = common.intersection(&self.masks[i]);
                if inter.count() <= self.best {
                    continue;
                }
                rows.push(i);
                self.dfs(i + 1, rows, &inter);
                rows.pop();
                if self.best >= self.target || self.nodes >= self.budget {
                    return;
                }
            }
        }
    }
    let mut s = Search {
        masks,
        target,
        budget,
        nodes: 0,
        best: 0,
        best_rows: Vec::new(),
        best_cols: BitSet::new(width),
    };
    s.dfs(0, &mut Vec::new(), &BitSet::full(width));
    let finished = s.nodes < budget || s.best >= target;
    let t = s.best;
    let rows: Vec<usize> = s.best_rows.into_iter().take(t).collect();
    let cols = BitSet::from_indices(width, s.best_cols.iter().take(t));
    (rows, cols, finished)
}

/// Finds `k x k` with `f` constant on `xs x ys`, colors in `1..=d`. Takes
/// the first `dk` of `xs`, groups `ys` by their color vector on those, and
/// picks a group of `k` with a color repeated `k` times; this always works
/// once both sides have `k d^(dk)` elements. Otherwise falls back to a
/// bounded exhaustive search and reports the largest block found.
pub fn ramsey_bireduce<F: Fn(usize, usize) -> usize>(xs: &[usize], ys: &[usize], f: F, k: usize, d: usize) -> RamseyResult {
    let guaranteed = ramsey_bound(k, d).is_some_and(|b| xs.len() >= b && ys.len() >= b);
    if k == 0 {
        return RamseyResult {
            xs: Vec::new(),
            ys: Vec::new(),
            value: None,
            guaranteed: true,
            complete: true,
        };
    }
    let x0 = &xs[..xs.len().min(d.saturating_mul(k))];
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for &y in ys {
        let ty: Vec<usize> = x0.iter().map(|&x| f(x, y)).collect();
        match groups.iter_mut().find(|(t, _)| *t == ty) {
            Some((_, members)) => members.push(y),
            None => groups.push((ty, vec![y])),
        }
    }
    for (ty, members) in &groups {
        if members.len() < k {
            continue;
        }
        for c in 1..=d {
            let hits: Vec<usize> = x0.iter().zip(ty).filter(|(_, &v)| v == c).map(|(&x, _)| x).take(k).collect();
            if hits.len() == k {
                return RamseyResult {
                    xs: hits,
                    ys: members[..k].to_vec(),
                    value: Some(c),
                    guaranteed,
                    complete: true,
                };
            }
        }
    }
    debug_assert!(!guaranteed);
    let mut best = RamseyResult {
        xs: Vec::new(),
        ys: Vec::new(),
        value: None,
        guaranteed: false,
        complete: false,
    };
    for c in 1..=d {
        let masks: Vec<BitSet> = xs
            .iter()
            .map(|&x| BitSet::from_indices(ys.len(), (0..ys.len()).filter(|&j| f(x, ys[j]) == c)))
            .collect();
        let (rows, cols, _) = max_square_block(&masks, ys.len(), k, 1 << 20);
        if rows.len() > best.xs.len() {
            best.xs = rows.iter().map(|&i| xs[i]).collect();
            best.ys = cols.iter().map(|j| ys[j]).collect();
            best.value = Some(c);
            best.complete = rows.len() >= k;
        }
        if best.complete {
            break;
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractionMode {
    /// Three literal reductions; the host is large enough for each.
    Exact,
    /// Joint search for all three colors at once, then the intermediate
    /// stages are grown back greedily.
    BestEffort,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    /// `"C"`, `"A"` or `"B"`: the part made monochromatic at this stage.
    pub part: String,
    pub color: usize,
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    /// Size this stage must reach for the next to be forced, when known.
    pub required: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub host_order: usize,
    pub target: usize,
    pub mode: ExtractionMode,
    pub achieved: usize,
    pub stages: Vec<StageReport>,
    /// Host vertex ids in the order of the extracted chain's ids.
    pub vertices: Vec<usize>,
    /// Colors of the `A`, `B` and `C` parts of the extracted chain.
    pub part_colors: (usize, usize, usize),
    pub search_complete: bool,
    #[serde(skip)]
    pub subgraph: Option<Graph>,
}

struct Host<'a> {
    m: usize,
    coloring: &'a Coloring,
}

impl Host<'_> {
    fn z(&self, x: usize, y: usize) -> usize {
        self.coloring.color(twisted_chain_id(self.m, ChainLabel::C { i: x, j: y }))
    }
    fn v(&self, x: usize, y: usize) -> usize {
        self.coloring.color(twisted_chain_id(self.m, ChainLabel::A { k: (x - 1) * self.m + y }))
    }
    fn w(&self, x: usize, y: usize) -> usize {
        self.coloring.color(twisted_chain_id(self.m, ChainLabel::B { k: (y - 1) * self.m + x }))
    }
}

/// Adds rows and columns one pair at a time while `ok` holds on the whole
/// square.
fn grow_square(m: usize, xs: &mut Vec<usize>, ys: &mut Vec<usize>, ok: impl Fn(usize, usize) -> bool) {
    loop {
        let mut grew = false;
        'outer: for x in (1..=m).filter(|x| !xs.contains(x)) {
            if !ys.iter().all(|&y| ok(x, y)) {
                continue;
            }
            for y in (1..=m).filter(|y| !ys.contains(y)) {
                if ok(x, y) && xs.iter().all(|&x2| ok(x2, y)) {
                    xs.push(x);
                    ys.push(y);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            break;
        }
    }
    xs.sort_unstable();
    ys.sort_unstable();
}

/// Given a coloring of the order-`m` twisted chain (ids as in
/// [`twisted_chain_id`]), finds `X, Y` in `1..=m` such that every
/// `z_{(x,y)}`, every `v_{(x-1)m+y}` and every `w_{(y-1)m+x}` with
/// `(x, y) in X x Y` share one color per part. Those vertices induce a
/// twisted chain of order `|X|`. Exact reductions run when `m` is large
/// enough to force order `target`; otherwise a joint search maximizes the
/// order within `node_budget`.
pub fn monochromatic_substructure(
    g: &Graph,
    m: usize,
    coloring: &Coloring,
    target: usize,
    node_budget: u64,
) -> Result<ExtractionReport, LabError> {
    let n = 3 * m * m;
    if g.n() != n || coloring.len() != n {
        return Err(LabError::HostSize {
            expected: n,
            found: if g.n() != n { g.n() } else { coloring.len() },
        });
    }
    if m == 0 {
        return Err(LabError::OrderTooSmall(0));
    }
    let d = coloring.palette_size();
    let host = Host { m, coloring };
    let k2 = ramsey_bound(target, d);
    let k1 = k2.and_then(|k| ramsey_bound(k, d));
    let k0 = k1.and_then(|k| ramsey_bound(k, d));
    let all: Vec<usize> = (1..=m).collect();

    let (mode, stages, complete) = if k0.is_some_and(|k| m >= k) && target > 0 {
        let (k1, k2) = (k1.unwrap(), k2.unwrap());
        let s1 = ramsey_bireduce(&all, &all, |x, y| host.z(x, y), k1, d);
        let s2 = ramsey_bireduce(&s1.xs, &s1.ys, |x, y| host.v(x, y), k2, d);
        let s3 = ramsey_bireduce(&s2.xs, &s2.ys, |x, y| host.w(x, y), target, d);
        debug_assert!(s1.complete && s2.complete && s3.complete);
        let stage = |part: &str, r: &RamseyResult, req: usize| StageReport {
            part: part.to_string(),
            color: r.value.unwrap_or(1),
            xs: sorted(&r.xs),
            ys: sorted(&r.ys),
            required: Some(req),
        };
        (
            ExtractionMode::Exact,
            vec![stage("C", &s1, k1), stage("A", &s2, k2), stage("B", &s3, target)],
            true,
        )
    } else {
        let mut best: Option<(usize, usize, usize, Vec<usize>, Vec<usize>)> = None;
        let mut complete = true;
        let per_triple = (node_budget / (d * d * d).max(1) as u64).max(1);
        for cz in 1..=d {
            for cv in 1..=d {
                for cw in 1..=d {
                    let masks: Vec<BitSet> = (1..=m)
                        .map(|x| {
                            BitSet::from_indices(
                                m,
                                (1..=m)
                                    .filter(|&y| host.z(x, y) == cz && host.v(x, y) == cv && host.w(x, y) == cw)
                                    .map(|y| y - 1),
                            )
                        })
                        .collect();
                    let (rows, cols, finished) = max_square_block(&masks, m, m, per_triple);
                    complete &= finished;
                    if best.as_ref().is_none_or(|b| rows.len() > b.3.len()) {
                        let xs = rows.iter().map(|&i| i + 1).collect();
                        let ys = cols.iter().map(|j| j + 1).collect();
                        best = Some((cz, cv, cw, xs, ys));
                    }
                }
            }
        }
        let (cz, cv, cw, xs3, ys3) = best.expect("palette is nonempty");
        let (mut xs1, mut ys1) = (xs3.clone(), ys3.clone());
        grow_square(m, &mut xs1, &mut ys1, |x, y| host.z(x, y) == cz);
        let (mut xs2, mut ys2) = (xs3.clone(), ys3.clone());
        grow_square(m, &mut xs2, &mut ys2, |x, y| {
            xs1.contains(&x) && ys1.contains(&y) && host.z(x, y) == cz && host.v(x, y) == cv
        });
        let stage = |part: &str, color, xs: Vec<usize>, ys: Vec<usize>, required| StageReport {
            part: part.to_string(),
            color,
            xs,
            ys,
            required,
        };
        (
            ExtractionMode::BestEffort,
            vec![
                stage("C", cz, xs1, ys1, k1),
                stage("A", cv, xs2, ys2, k2),
                stage("B", cw, xs3, ys3, Some(target)),
            ],
            complete,
        )
    };

    let last = stages.last().expect("three stages");
    let (xs, ys) = (&last.xs, &last.ys);
    let t = xs.len();
    let mut vertices = Vec::with_capacity(3 * t * t);
    for &x in xs {
        for &y in ys {
            vertices.push(twisted_chain_id(m, ChainLabel::A { k: (x - 1) * m + y }));
        }
    }
    for &y in ys {
        for &x in xs {
            vertices.push(twisted_chain_id(m, ChainLabel::B { k: (y - 1) * m + x }));
        }
    }
    for &x in xs {
        for &y in ys {
            vertices.push(twisted_chain_id(m, ChainLabel::C { i: x, j: y }));
        }
    }
    let subgraph = if t == 0 {
        None
    } else {
        let mut map = vertices.clone();
        map.sort_unstable();
        debug_assert_eq!(map, vertices, "host ids are already in chain order");
        let (sub, _) = g.induced_subgraph(&BitSet::from_indices(n, vertices.iter().copied()))?;
        let labels = (0..3 * t * t).map(|i| VertexLabel::Chain(chain_label_of(t, i))).collect();
        Some(sub.set_labels(labels)?)
    };
    let part_colors = (stages[1].color, stages[2].color, stages[0].color);
    Ok(ExtractionReport {
        host_order: m,
        target,
        mode,
        achieved: t,
        stages,
        vertices,
        part_colors,
        search_complete: complete,
        subgraph,
    })
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn chain_label_of(t: usize, id: usize) -> ChainLabel {
    let tt = t * t;
    if id < tt {
        ChainLabel::A { k: id + 1 }
    } else if id < 2 * tt {
        ChainLabel::B { k: id - tt + 1 }
    } else {
        let r = id - 2 * tt;
        ChainLabel::C { i: r / t + 1, j: r % t + 1 }
    }
}

/// Checks that the extracted vertices induce a twisted chain of order
/// `achieved` (cross edges only; edges inside `A ∪ B` and inside `C` are
/// unconstrained) and that each part is monochromatic in the host coloring.
pub fn verify_extraction(g: &Graph, coloring: &Coloring, report: &ExtractionReport) -> Result<(), LabError> {
    let t = report.achieved;
    if report.vertices.len() != 3 * t * t {
        return Err(LabError::Extraction(format!("{} vertices for order {t}", report.vertices.len())));
    }
    let parts = [report.part_colors.0, report.part_colors.1, report.part_colors.2];
    for (i, &v) in report.vertices.iter().enumerate() {
        let part = i / (t * t);
        if coloring.color(v) != parts[part] {
            return Err(LabError::Extraction(format!("host vertex {v} has color {} in a part colored {}", coloring.color(v), parts[part])));
        }
    }
    for i in 0..2 * t * t {
        for j in 2 * t * t..3 * t * t {
            let want = crate::generators::chain_cross_adjacent(t, chain_label_of(t, i), chain_label_of(t, j));
            if g.has_edge(report.vertices[i], report.vertices[j]) != want {
                return Err(LabError::Extraction(format!(
                    "host edge {}-{} is {} but the order-{t} chain needs it {}",
                    report.vertices[i],
                    report.vertices[j],
                    if want { "absent" } else { "present" },
                    if want { "present" } else { "absent" }
                )));
            }
        }
    }
    Ok(())
}

/// The chain variant the extracted subgraph still belongs to, if any.
pub fn extracted_variant(report: &ExtractionReport, host: ChainVariant) -> Option<ChainVariant> {
    let sub = report.subgraph.as_ref()?;
    let t = report.achieved;
    let candidate = crate::generators::twisted_chain(t, host);
    sub.same_edges(&candidate).then_some(host)
}
