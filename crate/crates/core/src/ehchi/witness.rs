//! Clique-or-independent-set witnesses and product colorings driven by a
//! low rank-width coloring with `p = 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::cotree::{check_set, clique_or_is, is_cograph, SetKind};
use super::extract::{cograph_extract, kappa, meets_power};
use super::EhError;
use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::orderings::degeneracy_order;
use crate::width::{rank_width_exact_capped, rank_width_upper, OrderStrategy, RankDecomposition, EXACT_RANK_WIDTH_CAP};

/// Exponents for a coloring with `n1` colors whose classes have rank-width
/// at most `r1`. With a single color the `1 / (2 log2 n1)` term is
/// unbounded and dropped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EHParams {
    pub n1: usize,
    pub r1: usize,
    pub kappa: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl EHParams {
    pub fn new(n1: usize, r1: usize) -> Self {
        let kappa = kappa(r1);
        let delta = kappa / 2.0;
        let epsilon = if n1 <= 1 {
            delta / 2.0
        } else {
            (delta / 2.0).min(1.0 / (2.0 * (n1 as f64).log2()))
        };
        EHParams {
            n1,
            r1,
            kappa,
            delta,
            epsilon,
        }
    }
}

/// JSON: `{"kind": "clique" | "independent", "vertices": [...], "epsilon": e, "n": n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: SetKind,
    pub vertices: Vec<usize>,
    pub epsilon: f64,
    pub n: usize,
}

/// Rank-width of every class is at most `r1`: an upper-bound decomposition
/// settles it when it is narrow enough, the exact solver otherwise.
/// Returns a witness decomposition per class (`None` below two vertices).
pub fn class_decompositions(g: &Graph, c: &Coloring, r1: usize) -> Result<BTreeMap<usize, Option<RankDecomposition>>, EhError> {
    class_decompositions_capped(g, c, r1, EXACT_RANK_WIDTH_CAP)
}

/// [`class_decompositions`] with the exact solver allowed up to `exact_cap`
/// vertices per class.
pub fn class_decompositions_capped(
    g: &Graph,
    c: &Coloring,
    r1: usize,
    exact_cap: usize,
) -> Result<BTreeMap<usize, Option<RankDecomposition>>, EhError> {
    c.check_graph(g)?;
    let mut out = BTreeMap::new();
    for color in c.used_colors() {
        let (sub, _) = g.induced_subgraph(&c.class(color))?;
        let mut report = rank_width_upper(&sub, OrderStrategy::Best);
        if report.value > r1 {
            if sub.n() > exact_cap {
                return Err(EhError::Unverifiable {
                    color,
                    size: sub.n(),
                    upper: report.value,
                });
            }
            report = rank_width_exact_capped(&sub, exact_cap)?;
            if report.value > r1 {
                return Err(EhError::ClassTooWide {
                    color,
                    width: report.value,
                    r1,
                });
            }
        }
        out.insert(color, report.decomposition);
    }
    Ok(out)
}

/// A clique or independent set of size at least `n^epsilon`. With
/// `n >= N(1)^2`, the largest class (smallest color on ties) yields a cograph
/// whose best clique or independent set is taken; smaller graphs return any
/// two vertices.
pub fn eh_witness(g: &Graph, c: &Coloring, r1: usize) -> Result<(Witness, EHParams), EhError> {
    eh_witness_capped(g, c, r1, EXACT_RANK_WIDTH_CAP)
}

/// [`eh_witness`] with class widths settled exactly up to `exact_cap`
/// vertices.
pub fn eh_witness_capped(g: &Graph, c: &Coloring, r1: usize, exact_cap: usize) -> Result<(Witness, EHParams), EhError> {
    let n = g.n();
    let decomps = class_decompositions_capped(g, c, r1, exact_cap)?;
    let params = EHParams::new(c.palette_size(), r1);
    let n1 = params.n1;
    let (kind, vertices) = if n < n1.saturating_mul(n1) {
        match n {
            0 => return Err(EhError::EmptySide),
            1 => (SetKind::Clique, vec![0]),
            _ => (if g.has_edge(0, 1) { SetKind::Clique } else { SetKind::Independent }, vec![0, 1]),
        }
    } else {
        let color = c
            .used_colors()
            .into_iter()
            .max_by_key(|&col| (c.class(col).count(), std::cmp::Reverse(col)))
            .expect("n >= 1");
        let (h, h_map) = g.induced_subgraph(&c.class(color))?;
        let set = cograph_extract(&h, decomps[&color].as_ref(), r1)?;
        let (cog, cog_map) = h.induced_subgraph(&set)?;
        let tree = is_cograph(&cog).ok_or_else(|| EhError::BoundViolated("extraction is not a cograph".into()))?;
        let (kind, local) = clique_or_is(&tree);
        if local.len() * local.len() < cog.n() {
            return Err(EhError::BoundViolated(format!("{} vertices in a cograph on {}", local.len(), cog.n())));
        }
        let mut vertices: Vec<usize> = local.into_iter().map(|v| h_map[cog_map[v]]).collect();
        vertices.sort_unstable();
        (kind, vertices)
    };
    if !check_set(g, &vertices, kind) {
        return Err(EhError::BoundViolated("witness fails the adjacency scan".into()));
    }
    if !meets_power(vertices.len(), n, params.epsilon) {
        return Err(EhError::BoundViolated(format!(
            "witness of {} vertices is below {n}^{:.4}",
            vertices.len(),
            params.epsilon
        )));
    }
    Ok((
        Witness {
            kind,
            vertices,
            epsilon: params.epsilon,
            n,
        },
        params,
    ))
}

/// Greedy coloring along the smallest-last order: at most degeneracy + 1
/// colors.
pub fn greedy_degeneracy_coloring(g: &Graph) -> Coloring {
    let mut colors = vec![0usize; g.n()];
    for v in degeneracy_order(g) {
        let mut used: Vec<usize> = g.neighbors(v).iter().map(|u| colors[u]).filter(|&c| c > 0).collect();
        used.sort_unstable();
        used.dedup();
        colors[v] = (1..).find(|c| used.binary_search(c).is_err()).unwrap();
    }
    Coloring::new(colors).expect("colors start at 1")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductColoring {
    pub coloring: Coloring,
    /// Palette used inside each class, keyed by class color.
    pub class_palettes: BTreeMap<usize, usize>,
    /// `N(1)` times the largest class palette.
    pub bound: usize,
}

/// Colors `u` by the pair (class of `u`, color of `u` in a proper coloring
/// of its class), pairs numbered densely in sorted order.
pub fn chi_product_coloring<F>(g: &Graph, c: &Coloring, proper_colorer: F) -> Result<ProductColoring, EhError>
where
    F: Fn(&Graph) -> Coloring,
{
    c.check_graph(g)?;
    let mut pair = vec![(0, 0); g.n()];
    let mut class_palettes = BTreeMap::new();
    for color in c.used_colors() {
        let (sub, map) = g.induced_subgraph(&c.class(color))?;
        let sc = proper_colorer(&sub);
        sc.check_graph(&sub)?;
        if let Some((u, v)) = sub.edges().find(|&(u, v)| sc.color(u) == sc.color(v)) {
            return Err(EhError::ImproperSubcoloring {
                color,
                u: map[u],
                v: map[v],
            });
        }
        class_palettes.insert(color, sc.used_colors().len());
        for (local, &v) in map.iter().enumerate() {
            pair[v] = (color, sc.color(local));
        }
    }
    let mut ids: Vec<(usize, usize)> = pair.clone();
    ids.sort_unstable();
    ids.dedup();
    let colors: Vec<usize> = pair.iter().map(|p| ids.binary_search(p).unwrap() + 1).collect();
    let coloring = Coloring::new(colors)?;
    if let Some((u, v)) = g.edges().find(|&(u, v)| coloring.color(u) == coloring.color(v)) {
        return Err(EhError::ImproperSubcoloring {
            color: c.color(u),
            u,
            v,
        });
    }
    let bound = c.palette_size() * class_palettes.values().copied().max().unwrap_or(0);
    Ok(ProductColoring {
        coloring,
        class_palettes,
        bound,
    })
}
