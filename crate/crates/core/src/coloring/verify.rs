use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bounded_subsets, Coloring, ColoringError, SUBSET_LIMIT};
use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::width::{rank_width_exact_capped, rank_width_upper, tree_depth_exact_capped, OrderStrategy, TREE_DEPTH_CAP};

/// The width allowed for a union of `i` classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Budget {
    /// No bound: widths are measured and reported only.
    Unbounded,
    /// `factor * i`.
    Linear { factor: u64 },
    /// `2 (r+1)^(d i + 1) - 2`, the width bound for `r`-th powers of graphs
    /// of tree-depth `d i`. Saturates at `u64::MAX`.
    TreeDepthPower { r: u64, d: u64 },
    /// Explicit values for `i = 1, 2, ...`; missing entries are unbounded.
    Table { values: Vec<u64> },
}

impl Budget {
    pub fn q(&self, i: usize) -> Option<u64> {
        match self {
            Budget::Unbounded => None,
            Budget::Linear { factor } => Some(factor.saturating_mul(i as u64)),
            Budget::TreeDepthPower { r, d } => {
                let exp = d.saturating_mul(i as u64).saturating_add(1);
                let pow = u32::try_from(exp)
                    .ok()
                    .and_then(|e| (r + 1).checked_pow(e))
                    .and_then(|x| x.checked_mul(2));
                Some(pow.map_or(u64::MAX, |x| x - 2))
            }
            Budget::Table { values } => values.get(i.wrapping_sub(1)).copied(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Components up to this size get exact rank-width; larger ones an upper
    /// bound, and the profile is flagged.
    pub exact_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { exact_cap: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub colors: Vec<usize>,
    pub width: usize,
    pub budget: u64,
}

/// Measured widths of class unions against a budget. Vectors are indexed by
/// `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringProfile {
    pub p: usize,
    pub palette_size: usize,
    pub colors_used: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_r: Option<u64>,
    pub budget: Vec<Option<u64>>,
    pub measured: Vec<usize>,
    /// False where some component was too large for the exact solver and
    /// only an upper bound was measured.
    pub exact: Vec<bool>,
    pub subsets_checked: usize,
    pub verified: bool,
    pub violations: Vec<Violation>,
}

pub fn verify_low_rw_coloring(h: &Graph, c: &Coloring, p: usize, budget: &Budget) -> Result<ColoringProfile, ColoringError> {
    verify_low_rw_coloring_with(h, c, p, budget, &VerifyOptions::default())
}

/// Measures the rank-width of `H[union]` for every union of at most `p` used
/// colors, component by component, and compares with `budget`.
pub fn verify_low_rw_coloring_with(
    h: &Graph,
    c: &Coloring,
    p: usize,
    budget: &Budget,
    opts: &VerifyOptions,
) -> Result<ColoringProfile, ColoringError> {
    if p == 0 {
        return Err(ColoringError::ZeroClasses);
    }
    c.check_graph(h)?;
    let used = c.used_colors();
    let subsets = bounded_subsets(&used, p)?;
    let results: Vec<(usize, bool)> = subsets
        .par_iter()
        .map(|colors| union_width(h, &c.union_of(colors), opts.exact_cap))
        .collect();

    let mut measured = vec![0; p];
    let mut exact = vec![true; p];
    let mut violations = Vec::new();
    for (colors, &(width, is_exact)) in subsets.iter().zip(&results) {
        let i = colors.len();
        measured[i - 1] = measured[i - 1].max(width);
        exact[i - 1] &= is_exact;
        if let Some(q) = budget.q(i) {
            if width as u64 > q {
                violations.push(Violation {
                    colors: colors.clone(),
                    width,
                    budget: q,
                });
            }
        }
    }
    Ok(ColoringProfile {
        p,
        palette_size: c.palette_size(),
        colors_used: used.len(),
        d_r: None,
        budget: (1..=p).map(|i| budget.q(i)).collect(),
        measured,
        exact,
        subsets_checked: subsets.len(),
        verified: violations.is_empty(),
        violations,
    })
}

/// Rank-width of `G[x]` as the largest over its components, and whether
/// every component was solved exactly.
fn union_width(g: &Graph, x: &BitSet, exact_cap: usize) -> (usize, bool) {
    let mut width = 0;
    let mut exact = true;
    for comp in g.components_within(x) {
        if comp.count() < 2 {
            continue;
        }
        let (h, _) = g.induced_subgraph(&comp).expect("nonempty");
        let w = match rank_width_exact_capped(&h, exact_cap) {
            Ok(r) => r.value,
            Err(_) => {
                exact = false;
                rank_width_upper(&h, OrderStrategy::Best).value
            }
        };
        width = width.max(w);
    }
    (width, exact)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdReport {
    pub p: usize,
    pub subsets_checked: usize,
    pub verified: bool,
    /// The first union, in enumeration order, whose tree-depth exceeds its
    /// class count, with that tree-depth.
    pub violation: Option<(Vec<usize>, usize)>,
}

pub fn verify_td_coloring(g: &Graph, c: &Coloring, p: usize) -> Result<TdReport, ColoringError> {
    verify_td_coloring_capped(g, c, p, TREE_DEPTH_CAP)
}

/// Checks `td(G[union]) <= i` for every union of `i <= p` used colors.
/// Components with at most `i` vertices pass without a search; larger ones
/// above `cap` make the check infeasible.
///
/// Only unions connected in the color graph (colors adjacent when some edge
/// joins them) are enumerated, and in each only the components that use
/// every color of the union. Any other component `K` sits inside a component
/// of the smaller union of its own colors, so its tree-depth is bounded
/// there already. When every component of `G` has pairwise distinct
/// colors, nothing is enumerated (`subsets_checked` is 0): each component of
/// a union of `i` classes then has at most `i` vertices.
pub fn verify_td_coloring_capped(g: &Graph, c: &Coloring, p: usize, cap: usize) -> Result<TdReport, ColoringError> {
    if p == 0 {
        return Err(ColoringError::ZeroClasses);
    }
    c.check_graph(g)?;
    let rainbow = g.components().iter().all(|comp| c.colors_on(comp).len() == comp.count());
    if rainbow {
        return Ok(TdReport {
            p,
            subsets_checked: 0,
            verified: true,
            violation: None,
        });
    }
    let used = c.used_colors();
    let index: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &col)| (col, i)).collect();
    let mut color_adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); used.len()];
    for (u, v) in g.edges() {
        let (a, b) = (index[&c.color(u)], index[&c.color(v)]);
        if a != b {
            color_adj[a].insert(b);
            color_adj[b].insert(a);
        }
    }
    let subsets: Vec<Vec<usize>> = connected_subsets(&color_adj, p, SUBSET_LIMIT)?
        .into_iter()
        .map(|s| {
            let mut cols: Vec<usize> = s.into_iter().map(|i| used[i]).collect();
            cols.sort_unstable();
            cols
        })
        .collect();
    let results: Vec<Result<Option<usize>, ColoringError>> = subsets
        .par_iter()
        .map(|colors| {
            let i = colors.len();
            let union = c.union_of(colors);
            if union.count() <= i {
                return Ok(None);
            }
            for comp in g.components_within(&union) {
                let size = comp.count();
                if size <= i || c.colors_on(&comp).len() < i {
                    continue;
                }
                if size > cap {
                    return Err(ColoringError::TdInfeasible {
                        colors: colors.clone(),
                        size,
                        cap,
                    });
                }
                let (h, _) = g.induced_subgraph(&comp)?;
                let td = tree_depth_exact_capped(&h, cap)?;
                if td > i {
                    return Ok(Some(td));
                }
            }
            Ok(None)
        })
        .collect();
    let mut violation = None;
    for (colors, r) in subsets.iter().zip(results) {
        if let Some(td) = r? {
            violation = Some((colors.clone(), td));
            break;
        }
    }
    Ok(TdReport {
        p,
        subsets_checked: subsets.len(),
        verified: violation.is_none(),
        violation,
    })
}

/// Connected vertex sets of size `1..=max` of a graph given by adjacency
/// sets, each once (ESU enumeration), or an error past `limit` sets.
fn connected_subsets(adj: &[BTreeSet<usize>], max: usize, limit: usize) -> Result<Vec<Vec<usize>>, ColoringError> {
    fn extend(
        adj: &[BTreeSet<usize>],
        root: usize,
        sub: &mut Vec<usize>,
        ext: Vec<usize>,
        max: usize,
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        if out.len() == limit {
            return false;
        }
        out.push(sub.clone());
        if sub.len() == max {
            return true;
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in &adj[w] {
                let fresh = u > root && !sub.contains(&u) && !sub.iter().any(|&s| adj[s].contains(&u));
                if fresh && !next.contains(&u) {
                    next.push(u);
                }
            }
            sub.push(w);
            let ok = extend(adj, root, sub, next, max, limit, out);
            sub.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    if max == 0 {
        return Ok(out);
    }
    for root in 0..adj.len() {
        let ext: Vec<usize> = adj[root].iter().copied().filter(|&u| u > root).collect();
        if !extend(adj, root, &mut vec![root], ext, max, limit, &mut out) {
            return Err(ColoringError::TooManySubsets {
                count: limit as u128 + 1,
                limit,
            });
        }
    }
    Ok(out)
}

/// Whether `G^r[x]` and `G[x2]^r[x]` have the same edges.
pub fn power_equality_holds(g: &Graph, r: usize, x: &BitSet, x2: &BitSet) -> bool {
    debug_assert!(x.is_subset(x2));
    x.iter().all(|u| {
        let outer = g.ball(u, r).intersection(x);
        let inner = g.ball_within(u, r, x2).intersection(x);
        outer == inner
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_subsets_match_brute_force() {
        // A 5-cycle with a chord 0-2.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)];
        let mut adj = vec![BTreeSet::new(); 5];
        for &(a, b) in &edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for max in 1..=5 {
            let mut got: Vec<Vec<usize>> = connected_subsets(&adj, max, 1000)
                .unwrap()
                .into_iter()
                .map(|mut s| {
                    s.sort_unstable();
                    s
                })
                .collect();
            got.sort();
            let g = Graph::new(5, &edges).unwrap();
            let mut want: Vec<Vec<usize>> = (1u64..32)
                .map(|m| BitSet::from_mask(5, m))
                .filter(|x| x.count() <= max && g.components_within(x).len() == 1)
                .map(|x| x.to_vec())
                .collect();
            want.sort();
            assert_eq!(got, want, "max {max}");
        }
        assert!(connected_subsets(&adj, 5, 10).is_err());
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn budget_values() {
        assert_eq!(Budget::TreeDepthPower { r: 2, d: 1 }.q(2), Some(52));
        assert_eq!(Budget::TreeDepthPower { r: 2, d: 40 }.q(2), Some(u64::MAX));
        assert_eq!(Budget::Linear { factor: 3 }.q(2), Some(6));
        assert_eq!(Budget::Table { values: vec![1, 4] }.q(3), None);
        assert_eq!(Budget::Unbounded.q(1), None);
    }

    #[test]
    fn edgeless_all_zero() {
        let g = Graph::empty(5).unwrap();
        let c = Coloring::new(vec![1, 2, 1, 2, 3]).unwrap();
        let prof = verify_low_rw_coloring(&g, &c, 2, &Budget::Linear { factor: 0 }).unwrap();
        assert!(prof.verified);
        assert_eq!(prof.measured, vec![0, 0]);
    }

    #[test]
    fn k5_one_color_fails() {
        let g = Graph::complete(5).unwrap();
        let prof = verify_low_rw_coloring(&g, &Coloring::constant(5), 1, &Budget::Linear { factor: 0 }).unwrap();
        assert!(!prof.verified);
        assert_eq!(prof.violations[0].width, 1);
    }

    #[test]
    fn td_examples() {
        let g = path(4);
        let proper = Coloring::new(vec![1, 2, 1, 2]).unwrap();
        assert!(verify_td_coloring(&g, &proper, 1).unwrap().verified);
        let r = verify_td_coloring(&g, &Coloring::constant(4), 1).unwrap();
        assert_eq!(r.violation, Some((vec![1], 3)));
        assert!(matches!(
            verify_td_coloring_capped(&path(30), &Coloring::constant(30), 1, 10),
            Err(ColoringError::TdInfeasible { .. })
        ));
    }

    #[test]
    fn power_equality() {
        let g = path(3);
        let x = BitSet::from_indices(3, [0, 2]);
        assert!(!power_equality_holds(&g, 2, &x, &x));
        assert!(power_equality_holds(&g, 2, &x, &g.vertex_set()));
    }
}
