//! Colorings in which every union of `i <= p` classes has tree-depth at most
//! `i`.

use super::verify::verify_td_coloring_capped;
use super::{subsets_up_to, Coloring, ColoringError};
use crate::graph::Graph;
use crate::orderings::{wcol_heuristic, wreach_all};
use crate::width::tree_depth_of_mask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TdStrategy {
    /// `ExactSmall` up to `exact_limit` vertices, `WcolGreedy` beyond.
    #[default]
    Auto,
    /// Fewest colors, by backtracking with incremental tree-depth checks.
    ExactSmall,
    /// Greedy coloring avoiding weakly reachable sets, verified afterwards.
    WcolGreedy,
}

#[derive(Clone, Debug)]
pub struct TdColoringOptions {
    pub strategy: TdStrategy,
    pub exact_limit: usize,
    /// Search nodes before `ExactSmall` gives up and falls back to the greedy.
    pub node_budget: u64,
    pub max_retries: u32,
    /// Largest component of a class union whose tree-depth is computed.
    pub td_cap: usize,
}

impl Default for TdColoringOptions {
    fn default() -> Self {
        TdColoringOptions {
            strategy: TdStrategy::Auto,
            exact_limit: 12,
            node_budget: 2_000_000,
            max_retries: 3,
            td_cap: 24,
        }
    }
}

pub fn treedepth_coloring(g: &Graph, p: usize) -> Result<Coloring, ColoringError> {
    treedepth_coloring_with(g, p, &TdColoringOptions::default())
}

/// A `p`-tree-depth coloring. Whatever the strategy, the result has passed
/// [`verify_td_coloring_capped`](super::verify_td_coloring_capped).
pub fn treedepth_coloring_with(g: &Graph, p: usize, opts: &TdColoringOptions) -> Result<Coloring, ColoringError> {
    if p == 0 {
        return Err(ColoringError::ZeroClasses);
    }
    let exact = match opts.strategy {
        TdStrategy::ExactSmall => true,
        TdStrategy::WcolGreedy => false,
        TdStrategy::Auto => g.n() <= opts.exact_limit,
    };
    if exact && g.n() <= 64 {
        if let Some(c) = exact_small(g, p, opts.node_budget) {
            return Ok(c);
        }
    }
    wcol_greedy(g, p, opts)
}

fn wcol_greedy(g: &Graph, p: usize, opts: &TdColoringOptions) -> Result<Coloring, ColoringError> {
    let n = g.n();
    // Radius 2^p, doubled per retry; beyond n every radius is the same.
    let mut radius = if p >= usize::BITS as usize - 1 { n } else { (1usize << p).min(n) };
    for _ in 0..=opts.max_retries {
        let (_, order) = wcol_heuristic(g, radius);
        let wreach = wreach_all(g, &order, radius);
        let mut colors = vec![0usize; n];
        for &v in order.as_slice() {
            let mut taken = vec![false; n + 2];
            for u in wreach[v].iter() {
                taken[colors[u]] = true;
            }
            colors[v] = (1..).find(|&c| !taken[c]).unwrap();
        }
        let c = Coloring::new(colors)?;
        if verify_td_coloring_capped(g, &c, p, opts.td_cap)?.verified {
            return Ok(c);
        }
        if radius >= n {
            break;
        }
        radius = radius.saturating_mul(2).min(n);
    }
    let c = Coloring::identity(n);
    debug_assert!(verify_td_coloring_capped(g, &c, p, opts.td_cap)?.verified);
    Ok(c)
}

/// Tries palettes `K = 1, 2, ...`; vertices are colored in id order with
/// colors at most one above the largest used so far, and every partial
/// assignment is checked on all unions of at most `p` classes that contain
/// the new vertex's color. `None` when the node budget runs out.
fn exact_small(g: &Graph, p: usize, budget: u64) -> Option<Coloring> {
    let n = g.n();
    let adj = g.adjacency_masks()?;
    let mut nodes = 0u64;
    for k in 1..=n {
        let mut s = Search {
            adj: &adj,
            n,
            p,
            k,
            colors: vec![0; n],
            class_masks: vec![0; k + 1],
            nodes: &mut nodes,
            budget,
        };
        match s.go(0, 0) {
            Some(true) => return Some(Coloring::new(s.colors).expect("colors are 1..=k")),
            Some(false) => continue,
            None => return None,
        }
    }
    Some(Coloring::identity(n))
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    p: usize,
    k: usize,
    colors: Vec<usize>,
    class_masks: Vec<u64>,
    nodes: &'a mut u64,
    budget: u64,
}

impl Search<'_> {
    /// `Some(found)`, or `None` once the budget is exhausted.
    fn go(&mut self, v: usize, used: usize) -> Option<bool> {
        if v == self.n {
            return Some(true);
        }
        for c in 1..=(used + 1).min(self.k) {
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return None;
            }
            self.colors[v] = c;
            self.class_masks[c] |= 1 << v;
            let ok = self.consistent(c, used.max(c));
            if ok && self.go(v + 1, used.max(c))? {
                return Some(true);
            }
            self.class_masks[c] &= !(1u64 << v);
            self.colors[v] = 0;
        }
        Some(false)
    }

    fn consistent(&self, c: usize, used: usize) -> bool {
        let others: Vec<usize> = (1..=used).filter(|&o| o != c).collect();
        let mut subsets = vec![vec![]];
        subsets.extend(subsets_up_to(&others, self.p - 1));
        subsets.into_iter().all(|rest| {
            let i = rest.len() + 1;
            let union = rest.iter().fold(self.class_masks[c], |m, &o| m | self.class_masks[o]);
            union.count_ones() as usize <= i || tree_depth_of_mask(self.adj, union) <= i
        })
    }
}
