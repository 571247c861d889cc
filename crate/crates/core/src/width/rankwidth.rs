use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use super::decomposition::{caterpillar, RankDecomposition};
use super::WidthError;
use crate::bitset::BitSet;
use crate::gf2::rank_of_masks;
use crate::graph::Graph;
use crate::orderings::degeneracy_order;

/// Default vertex cap for [`rank_width_exact`].
pub const EXACT_RANK_WIDTH_CAP: usize = 12;
/// Hard ceiling: the subset tables are `2^n` entries.
pub const EXACT_RANK_WIDTH_MAX: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WidthMethod {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthReport {
    pub value: usize,
    pub method: WidthMethod,
    #[serde(skip)]
    pub decomposition: Option<RankDecomposition>,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

/// Vertex orders used to build caterpillar decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderStrategy {
    /// Vertex ids in increasing order.
    Identity,
    /// Smallest-last degeneracy order.
    Degeneracy,
    /// Grow a prefix, each step adding the vertex that minimizes its cut-rank.
    GreedyCut,
    /// The best of all of the above.
    #[default]
    Best,
}

/// Exact rank-width with the default cap.
pub fn rank_width_exact(g: &Graph) -> Result<WidthReport, WidthError> {
    rank_width_exact_capped(g, EXACT_RANK_WIDTH_CAP)
}

/// Exact rank-width by dynamic programming over vertex subsets.
///
/// Every subcubic tree with leaves `V`, rooted by subdividing an edge, is a
/// rooted binary tree whose nodes are subsets of `V`. So the minimum width is
/// `f(V)` with
/// `f(S) = max(cutrk(S), min over splits S = S1 + S2 of max(f(S1), f(S2)))`,
/// `f({v}) = cutrk({v})` and the root cut counted as zero.
pub fn rank_width_exact_capped(g: &Graph, cap: usize) -> Result<WidthReport, WidthError> {
    let start = Instant::now();
    let n = g.n();
    let cap = cap.min(EXACT_RANK_WIDTH_MAX);
    if n > cap {
        return Err(WidthError::TooLarge { n, cap, hint: "use rank_width_upper" });
    }
    if n <= 1 {
        return Ok(WidthReport {
            value: 0,
            method: WidthMethod::Exact,
            decomposition: None,
            elapsed: start.elapsed(),
        });
    }
    let adj = g.adjacency_masks().expect("n <= 64");
    let full: u64 = (1u64 << n) - 1;
    let size = 1usize << n;
    let cut: Vec<u8> = (0..size as u64)
        .map(|s| rank_of_masks(mask_iter(s).map(|v| adj[v] & !s & full)) as u8)
        .collect();

    const UNSET: u8 = u8::MAX;
    let mut best = vec![UNSET; size];
    let mut split = vec![0u32; size];
    for v in 0..n {
        best[1 << v] = cut[1 << v];
    }
    // Process subsets in increasing order; every proper subset of `s` is
    // numerically smaller, so its entry is final.
    for s in 1..size as u64 {
        if s.count_ones() < 2 {
            continue;
        }
        let floor = if s == full { 0 } else { cut[s as usize] };
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut value = u8::MAX;
        let mut arg = 0u64;
        // Enumerate s1 = low + subset of rest, excluding s1 = s.
        let mut sub = rest;
        loop {
            let s1 = low | sub;
            if s1 != s {
                let s2 = s ^ s1;
                let v = best[s1 as usize].max(best[s2 as usize]);
                if v < value {
                    value = v;
                    arg = s1;
                    if value <= floor {
                        break;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[s as usize] = value.max(floor);
        split[s as usize] = arg as u32;
    }

    let decomposition = build_witness(n, full, &split);
    Ok(WidthReport {
        value: best[full as usize] as usize,
        method: WidthMethod::Exact,
        decomposition: Some(decomposition),
        elapsed: start.elapsed(),
    })
}

fn mask_iter(s: u64) -> impl Iterator<Item = usize> {
    crate::bitset::mask_ones(s)
}

fn build_witness(n: usize, full: u64, split: &[u32]) -> RankDecomposition {
    struct Builder<'a> {
        split: &'a [u32],
        nodes: usize,
        edges: Vec<(usize, usize)>,
        leaves: Vec<super::decomposition::LeafAssignment>,
    }
    impl Builder<'_> {
        fn build(&mut self, s: u64) -> usize {
            let id = self.nodes;
            self.nodes += 1;
            if s.count_ones() == 1 {
                self.leaves.push(super::decomposition::LeafAssignment {
                    leaf: id,
                    vertex: s.trailing_zeros() as usize,
                });
                return id;
            }
            let s1 = self.split[s as usize] as u64;
            let a = self.build(s1);
            let b = self.build(s ^ s1);
            self.edges.push((id, a));
            self.edges.push((id, b));
            id
        }
    }
    let mut b = Builder {
        split,
        nodes: 0,
        edges: Vec::new(),
        leaves: Vec::new(),
    };
    let s1 = split[full as usize] as u64;
    let left = b.build(s1);
    let right = b.build(full ^ s1);
    b.edges.push((left, right));
    let mut leaf_map = b.leaves;
    leaf_map.sort_by_key(|l| l.vertex);
    let d = RankDecomposition {
        nodes: b.nodes,
        edges: b.edges,
        leaf_map,
    };
    debug_assert!(d.validate(n).is_ok());
    d
}

/// An upper bound from the caterpillar decomposition of a vertex order.
pub fn rank_width_upper(g: &Graph, strategy: OrderStrategy) -> WidthReport {
    let start = Instant::now();
    if g.n() <= 1 {
        return WidthReport {
            value: 0,
            method: WidthMethod::UpperBound,
            decomposition: None,
            elapsed: start.elapsed(),
        };
    }
    let candidates: Vec<Vec<usize>> = match strategy {
        OrderStrategy::Identity => vec![(0..g.n()).collect()],
        OrderStrategy::Degeneracy => vec![degeneracy_order(g)],
        OrderStrategy::GreedyCut => vec![greedy_cut_order(g)],
        OrderStrategy::Best => vec![(0..g.n()).collect(), degeneracy_order(g), greedy_cut_order(g)],
    };
    let (value, decomposition) = candidates
        .iter()
        .map(|order| {
            let d = caterpillar(order);
            (d.width(g).expect("caterpillar is valid"), d)
        })
        .min_by_key(|(w, _)| *w)
        .unwrap();
    WidthReport {
        value,
        method: WidthMethod::UpperBound,
        decomposition: Some(decomposition),
        elapsed: start.elapsed(),
    }
}

fn greedy_cut_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let first = (0..n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut prefix = BitSet::new(n);
    prefix.insert(first);
    let mut order = vec![first];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !prefix.contains(v))
            .min_by_key(|&v| {
                let mut p = prefix.clone();
                p.insert(v);
                (g.cutrank(&p), v)
            })
            .unwrap();
        prefix.insert(next);
        order.push(next);
    }
    order
}

/// Rank-width of `g`: exact when every component fits under `cap`, otherwise
/// the largest of the per-component exact values and upper bounds.
pub fn rank_width_by_components(g: &Graph, cap: usize) -> WidthReport {
    let start = Instant::now();
    let mut value = 0;
    let mut method = WidthMethod::Exact;
    for comp in g.components() {
        let (h, _) = g.induced_subgraph(&comp).expect("nonempty component");
        let r = match rank_width_exact_capped(&h, cap) {
            Ok(r) => r,
            Err(_) => {
                method = WidthMethod::UpperBound;
                rank_width_upper(&h, OrderStrategy::Best)
            }
        };
        value = value.max(r.value);
    }
    WidthReport {
        value,
        method,
        decomposition: None,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn single_vertex_is_zero() {
        let r = rank_width_exact(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.decomposition.is_none());
    }

    #[test]
    fn cliques_and_paths_width_one() {
        for n in 2..=8 {
            let k = Graph::complete(n).unwrap();
            let r = rank_width_exact(&k).unwrap();
            assert_eq!(r.value, 1, "K_{n}");
            assert_eq!(r.decomposition.unwrap().width(&k).unwrap(), 1);
            assert_eq!(rank_width_exact(&path(n)).unwrap().value, 1, "P_{n}");
        }
    }

    #[test]
    fn c5_width_two() {
        let g = cycle(5);
        let r = rank_width_exact(&g).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.decomposition.unwrap().width(&g).unwrap(), 2);
    }

    #[test]
    fn cap_enforced() {
        let err = rank_width_exact(&path(13)).unwrap_err();
        assert!(matches!(err, WidthError::TooLarge { n: 13, cap: 12, .. }));
        assert!(rank_width_exact_capped(&path(13), 13).is_ok());
    }

    #[test]
    fn upper_examples() {
        assert_eq!(rank_width_upper(&path(9), OrderStrategy::Identity).value, 1);
        assert_eq!(rank_width_upper(&Graph::complete(7).unwrap(), OrderStrategy::Degeneracy).value, 1);
        let r = rank_width_upper(&cycle(9), OrderStrategy::Best);
        assert!(r.value >= 2);
        assert_eq!(r.method, WidthMethod::UpperBound);
    }

    #[test]
    fn report_json_shape() {
        let r = rank_width_exact(&cycle(5)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["value"], 2);
        assert_eq!(v["method"], "exact");
        assert!(v["elapsed_ms"].is_u64());
    }
}
