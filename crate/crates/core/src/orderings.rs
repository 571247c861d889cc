//! Linear orders, weakly reachable sets and weak coloring numbers.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::Graph;

/// Vertex count limit for [`wcol_exact`].
pub const WCOL_EXACT_CAP: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("order has {found} entries, graph has {expected} vertices")]
    Length { expected: usize, found: usize },
    #[error("order is not a permutation: vertex {0} is repeated or out of range")]
    NotPermutation(usize),
    #[error("{n} vertices exceeds the exact wcol cap of {cap}; use wcol_heuristic")]
    TooLarge { n: usize, cap: usize },
}

/// A permutation of `0..n`; `order[0]` is the L-minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl LinearOrder {
    pub fn new(order: Vec<usize>) -> Result<Self, OrderError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(OrderError::NotPermutation(v));
            }
            position[v] = i;
        }
        Ok(LinearOrder { order, position })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Checks that the order covers exactly the vertices of `g`.
    pub fn for_graph(g: &Graph, order: Vec<usize>) -> Result<Self, OrderError> {
        if order.len() != g.n() {
            return Err(OrderError::Length {
                expected: g.n(),
                found: order.len(),
            });
        }
        Self::new(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn vertex_at(&self, i: usize) -> usize {
        self.order[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn less(&self, u: usize, v: usize) -> bool {
        self.position[u] < self.position[v]
    }

    /// Vertices `w` with `u <=_L w`.
    pub fn suffix_from(&self, u: usize) -> BitSet {
        BitSet::from_indices(self.len(), self.order[self.position[u]..].iter().copied())
    }

    /// Vertices `w` with `v <_L w`.
    pub fn strictly_after(&self, v: usize) -> BitSet {
        BitSet::from_indices(self.len(), self.order[self.position[v] + 1..].iter().copied())
    }
}

impl Serialize for LinearOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.order.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let order = Vec::<usize>::deserialize(d)?;
        LinearOrder::new(order).map_err(serde::de::Error::custom)
    }
}

/// `WReach_r[G, L, v]`: vertices `u <=_L v` joined to `v` by a path of length
/// at most `r` on which `u` is the L-minimum.
///
/// Each candidate `u` in the `r`-ball of `v` is tested by a bounded search
/// from `v` that never enters vertices below `u`.
pub fn wreach(g: &Graph, order: &LinearOrder, r: usize, v: usize) -> BitSet {
    let mut out = BitSet::new(g.n());
    out.insert(v);
    for u in g.ball(v, r).iter() {
        if u == v || !order.less(u, v) {
            continue;
        }
        let allowed = order.suffix_from(u);
        if g.ball_within(v, r, &allowed).contains(u) {
            out.insert(u);
        }
    }
    out
}

/// All weakly reachable sets at once: `v` is in `WReach_r[u]`'s preimage iff
/// the bounded search from `u` inside `G[{w >=_L u}]` reaches `v`.
pub fn wreach_all(g: &Graph, order: &LinearOrder, r: usize) -> Vec<BitSet> {
    let n = g.n();
    let mut out = vec![BitSet::new(n); n];
    for u in 0..n {
        let allowed = order.suffix_from(u);
        for v in g.ball_within(u, r, &allowed).iter() {
            out[v].insert(u);
        }
    }
    out
}

pub fn wcol_of_order(g: &Graph, order: &LinearOrder, r: usize) -> usize {
    wreach_all(g, order, r).iter().map(BitSet::count).max().unwrap_or(0)
}

/// The weak `r`-coloring number with an optimal order, by branch and bound
/// over orders built from the back.
///
/// Placing `u` immediately before an already placed suffix `S` fixes the
/// contribution of `u`: it lies in `WReach_r[v]` exactly for the `v` reached
/// from `u` within `G[S + u]`. Counts only grow, so a partial maximum at or
/// above the incumbent prunes.
pub fn wcol_exact(g: &Graph, r: usize) -> Result<(usize, LinearOrder), OrderError> {
    let n = g.n();
    if n > WCOL_EXACT_CAP {
        return Err(OrderError::TooLarge { n, cap: WCOL_EXACT_CAP });
    }
    let (value, order) = wcol_exact_unchecked(g, r);
    Ok((value, order))
}

fn wcol_exact_unchecked(g: &Graph, r: usize) -> (usize, LinearOrder) {
    struct Search<'a> {
        g: &'a Graph,
        r: usize,
        counts: Vec<usize>,
        suffix: BitSet,
        placed: Vec<usize>,
        best: usize,
        best_order: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, current: usize) {
            let n = self.g.n();
            if self.placed.len() == n {
                if current < self.best {
                    self.best = current;
                    self.best_order = self.placed.iter().rev().copied().collect();
                }
                return;
            }
            for u in 0..n {
                if self.suffix.contains(u) {
                    continue;
                }
                self.suffix.insert(u);
                let reached = self.g.ball_within(u, self.r, &self.suffix);
                let mut worst = current;
                for v in reached.iter() {
                    self.counts[v] += 1;
                    worst = worst.max(self.counts[v]);
                }
                if worst < self.best {
                    self.placed.push(u);
                    self.go(worst);
                    self.placed.pop();
                }
                for v in reached.iter() {
                    self.counts[v] -= 1;
                }
                self.suffix.remove(u);
            }
        }
    }
    let n = g.n();
    let (seed_value, seed_order) = wcol_heuristic(g, r);
    let mut s = Search {
        g,
        r,
        counts: vec![0; n],
        suffix: BitSet::new(n),
        placed: Vec::with_capacity(n),
        best: seed_value,
        best_order: seed_order.as_slice().to_vec(),
    };
    s.go(0);
    let order = LinearOrder::new(s.best_order).expect("search yields a permutation");
    debug_assert_eq!(wcol_of_order(g, &order, r), s.best);
    (s.best, order)
}

/// Greedy order: repeatedly take the remaining vertex whose `r`-ball inside
/// the remaining graph is smallest (smallest id on ties) and place it last.
pub fn wcol_heuristic(g: &Graph, r: usize) -> (usize, LinearOrder) {
    let n = g.n();
    let mut remaining = BitSet::full(n);
    let mut back = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let v = remaining
            .iter()
            .min_by_key(|&v| (g.ball_within(v, r, &remaining).count(), v))
            .unwrap();
        remaining.remove(v);
        back.push(v);
    }
    back.reverse();
    let order = LinearOrder::new(back).expect("permutation");
    (wcol_of_order(g, &order, r), order)
}

/// Smallest-last order: repeatedly remove a minimum-degree vertex (smallest id
/// on ties) and place it last. Returned from first to last.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    smallest_last(g).0
}

/// The degeneracy: the largest degree seen at removal in the smallest-last
/// peeling.
pub fn degeneracy(g: &Graph) -> usize {
    smallest_last(g).1
}

fn smallest_last(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut back = Vec::with_capacity(n);
    let mut k = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        k = k.max(deg[v]);
        removed[v] = true;
        back.push(v);
        for u in g.neighbors(v).iter() {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    back.reverse();
    (back, k)
}
