//! Twisted chain graphs and their interval and segment models.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::labels::{ChainLabel, VertexLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainVariant {
    /// No edges inside `A ∪ B` or inside `C`.
    Bare,
    /// `A`, `B` and `C` are cliques; no `A`-`B` edges.
    Interval,
    /// `C`-`C` edges are the crossings of the `z`-segments of the segment
    /// model; `A` and `B` are independent; no `A`-`B` edges.
    PermutationDerived,
}

/// Vertex id of a twisted chain label in a chain of order `n`: `A` block
/// first, then `B`, then `C` row-major.
pub fn twisted_chain_id(n: usize, label: ChainLabel) -> usize {
    let nn = n * n;
    match label {
        ChainLabel::A { k } => k - 1,
        ChainLabel::B { k } => nn + k - 1,
        ChainLabel::C { i, j } => 2 * nn + (i - 1) * n + (j - 1),
    }
}

fn chain_labels(n: usize) -> Vec<ChainLabel> {
    let nn = n * n;
    let mut out: Vec<ChainLabel> = (1..=nn).map(|k| ChainLabel::A { k }).collect();
    out.extend((1..=nn).map(|k| ChainLabel::B { k }));
    for i in 1..=n {
        for j in 1..=n {
            out.push(ChainLabel::C { i, j });
        }
    }
    out
}

/// `v_k ~ z_{(i,j)}` iff `k <= n(i-1) + j`; `w_k ~ z_{(i,j)}` iff
/// `k <= n(j-1) + i`.
pub(crate) fn chain_cross_adjacent(n: usize, a: ChainLabel, b: ChainLabel) -> bool {
    match (a, b) {
        (ChainLabel::A { k }, ChainLabel::C { i, j }) | (ChainLabel::C { i, j }, ChainLabel::A { k }) => {
            k <= n * (i - 1) + j
        }
        (ChainLabel::B { k }, ChainLabel::C { i, j }) | (ChainLabel::C { i, j }, ChainLabel::B { k }) => {
            k <= n * (j - 1) + i
        }
        _ => false,
    }
}

pub fn twisted_chain(n: usize, variant: ChainVariant) -> Graph {
    let labels = chain_labels(n);
    let nn = n * n;
    let total = 2 * nn + nn;
    let mut edges = Vec::new();
    for k in 1..=nn {
        for i in 1..=n {
            for j in 1..=n {
                let z = ChainLabel::C { i, j };
                let zid = twisted_chain_id(n, z);
                if chain_cross_adjacent(n, ChainLabel::A { k }, z) {
                    edges.push((k - 1, zid));
                }
                if chain_cross_adjacent(n, ChainLabel::B { k }, z) {
                    edges.push((nn + k - 1, zid));
                }
            }
        }
    }
    match variant {
        ChainVariant::Bare => {}
        ChainVariant::Interval => {
            for block in [0..nn, nn..2 * nn, 2 * nn..total] {
                for u in block.clone() {
                    for v in u + 1..block.end {
                        edges.push((u, v));
                    }
                }
            }
        }
        ChainVariant::PermutationDerived => {
            let segs = z_segments(n);
            for a in 0..nn {
                for b in a + 1..nn {
                    if segments_cross(segs[a], segs[b]) {
                        edges.push((2 * nn + a, 2 * nn + b));
                    }
                }
            }
        }
    }
    let labels = labels.into_iter().map(VertexLabel::Chain).collect();
    Graph::with_labels(total, &edges, labels).expect("valid by construction")
}

/// Intervals on the integer line, indexed like the twisted chain vertices,
/// with the map from model index to twisted chain id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalModel {
    pub scale: i64,
    pub intervals: Vec<(i64, i64)>,
    /// `relabel[i]` is the twisted chain vertex that model vertex `i` plays.
    pub relabel: Vec<usize>,
}

/// Segments between two parallel lines, as `(bottom x, top x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentModel {
    pub scale: i64,
    pub segments: Vec<(i64, i64)>,
    pub relabel: Vec<usize>,
}

/// The models list `v_1..v_{n^2}`, `w_1..`, `z` row-major, but the model's
/// `v_i` meets `z_{(x,y)}` iff `i >= n(x-1)+y`, the reverse of the chain
/// rule. Reversing indices (`k -> n^2+1-k`, `(x,y) -> (n+1-x, n+1-y)`) turns
/// one into the other.
fn reversal(n: usize) -> Vec<usize> {
    let nn = n * n;
    chain_labels(n)
        .into_iter()
        .map(|l| {
            let flipped = match l {
                ChainLabel::A { k } => ChainLabel::A { k: nn + 1 - k },
                ChainLabel::B { k } => ChainLabel::B { k: nn + 1 - k },
                ChainLabel::C { i, j } => ChainLabel::C {
                    i: n + 1 - i,
                    j: n + 1 - j,
                },
            };
            twisted_chain_id(n, flipped)
        })
        .collect()
}

/// `v_i = [0, i]`, `w_i = [M-i, M]`, `z_{(x,y)} = [(x-1)n+y, M-(y-1)n-x]`
/// with `M = 2n^2 + 1`.
pub fn interval_model(n: usize) -> IntervalModel {
    let nn = (n * n) as i64;
    let ni = n as i64;
    let m = 2 * nn + 1;
    let mut intervals: Vec<(i64, i64)> = (1..=nn).map(|i| (0, i)).collect();
    intervals.extend((1..=nn).map(|i| (m - i, m)));
    for x in 1..=ni {
        for y in 1..=ni {
            intervals.push(((x - 1) * ni + y, m - (y - 1) * ni - x));
        }
    }
    IntervalModel {
        scale: m,
        intervals,
        relabel: reversal(n),
    }
}

fn z_segments(n: usize) -> Vec<(i64, i64)> {
    let ni = n as i64;
    let m = 10 * ni * ni + 1;
    let mut out = Vec::with_capacity(n * n);
    for x in 1..=ni {
        for y in 1..=ni {
            out.push(((x - 1) * ni + y, m - (y - 1) * ni - x));
        }
    }
    out
}

/// `v_i = (i, i)`, `w_i = (M-i, M-i)`, `z_{(x,y)}` from `(x-1)n+y` to
/// `M-(y-1)n-x`, with `M = 10n^2 + 1`.
pub fn segment_model(n: usize) -> SegmentModel {
    let nn = (n * n) as i64;
    let m = 10 * nn + 1;
    let mut segments: Vec<(i64, i64)> = (1..=nn).map(|i| (i, i)).collect();
    segments.extend((1..=nn).map(|i| (m - i, m - i)));
    segments.extend(z_segments(n));
    SegmentModel {
        scale: m,
        segments,
        relabel: reversal(n),
    }
}

/// Closed intervals meet iff neither ends before the other starts.
pub fn interval_intersection_graph(intervals: &[(i64, i64)]) -> Graph {
    let mut edges = Vec::new();
    for (a, &(l1, h1)) in intervals.iter().enumerate() {
        for (b, &(l2, h2)) in intervals.iter().enumerate().skip(a + 1) {
            if l1 <= h2 && l2 <= h1 {
                edges.push((a, b));
            }
        }
    }
    Graph::new(intervals.len(), &edges).expect("nonempty model")
}

/// Segments cross iff their bottom order and top order disagree; a shared
/// endpoint counts.
fn segments_cross((b1, t1): (i64, i64), (b2, t2): (i64, i64)) -> bool {
    (b1 - b2).signum() * (t1 - t2).signum() <= 0
}

pub fn segment_intersection_graph(segments: &[(i64, i64)]) -> Graph {
    let mut edges = Vec::new();
    for (a, &s) in segments.iter().enumerate() {
        for (b, &t) in segments.iter().enumerate().skip(a + 1) {
            if segments_cross(s, t) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(segments.len(), &edges).expect("nonempty model")
}

impl IntervalModel {
    /// The intersection graph renumbered into twisted chain ids.
    pub fn chain_graph(&self) -> Graph {
        interval_intersection_graph(&self.intervals)
            .permute(&self.relabel)
            .expect("relabel is a permutation")
    }
}

impl SegmentModel {
    pub fn chain_graph(&self) -> Graph {
        segment_intersection_graph(&self.segments)
            .permute(&self.relabel)
            .expect("relabel is a permutation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adjacent_c(g: &Graph, n: usize, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if g.has_edge(v, twisted_chain_id(n, ChainLabel::C { i, j })) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn order_two_rules() {
        let g = twisted_chain(2, ChainVariant::Bare);
        let v3 = twisted_chain_id(2, ChainLabel::A { k: 3 });
        assert_eq!(adjacent_c(&g, 2, v3), vec![(2, 1), (2, 2)]);
        let w3 = twisted_chain_id(2, ChainLabel::B { k: 3 });
        assert_eq!(adjacent_c(&g, 2, w3), vec![(1, 2), (2, 2)]);
    }

    #[test]
    fn order_one() {
        let g = twisted_chain(1, ChainVariant::Bare);
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn interval_coordinates() {
        let m = interval_model(2);
        assert_eq!(m.scale, 9);
        // z_(2,2) is the last model vertex.
        assert_eq!(m.intervals[11], (4, 5));
        let g = interval_intersection_graph(&m.intervals);
        assert!(g.has_edge(3, 11));
        assert!(!g.has_edge(2, 11));
        let one = interval_model(1);
        assert_eq!(one.intervals, vec![(0, 1), (2, 3), (1, 2)]);
    }

    #[test]
    fn closed_touching() {
        assert!(interval_intersection_graph(&[(0, 1), (1, 2)]).has_edge(0, 1));
        assert!(segment_intersection_graph(&[(1, 2), (2, 1)]).has_edge(0, 1));
        assert!(!segment_intersection_graph(&[(1, 1), (2, 2)]).has_edge(0, 1));
    }

    #[test]
    fn models_match_after_reversal() {
        for n in 1..=4 {
            assert!(interval_model(n).chain_graph().same_edges(&twisted_chain(n, ChainVariant::Interval)));
            assert!(segment_model(n).chain_graph().same_edges(&twisted_chain(n, ChainVariant::PermutationDerived)));
        }
    }
}
