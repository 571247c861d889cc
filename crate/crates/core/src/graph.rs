//! Immutable simple undirected graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::gf2::{rank_of_masks, rank_of_word_rows};
use crate::labels::VertexLabel;

/// Vertex counts beyond this are out of scope for the dense representation.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph has {0} vertices, limit is {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertex set has universe {found}, graph has {expected} vertices")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("labels cover {found} vertices, graph has {expected}")]
    LabelCount { expected: usize, found: usize },
    #[error("matrix row {row} has {found} columns, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },
    #[error("power radius must be at least 1")]
    ZeroRadius,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
    labels: Option<Vec<VertexLabel>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds the symmetric closure of `edges`. Duplicate pairs collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = vec![BitSet::new(n); n];
        for (index, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj, labels: None })
    }

    pub fn with_labels(n: usize, edges: &[(usize, usize)], labels: Vec<VertexLabel>) -> Result<Self, GraphError> {
        Graph::new(n, edges)?.set_labels(labels)
    }

    /// Builds a graph from adjacency rows that the caller guarantees are
    /// symmetric and loopless.
    pub(crate) fn from_rows(adj: Vec<BitSet>) -> Self {
        let n = adj.len();
        debug_assert!(n > 0);
        debug_assert!((0..n).all(|v| !adj[v].contains(v) && adj[v].iter().all(|u| adj[u].contains(v))));
        Graph { n, adj, labels: None }
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let adj = (0..n)
            .map(|v| {
                let mut row = BitSet::full(n);
                row.remove(v);
                row
            })
            .collect();
        Ok(Graph::from_rows(adj))
    }

    pub fn set_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertex_set(&self) -> BitSet {
        BitSet::full(self.n)
    }

    /// Adjacency rows as `u64` masks, available when `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| self.adj.iter().map(BitSet::to_mask).collect())
    }

    fn check_universe(&self, x: &BitSet) -> Result<(), GraphError> {
        if x.len() != self.n {
            return Err(GraphError::UniverseMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `G[X]` with vertices renumbered in increasing order. The second value
    /// maps new ids to old ids.
    pub fn induced_subgraph(&self, x: &BitSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_universe(x)?;
        if x.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let map: Vec<usize> = x.iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            new_id[v] = i;
        }
        let k = map.len();
        let adj = map
            .iter()
            .map(|&v| BitSet::from_indices(k, self.adj[v].iter().filter(|&u| x.contains(u)).map(|u| new_id[u])))
            .collect();
        let mut g = Graph::from_rows(adj);
        if let Some(labels) = &self.labels {
            g.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok((g, map))
    }

    /// Shortest-path distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distances inside `G[allowed]`; vertices outside `allowed` are never
    /// entered. `source` must be in `allowed`.
    pub fn bfs_distances_within(&self, source: usize, allowed: &BitSet) -> Vec<Option<usize>> {
        debug_assert!(allowed.contains(source));
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for w in self.adj[u].iter() {
                if dist[w].is_none() && allowed.contains(w) {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n).map(|v| self.bfs_distances(v)).collect()
    }

    /// Vertices within distance `r` of `v` inside `G[allowed]`, including `v`.
    pub fn ball_within(&self, v: usize, r: usize, allowed: &BitSet) -> BitSet {
        let mut reach = BitSet::new(self.n);
        reach.insert(v);
        let mut frontier = reach.clone();
        for _ in 0..r {
            let mut next = BitSet::new(self.n);
            for u in frontier.iter() {
                next.union_with(&self.adj[u]);
            }
            next.intersect_with(allowed);
            next.difference_with(&reach);
            if next.is_empty() {
                break;
            }
            reach.union_with(&next);
            frontier = next;
        }
        reach
    }

    pub fn ball(&self, v: usize, r: usize) -> BitSet {
        self.ball_within(v, r, &BitSet::full(self.n))
    }

    /// `G^r`: `u ~ v` iff `1 <= dist(u, v) <= r`.
    pub fn power(&self, r: usize) -> Result<Graph, GraphError> {
        if r == 0 {
            return Err(GraphError::ZeroRadius);
        }
        let all = BitSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut b = self.ball_within(v, r, &all);
                b.remove(v);
                b
            })
            .collect();
        let mut g = Graph::from_rows(adj);
        g.labels = self.labels.clone();
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let adj = (0..self.n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        let mut g = Graph::from_rows(adj);
        g.labels = self.labels.clone();
        g
    }

    /// GF(2) rank of `A[X, V \ X]`; zero for `X` empty or `X = V`.
    pub fn cutrank(&self, x: &BitSet) -> usize {
        debug_assert_eq!(x.len(), self.n);
        let size = x.count();
        if size == 0 || size == self.n {
            return 0;
        }
        // Rank is transpose-invariant, so use the smaller side as rows.
        let (rows_side, cols_side) = if size <= self.n - size {
            (x.clone(), x.complement())
        } else {
            (x.complement(), x.clone())
        };
        if self.n <= 64 {
            let cols = cols_side.to_mask();
            return rank_of_masks(rows_side.iter().map(|v| self.adj[v].to_mask() & cols));
        }
        let mut rows: Vec<Vec<u64>> = rows_side
            .iter()
            .map(|v| self.adj[v].intersection(&cols_side).words().to_vec())
            .collect();
        rank_of_word_rows(&mut rows, self.n)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BitSet> {
        self.components_within(&BitSet::full(self.n))
    }

    /// Components of `G[allowed]`.
    pub fn components_within(&self, allowed: &BitSet) -> Vec<BitSet> {
        let mut seen = BitSet::new(self.n);
        let mut out = Vec::new();
        for v in allowed.iter() {
            if seen.contains(v) {
                continue;
            }
            let comp = self.ball_within(v, self.n, allowed);
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.ball(0, self.n).count() == self.n
    }

    /// Disjoint union; the second graph's vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut edges: Vec<(usize, usize)> = self.edges().collect();
        edges.extend(other.edges().map(|(u, v)| (u + self.n, v + self.n)));
        Graph::new(n, &edges).expect("valid by construction")
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut edges: Vec<(usize, usize)> = self.edges().collect();
        edges.extend(other.edges().map(|(u, v)| (u + self.n, v + self.n)));
        for u in 0..self.n {
            for v in 0..other.n {
                edges.push((u, v + self.n));
            }
        }
        Graph::new(self.n + other.n, &edges).expect("valid by construction")
    }

    /// The same graph with vertex `v` renamed `map[v]`; `map` must be a
    /// permutation of `0..n`. Labels move with their vertices.
    pub fn permute(&self, map: &[usize]) -> Result<Graph, GraphError> {
        if map.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                found: map.len(),
            });
        }
        let mut seen = BitSet::new(self.n);
        for (index, &v) in map.iter().enumerate() {
            if v >= self.n || !seen.insert(v) {
                return Err(GraphError::VertexOutOfRange { index, vertex: v, n: self.n });
            }
        }
        let edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (map[u], map[v])).collect();
        let mut g = Graph::new(self.n, &edges)?;
        if let Some(labels) = &self.labels {
            let mut moved = labels.clone();
            for (v, l) in labels.iter().enumerate() {
                moved[map[v]] = l.clone();
            }
            g.labels = Some(moved);
        }
        Ok(g)
    }

    /// Edge-for-edge equality, ignoring labels.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}
