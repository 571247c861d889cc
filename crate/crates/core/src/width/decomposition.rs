use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::WidthError;
use crate::bitset::BitSet;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafAssignment {
    pub leaf: usize,
    pub vertex: usize,
}

/// A subcubic tree whose leaves are in bijection with the vertices of a graph.
///
/// Nodes are `0..nodes`. Serialized as
/// `{"nodes": N, "edges": [[a,b],...], "leaf_map": [{"leaf":..,"vertex":..},...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDecomposition {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    pub leaf_map: Vec<LeafAssignment>,
}

/// A structurally valid decomposition, rooted at node 0 for side queries.
pub(crate) struct TreeView {
    pub adj: Vec<Vec<usize>>,
    pub vertex_of_leaf: Vec<Option<usize>>,
}

impl RankDecomposition {
    /// Checks degree, tree-shape and leaf bijection invariants against a graph
    /// on `n` vertices.
    pub(crate) fn view(&self, n: usize) -> Result<TreeView, WidthError> {
        let bad = |msg: String| Err(WidthError::Malformed(msg));
        if self.nodes < 2 {
            return bad(format!("tree has {} nodes, needs at least 2", self.nodes));
        }
        if self.edges.len() + 1 != self.nodes {
            return bad(format!("{} nodes but {} edges; not a tree", self.nodes, self.edges.len()));
        }
        let mut adj = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            if a >= self.nodes || b >= self.nodes || a == b {
                return bad(format!("invalid tree edge ({a}, {b})"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &s in &adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    stack.push(s);
                }
            }
        }
        if let Some(t) = seen.iter().position(|s| !s) {
            return bad(format!("node {t} is disconnected from node 0"));
        }
        for (t, nb) in adj.iter().enumerate() {
            if nb.len() != 1 && nb.len() != 3 {
                return bad(format!("node {t} has degree {}, expected 1 or 3", nb.len()));
            }
        }
        let leaves = adj.iter().filter(|nb| nb.len() == 1).count();
        if leaves != n || self.leaf_map.len() != n {
            return bad(format!(
                "{leaves} leaves and {} leaf assignments for {n} vertices",
                self.leaf_map.len()
            ));
        }
        let mut vertex_of_leaf = vec![None; self.nodes];
        let mut leaf_of_vertex = vec![None; n];
        for &LeafAssignment { leaf, vertex } in &self.leaf_map {
            if leaf >= self.nodes || adj[leaf].len() != 1 {
                return bad(format!("leaf_map names node {leaf}, which is not a leaf"));
            }
            if vertex >= n {
                return bad(format!("leaf_map names vertex {vertex}, graph has {n}"));
            }
            if vertex_of_leaf[leaf].is_some() || leaf_of_vertex[vertex].is_some() {
                return bad(format!("leaf_map is not a bijection at leaf {leaf} / vertex {vertex}"));
            }
            vertex_of_leaf[leaf] = Some(vertex);
            leaf_of_vertex[vertex] = Some(leaf);
        }
        Ok(TreeView { adj, vertex_of_leaf })
    }

    pub fn validate(&self, n: usize) -> Result<(), WidthError> {
        self.view(n).map(|_| ())
    }

    /// For every tree edge, in `edges` order, the vertex set on one side.
    pub fn edge_sides(&self, n: usize) -> Result<Vec<BitSet>, WidthError> {
        let view = self.view(n)?;
        let (parent, order) = view.rooted(0);
        let below = view.subtree_vertices(&parent, &order, n);
        Ok(self
            .edges
            .iter()
            .map(|&(a, b)| if parent[b] == Some(a) { below[b].clone() } else { below[a].clone() })
            .collect())
    }

    pub fn edge_widths(&self, g: &Graph) -> Result<Vec<usize>, WidthError> {
        Ok(self.edge_sides(g.n())?.iter().map(|side| g.cutrank(side)).collect())
    }

    /// Width of the decomposition: the largest cut-rank over tree edges.
    pub fn width(&self, g: &Graph) -> Result<usize, WidthError> {
        Ok(self.edge_widths(g)?.into_iter().max().unwrap_or(0))
    }

    /// Decomposition of `G[keep]`, with vertices renumbered as
    /// [`Graph::induced_subgraph`] does. `None` when fewer than two vertices
    /// remain. Width never increases.
    pub fn restrict(&self, n: usize, keep: &BitSet) -> Result<Option<RankDecomposition>, WidthError> {
        let view = self.view(n)?;
        if keep.count() < 2 {
            return Ok(None);
        }
        let mut adj: Vec<BTreeSet<usize>> = view.adj.iter().map(|nb| nb.iter().copied().collect()).collect();
        let mut alive = vec![true; self.nodes];
        let keeps_leaf = |t: usize| view.vertex_of_leaf[t].is_some_and(|v| keep.contains(v));

        // Prune dropped leaves, then internal nodes that became leaves.
        let mut stack: Vec<usize> = (0..self.nodes).filter(|&t| adj[t].len() <= 1 && !keeps_leaf(t)).collect();
        while let Some(t) = stack.pop() {
            if !alive[t] || adj[t].len() > 1 || keeps_leaf(t) {
                continue;
            }
            alive[t] = false;
            let nbs: Vec<usize> = adj[t].iter().copied().collect();
            for s in nbs {
                adj[s].remove(&t);
                if adj[s].len() <= 1 && !keeps_leaf(s) {
                    stack.push(s);
                }
            }
            adj[t].clear();
        }
        // Suppress degree-2 nodes.
        for t in 0..self.nodes {
            if alive[t] && adj[t].len() == 2 {
                let mut it = adj[t].iter().copied();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                adj[a].remove(&t);
                adj[b].remove(&t);
                adj[a].insert(b);
                adj[b].insert(a);
                adj[t].clear();
                alive[t] = false;
            }
        }
        let mut new_id = vec![usize::MAX; self.nodes];
        let mut count = 0;
        for t in 0..self.nodes {
            if alive[t] {
                new_id[t] = count;
                count += 1;
            }
        }
        let mut edges = Vec::new();
        for t in 0..self.nodes {
            for &s in &adj[t] {
                if alive[t] && t < s {
                    edges.push((new_id[t], new_id[s]));
                }
            }
        }
        let mut new_vertex = vec![usize::MAX; n];
        for (i, v) in keep.iter().enumerate() {
            new_vertex[v] = i;
        }
        let leaf_map = (0..self.nodes)
            .filter(|&t| alive[t] && keeps_leaf(t))
            .map(|t| LeafAssignment {
                leaf: new_id[t],
                vertex: new_vertex[view.vertex_of_leaf[t].unwrap()],
            })
            .collect();
        let out = RankDecomposition {
            nodes: count,
            edges,
            leaf_map,
        };
        debug_assert!(out.validate(keep.count()).is_ok());
        Ok(Some(out))
    }
}

impl TreeView {
    /// Parent pointers and a BFS order from `root`.
    pub fn rooted(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.adj.len()];
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let t = order[i];
            for &s in &self.adj[t] {
                if s != root && parent[s].is_none() {
                    parent[s] = Some(t);
                    order.push(s);
                }
            }
            i += 1;
        }
        (parent, order)
    }

    pub fn subtree_vertices(&self, parent: &[Option<usize>], order: &[usize], n: usize) -> Vec<BitSet> {
        let mut below = vec![BitSet::new(n); self.adj.len()];
        for &t in order.iter().rev() {
            if let Some(v) = self.vertex_of_leaf[t] {
                below[t].insert(v);
            }
            if let Some(p) = parent[t] {
                let sub = below[t].clone();
                below[p].union_with(&sub);
            }
        }
        below
    }
}

/// Checks `d` against `G` and returns its width.
pub fn verify_decomposition(g: &Graph, d: &RankDecomposition) -> Result<usize, WidthError> {
    d.validate(g.n())?;
    d.width(g)
}

/// The caterpillar decomposition induced by a vertex order: leaves hang off a
/// spine so that every prefix of `order` is one side of some tree edge.
pub fn caterpillar(order: &[usize]) -> RankDecomposition {
    let n = order.len();
    assert!(n >= 2, "caterpillar needs at least two vertices");
    let leaf_map = order
        .iter()
        .enumerate()
        .map(|(leaf, &vertex)| LeafAssignment { leaf, vertex })
        .collect();
    if n == 2 {
        return RankDecomposition {
            nodes: 2,
            edges: vec![(0, 1)],
            leaf_map,
        };
    }
    let spine = |j: usize| n + j;
    let mut edges = vec![(0, spine(0)), (1, spine(0))];
    for i in 2..n - 1 {
        edges.push((i, spine(i - 1)));
    }
    edges.push((n - 1, spine(n - 3)));
    for j in 0..n - 3 {
        edges.push((spine(j), spine(j + 1)));
    }
    RankDecomposition {
        nodes: 2 * n - 2,
        edges,
        leaf_map,
    }
}
