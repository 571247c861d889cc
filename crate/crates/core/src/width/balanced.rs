use super::decomposition::RankDecomposition;
use super::WidthError;
use crate::bitset::BitSet;
use crate::graph::{Graph, GraphError};

/// Splits `V(G)` into `(X, Y)` along one edge of `d` so that both sides hold
/// at least a third of `c`.
///
/// `d` is rooted at a new node subdividing its lexicographically smallest
/// edge. With `mu(t)` the number of `c`-vertices below `t`, `X` is the set of
/// vertices below the deepest non-root `t` with `3 mu(t) >= |c|` (smallest id
/// on ties). Both children of that `t` hold fewer than `|c|/3`, so
/// `|X ∩ c| <= 2|c|/3`, and `cutrk(X)` is the width of a tree edge.
pub fn balanced_partition(g: &Graph, c: &BitSet, d: &RankDecomposition) -> Result<(BitSet, BitSet), WidthError> {
    let n = g.n();
    if c.len() != n {
        return Err(GraphError::UniverseMismatch {
            expected: n,
            found: c.len(),
        }
        .into());
    }
    let size = c.count();
    if size < 3 {
        return Err(WidthError::BalancedTooSmall(size));
    }
    let view = d.view(n)?;
    let (a, b) = d
        .edges
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .min()
        .expect("a valid decomposition has an edge");

    // Root at a virtual node between a and b: parents point towards it.
    let nodes = d.nodes;
    let mut parent = vec![usize::MAX; nodes];
    let mut depth = vec![0usize; nodes];
    let mut order = vec![a, b];
    parent[a] = b;
    parent[b] = a;
    depth[a] = 1;
    depth[b] = 1;
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        for &s in &view.adj[t] {
            if s != parent[t] && !(t == a && s == b) && !(t == b && s == a) {
                parent[s] = t;
                depth[s] = depth[t] + 1;
                order.push(s);
            }
        }
        i += 1;
    }
    let mut below = vec![BitSet::new(n); nodes];
    for &t in order.iter().rev() {
        if let Some(v) = view.vertex_of_leaf[t] {
            below[t].insert(v);
        }
        let is_top = t == a || t == b;
        if !is_top {
            let sub = below[t].clone();
            below[parent[t]].union_with(&sub);
        }
    }
    let t = (0..nodes)
        .filter(|&t| 3 * below[t].intersection_count(c) >= size)
        .max_by_key(|&t| (depth[t], std::cmp::Reverse(t)))
        .expect("one of the two top nodes holds half of c");
    let x = below[t].clone();
    let y = x.complement();
    Ok((x, y))
}
