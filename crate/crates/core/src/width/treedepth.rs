use std::collections::HashMap;

use super::WidthError;
use crate::graph::Graph;

/// Default per-component vertex cap for [`tree_depth_exact`].
pub const TREE_DEPTH_CAP: usize = 14;
const HARD_CAP: usize = 64;

pub fn tree_depth_exact(g: &Graph) -> Result<usize, WidthError> {
    tree_depth_exact_capped(g, TREE_DEPTH_CAP)
}

/// Exact tree-depth: the maximum over components, each evaluated by
/// `td(S) = 1 + min_v td(S - v)` with memoization on connected vertex
/// subsets. The cap applies to the largest component.
pub fn tree_depth_exact_capped(g: &Graph, cap: usize) -> Result<usize, WidthError> {
    let cap = cap.min(HARD_CAP);
    let comps = g.components();
    let largest = comps.iter().map(|c| c.count()).max().unwrap_or(0);
    if largest > cap {
        return Err(WidthError::TooLarge {
            n: largest,
            cap,
            hint: "tree-depth is only computed exactly on small components",
        });
    }
    let mut best = 0;
    for comp in comps {
        let (h, _) = g.induced_subgraph(&comp)?;
        let adj = h.adjacency_masks().expect("component fits in a word");
        let mut solver = Solver {
            adj,
            memo: HashMap::new(),
        };
        let full = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
        best = best.max(solver.connected(full));
    }
    Ok(best)
}

/// Tree-depth of `G[s]` for a graph given by adjacency masks (`n <= 64`).
pub(crate) fn tree_depth_of_mask(adj: &[u64], s: u64) -> usize {
    let mut solver = Solver {
        adj: adj.to_vec(),
        memo: HashMap::new(),
    };
    solver.components(s).into_iter().map(|c| solver.connected(c)).max().unwrap_or(0)
}

struct Solver {
    adj: Vec<u64>,
    memo: HashMap<u64, usize>,
}

impl Solver {
    fn components(&self, s: u64) -> Vec<u64> {
        let mut rest = s;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                next &= s & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    fn is_clique(&self, s: u64) -> bool {
        let mut f = s;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            if (self.adj[v] | (1 << v)) & s != s {
                return false;
            }
        }
        true
    }

    /// Tree-depth of `G[s]` for connected `s`.
    fn connected(&mut self, s: u64) -> usize {
        let size = s.count_ones() as usize;
        if size <= 2 || self.is_clique(s) {
            return size;
        }
        if let Some(&d) = self.memo.get(&s) {
            return d;
        }
        // Deleting any vertex of a connected graph on k vertices leaves
        // something of depth >= 1, and td <= k.
        let mut best = size;
        let mut f = s;
        // Try high-degree vertices first: they tend to give the good splits.
        let mut candidates = Vec::with_capacity(size);
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            candidates.push(v);
        }
        candidates.sort_by_key(|&v| (std::cmp::Reverse((self.adj[v] & s).count_ones()), v));
        for v in candidates {
            let mut comps = self.components(s & !(1u64 << v));
            comps.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));
            let mut worst = 0;
            for c in comps {
                if 1 + worst >= best {
                    break;
                }
                worst = worst.max(self.connected(c));
            }
            if 1 + worst < best {
                best = 1 + worst;
            }
            if best == 2 {
                break;
            }
        }
        self.memo.insert(s, best);
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(tree_depth_exact(&Graph::empty(1).unwrap()).unwrap(), 1);
        assert_eq!(tree_depth_exact(&Graph::empty(5).unwrap()).unwrap(), 1);
        assert_eq!(tree_depth_exact(&path(2)).unwrap(), 2);
        assert_eq!(tree_depth_exact(&path(4)).unwrap(), 3);
        assert_eq!(tree_depth_exact(&path(7)).unwrap(), 3);
        assert_eq!(tree_depth_exact(&path(8)).unwrap(), 4);
        assert_eq!(tree_depth_exact(&Graph::complete(6).unwrap()).unwrap(), 6);
    }

    #[test]
    fn star_is_two() {
        let g = Graph::new(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(tree_depth_exact(&g).unwrap(), 2);
    }

    #[test]
    fn cap_is_per_component() {
        let g = path(10).disjoint_union(&path(10));
        assert_eq!(tree_depth_exact_capped(&g, 10).unwrap(), 4);
        assert!(tree_depth_exact_capped(&path(11), 10).is_err());
    }
}
