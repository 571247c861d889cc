//! Cograph recognition by the union/join recursion, and cliques or
//! independent sets read off the cotree.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::graph::Graph;

/// JSON: nested `{"op": "leaf", "vertex": v}` or
/// `{"op": "union" | "join", "children": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Cotree {
    Leaf { vertex: usize },
    Union { children: Vec<Cotree> },
    Join { children: Vec<Cotree> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Clique,
    Independent,
}

impl Cotree {
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf { vertex } => out.push(*vertex),
            Cotree::Union { children } | Cotree::Join { children } => children.iter().for_each(|c| c.collect(out)),
        }
    }

    /// The graph on `n` vertices the cotree describes; `None` if a leaf is
    /// out of range or repeated. Vertices without leaves are isolated.
    pub fn to_graph(&self, n: usize) -> Option<Graph> {
        let mut seen = BitSet::new(n);
        if !self.leaves().into_iter().all(|v| v < n && seen.insert(v)) {
            return None;
        }
        let mut edges = Vec::new();
        self.edges_into(&mut edges);
        Graph::new(n, &edges).ok()
    }

    fn edges_into(&self, edges: &mut Vec<(usize, usize)>) {
        if let Cotree::Union { children } | Cotree::Join { children } = self {
            children.iter().for_each(|c| c.edges_into(edges));
        }
        if let Cotree::Join { children } = self {
            let sets: Vec<Vec<usize>> = children.iter().map(Cotree::leaves).collect();
            for (i, a) in sets.iter().enumerate() {
                for b in &sets[i + 1..] {
                    for &u in a {
                        edges.extend(b.iter().map(|&v| (u, v)));
                    }
                }
            }
        }
    }

    /// A maximum clique and a maximum independent set: cliques add up over
    /// join children and take the best union child; independent sets dually.
    fn best_sets(&self) -> (Vec<usize>, Vec<usize>) {
        match self {
            Cotree::Leaf { vertex } => (vec![*vertex], vec![*vertex]),
            Cotree::Union { children } | Cotree::Join { children } => {
                let parts: Vec<(Vec<usize>, Vec<usize>)> = children.iter().map(Cotree::best_sets).collect();
                let largest = |sets: Vec<Vec<usize>>| sets.into_iter().max_by_key(|s| s.len()).unwrap_or_default();
                let (cliques, indeps): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
                if matches!(self, Cotree::Join { .. }) {
                    (cliques.concat(), largest(indeps))
                } else {
                    (largest(cliques), indeps.concat())
                }
            }
        }
    }
}

/// The cotree of `g` if it is a cograph: disconnected graphs split into
/// components under a union node, graphs with disconnected complement into
/// co-components under a join node.
pub fn is_cograph(g: &Graph) -> Option<Cotree> {
    fn build(g: &Graph, gc: &Graph, set: &BitSet) -> Option<Cotree> {
        if set.count() == 1 {
            return Some(Cotree::Leaf {
                vertex: set.first().unwrap(),
            });
        }
        let comps = g.components_within(set);
        if comps.len() > 1 {
            let children = comps.iter().map(|c| build(g, gc, c)).collect::<Option<Vec<_>>>()?;
            return Some(Cotree::Union { children });
        }
        let co = gc.components_within(set);
        if co.len() > 1 {
            let children = co.iter().map(|c| build(g, gc, c)).collect::<Option<Vec<_>>>()?;
            return Some(Cotree::Join { children });
        }
        None
    }
    if g.n() == 0 {
        return None;
    }
    build(g, &g.complement(), &g.vertex_set())
}

/// The larger of a maximum clique and a maximum independent set of the
/// cograph (clique on ties). Its size squared is at least the leaf count.
pub fn clique_or_is(tree: &Cotree) -> (SetKind, Vec<usize>) {
    let (mut clique, mut indep) = tree.best_sets();
    clique.sort_unstable();
    indep.sort_unstable();
    if clique.len() >= indep.len() {
        (SetKind::Clique, clique)
    } else {
        (SetKind::Independent, indep)
    }
}

/// Whether `set` is a clique (or independent set) of `g`, by scanning all
/// pairs.
pub fn check_set(g: &Graph, set: &[usize], kind: SetKind) -> bool {
    set.iter().enumerate().all(|(i, &u)| {
        set[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v) == (kind == SetKind::Clique))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, random_cograph};

    #[test]
    fn p4_is_not_a_cograph() {
        assert!(is_cograph(&path(4)).is_none());
        assert!(is_cograph(&path(3)).is_some());
    }

    #[test]
    fn cotree_round_trip() {
        for seed in 0..10 {
            let g = random_cograph(12, seed);
            let t = is_cograph(&g).expect("generated from the grammar");
            assert!(t.to_graph(12).unwrap().same_edges(&g));
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(serde_json::from_str::<Cotree>(&json).unwrap(), t);
        }
    }

    #[test]
    fn complete_and_edgeless() {
        let k = Graph::complete(9).unwrap();
        let (kind, set) = clique_or_is(&is_cograph(&k).unwrap());
        assert_eq!((kind, set.len()), (SetKind::Clique, 9));
        let e = Graph::empty(9).unwrap();
        let (kind, set) = clique_or_is(&is_cograph(&e).unwrap());
        assert_eq!((kind, set.len()), (SetKind::Independent, 9));
        assert!(check_set(&e, &set, kind));
    }

    #[test]
    fn cotree_json_shape() {
        let t = is_cograph(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"op":"join","children":[{"op":"leaf","vertex":0},{"op":"leaf","vertex":1}]}"#
        );
    }
}
