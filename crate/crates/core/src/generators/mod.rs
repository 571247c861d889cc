//! Graph families: the layered graphs `H_{n,m}`, twisted chains with their
//! intersection models, map and line graphs, and small utility families.

mod chain;
mod hgraph;
mod planar;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub(crate) use chain::chain_cross_adjacent;
pub use chain::{
    interval_intersection_graph, interval_model, segment_intersection_graph, segment_model, twisted_chain,
    twisted_chain_id, ChainVariant, IntervalModel, SegmentModel,
};
pub use hgraph::{h_graph, h_id, h_tilde, row_coloring};
pub use planar::{
    grid_rotation_system, line_graph, line_graph_via_subdivision, radial_square_map_graph, PlanarError,
    RotationSystem,
};

pub fn path(n: usize) -> Graph {
    Graph::new(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).expect("n >= 1")
}

/// `C_n` for `n >= 3`; smaller `n` give paths.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).expect("n >= 3")
}

/// `a x b` grid; vertex `(row, col)` has id `row * b + col`.
pub fn grid(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..a {
        for c in 0..b {
            let v = r * b + c;
            if c + 1 < b {
                edges.push((v, v + 1));
            }
            if r + 1 < a {
                edges.push((v, v + b));
            }
        }
    }
    Graph::new(a * b, &edges).expect("a, b >= 1")
}

/// `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    Graph::new(k + 1, &(1..=k).map(|i| (0, i)).collect::<Vec<_>>()).expect("valid")
}

/// Each vertex `i` is joined to `min(i, d)` distinct earlier vertices chosen
/// uniformly, so removing vertices from the last one down always finds
/// degree at most `d`.
pub fn random_degenerate(n: usize, d: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        for u in sample(&mut rng, v, d.min(v)).into_iter() {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("n >= 1")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("n >= 1")
}

/// A cograph built from its grammar: split the vertex range at a random
/// point, build both halves, and take their disjoint union or join.
pub fn random_cograph(n: usize, seed: u64) -> Graph {
    fn build(n: usize, rng: &mut ChaCha8Rng) -> Graph {
        if n == 1 {
            return Graph::empty(1).unwrap();
        }
        let k = rng.gen_range(1..n);
        let a = build(k, rng);
        let b = build(n - k, rng);
        if rng.gen_bool(0.5) {
            a.disjoint_union(&b)
        } else {
            a.join(&b)
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build(n, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderings::degeneracy;

    #[test]
    fn small_families() {
        // 0-1-3-2-0
        assert!(grid(2, 2).permute(&[0, 1, 3, 2]).unwrap().same_edges(&cycle(4)));
        assert_eq!(grid(4, 5).edge_count(), 4 * 4 + 3 * 5);
        assert_eq!(star(3).degree(0), 3);
        assert_eq!(cycle(5).edge_count(), 5);
    }

    #[test]
    fn seeded_determinism() {
        assert_eq!(random_degenerate(30, 2, 7), random_degenerate(30, 2, 7));
        assert_ne!(random_degenerate(30, 2, 7), random_degenerate(30, 2, 8));
        assert_eq!(gnp(20, 0.2, 1), gnp(20, 0.2, 1));
        assert_eq!(random_cograph(16, 3), random_cograph(16, 3));
    }

    #[test]
    fn degenerate_bound() {
        for seed in 0..5 {
            assert!(degeneracy(&random_degenerate(50, 2, seed)) <= 2);
        }
    }
}
