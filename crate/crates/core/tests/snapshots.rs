//! Pinned values for small named graphs.

use lowrw::generators::{grid, h_graph, h_tilde};
use lowrw::orderings::wcol_heuristic;
use lowrw::width::rank_width_exact;

#[test]
fn h_graphs_with_two_rows() {
    let h: Vec<usize> = (2..=4).map(|m| rank_width_exact(&h_graph(2, m)).unwrap().value).collect();
    let ht: Vec<usize> = (2..=4).map(|m| rank_width_exact(&h_tilde(2, m)).unwrap().value).collect();
    assert_eq!(h, [1, 1, 1]);
    assert_eq!(ht, [1, 2, 2]);
}

#[test]
fn grid_weak_two_coloring_number() {
    let (value, _) = wcol_heuristic(&grid(5, 5), 2);
    assert_eq!(value, 7);
}
