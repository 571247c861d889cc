use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::labels::{HLabel, VertexLabel};

/// Vertex id of `v_{i,j}` (1-based row and column) in `H_{n,m}`.
pub fn h_id(m: usize, i: usize, j: usize) -> usize {
    (i - 1) * m + (j - 1)
}

fn h_edges(n: usize, m: usize, row_cliques: bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in 1..=m {
            if i < n {
                for jj in 1..=j {
                    edges.push((h_id(m, i, j), h_id(m, i + 1, jj)));
                }
            }
            if row_cliques {
                for jj in j + 1..=m {
                    edges.push((h_id(m, i, j), h_id(m, i, jj)));
                }
            }
        }
    }
    edges
}

fn h_labels(n: usize, m: usize) -> Vec<VertexLabel> {
    (1..=n)
        .flat_map(|row| (1..=m).map(move |col| VertexLabel::H(HLabel { row, col })))
        .collect()
}

/// `H_{n,m}`: rows `V_1..V_n` of `m` vertices, `v_{i,j} ~ v_{i+1,j'}` iff
/// `j' <= j`, rows independent.
pub fn h_graph(n: usize, m: usize) -> Graph {
    Graph::with_labels(n * m, &h_edges(n, m, false), h_labels(n, m)).expect("n, m >= 1")
}

/// `H_{n,m}` with every row made a clique.
pub fn h_tilde(n: usize, m: usize) -> Graph {
    Graph::with_labels(n * m, &h_edges(n, m, true), h_labels(n, m)).expect("n, m >= 1")
}

/// Row `i` gets color `(i mod (p+1)) + 1`, over a palette of `p + 1`.
pub fn row_coloring(n: usize, m: usize, p: usize) -> Coloring {
    let colors = (1..=n).flat_map(|i| std::iter::repeat(i % (p + 1) + 1).take(m)).collect();
    Coloring::with_palette(colors, p + 1).expect("colors in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h22_edges() {
        let g = h_graph(2, 2);
        let e: Vec<_> = g.edges().collect();
        // v11-v21, v12-v21, v12-v22
        assert_eq!(e, vec![(0, 2), (1, 2), (1, 3)]);
    }

    #[test]
    fn single_row() {
        assert_eq!(h_graph(1, 5).edge_count(), 0);
        assert!(h_tilde(1, 5).same_edges(&Graph::complete(5).unwrap()));
    }

    #[test]
    fn row_colors() {
        let c = row_coloring(5, 1, 2);
        assert_eq!(c.colors(), &[2, 3, 1, 2, 3]);
        assert_eq!(c.palette_size(), 3);
    }

    #[test]
    fn distant_rows_independent() {
        let g = h_graph(5, 4);
        for (u, v) in g.edges() {
            assert_eq!(v / 4 - u / 4, 1);
        }
    }
}
