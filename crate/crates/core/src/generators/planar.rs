//! Map graphs from plane rotation systems, and line graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("vertex {u} lists {v}, which is out of range, itself, repeated, or does not list {u} back")]
    Asymmetric { u: usize, v: usize },
    #[error("rotation system is disconnected")]
    Disconnected,
    #[error("face tracing found {faces} faces; V - E + F = {euler}, not 2")]
    NotPlane { faces: usize, euler: i64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Per-vertex cyclic neighbor order of a plane embedding. JSON:
/// `{"rotations": [[neighbors in cyclic order], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn graph(&self) -> Result<Graph, PlanarError> {
        let n = self.rotations.len();
        let mut edges = Vec::new();
        for (u, rot) in self.rotations.iter().enumerate() {
            let mut seen = BitSet::new(n.max(1));
            for &v in rot {
                if v >= n || v == u || !seen.insert(v) || !self.rotations[v].contains(&u) {
                    return Err(PlanarError::Asymmetric { u, v });
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Ok(Graph::new(n, &edges)?)
    }

    /// Faces as vertex sets. A dart `(u, v)` is followed by `(v, w)` where `w`
    /// comes right after `u` in the rotation at `v`. Checked against Euler's
    /// formula.
    pub fn faces(&self) -> Result<Vec<BitSet>, PlanarError> {
        let g = self.graph()?;
        let n = g.n();
        if !g.is_connected() {
            return Err(PlanarError::Disconnected);
        }
        if g.edge_count() == 0 {
            return Ok(vec![BitSet::full(n)]);
        }
        // Dart ids: offset[u] + index of v in rotations[u].
        let mut offset = vec![0; n + 1];
        for u in 0..n {
            offset[u + 1] = offset[u] + self.rotations[u].len();
        }
        let index_in = |v: usize, u: usize| self.rotations[v].iter().position(|&x| x == u).unwrap();
        let darts = offset[n];
        let mut used = vec![false; darts];
        let mut faces = Vec::new();
        for u0 in 0..n {
            for i0 in 0..self.rotations[u0].len() {
                if used[offset[u0] + i0] {
                    continue;
                }
                let mut face = BitSet::new(n);
                let (mut u, mut i) = (u0, i0);
                while !used[offset[u] + i] {
                    used[offset[u] + i] = true;
                    face.insert(u);
                    let v = self.rotations[u][i];
                    let rot_v = &self.rotations[v];
                    let next = (index_in(v, u) + 1) % rot_v.len();
                    u = v;
                    i = next;
                }
                faces.push(face);
            }
        }
        let euler = n as i64 - g.edge_count() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(PlanarError::NotPlane {
                faces: faces.len(),
                euler,
            });
        }
        Ok(faces)
    }
}

/// The `a x b` grid (ids as in [`grid`](super::grid)) embedded in the plane,
/// neighbors listed right, down, left, up.
pub fn grid_rotation_system(a: usize, b: usize) -> RotationSystem {
    let mut rotations = Vec::with_capacity(a * b);
    for r in 0..a {
        for c in 0..b {
            let mut rot = Vec::new();
            if c + 1 < b {
                rot.push(r * b + c + 1);
            }
            if r + 1 < a {
                rot.push((r + 1) * b + c);
            }
            if c > 0 {
                rot.push(r * b + c - 1);
            }
            if r > 0 {
                rot.push((r - 1) * b + c);
            }
            rotations.push(rot);
        }
    }
    RotationSystem { rotations }
}

/// The map graph of the embedding: faces adjacent iff they share a vertex,
/// computed as the square of the radial graph (vertices and faces, joined by
/// incidence) restricted to the faces.
pub fn radial_square_map_graph(rs: &RotationSystem) -> Result<Graph, PlanarError> {
    let faces = rs.faces()?;
    let n = rs.rotations.len();
    let f = faces.len();
    let mut edges = Vec::new();
    for (i, face) in faces.iter().enumerate() {
        for v in face.iter() {
            edges.push((v, n + i));
        }
    }
    let radial = Graph::new(n + f, &edges)?;
    let square = radial.power(2)?;
    let face_set = BitSet::from_indices(n + f, n..n + f);
    Ok(square.induced_subgraph(&face_set)?.0)
}

/// Line graph by definition; edges of `g` are numbered in [`Graph::edges`]
/// order.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = Vec::new();
    for (a, &(u1, v1)) in edges.iter().enumerate() {
        for (b, &(u2, v2)) in edges.iter().enumerate().skip(a + 1) {
            if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                out.push((a, b));
            }
        }
    }
    Graph::new(edges.len(), &out)
}

/// Line graph as the square of the 1-subdivision restricted to the
/// subdivision vertices.
pub fn line_graph_via_subdivision(g: &Graph) -> Result<Graph, GraphError> {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    let mut sub = Vec::with_capacity(2 * edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        sub.push((u, n + i));
        sub.push((v, n + i));
    }
    let total = n + edges.len();
    let square = Graph::new(total, &sub)?.power(2)?;
    Ok(square.induced_subgraph(&BitSet::from_indices(total, n..total))?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, star};

    #[test]
    fn triangle_two_faces() {
        let rs = RotationSystem {
            rotations: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
        };
        assert_eq!(rs.faces().unwrap().len(), 2);
        assert!(radial_square_map_graph(&rs).unwrap().same_edges(&Graph::complete(2).unwrap()));
    }

    #[test]
    fn tree_one_face() {
        let rs = RotationSystem {
            rotations: vec![vec![1], vec![0, 2], vec![1]],
        };
        assert_eq!(radial_square_map_graph(&rs).unwrap().n(), 1);
        let single = RotationSystem { rotations: vec![vec![]] };
        assert_eq!(radial_square_map_graph(&single).unwrap().n(), 1);
    }

    #[test]
    fn grid_faces() {
        assert!(radial_square_map_graph(&grid_rotation_system(2, 2)).unwrap().same_edges(&Graph::complete(2).unwrap()));
        let m = radial_square_map_graph(&grid_rotation_system(3, 4)).unwrap();
        assert_eq!(m.n(), 2 * 3 + 1);
    }

    #[test]
    fn inconsistent_rotation_rejected() {
        let bad = RotationSystem {
            rotations: vec![vec![1], vec![]],
        };
        assert!(matches!(bad.graph(), Err(PlanarError::Asymmetric { .. })));
        // K4 with a non-planar rotation: the Euler check fails.
        let k4 = RotationSystem {
            rotations: vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
        };
        assert!(matches!(k4.faces(), Err(PlanarError::NotPlane { .. })));
    }

    #[test]
    fn line_graphs() {
        let p4 = path(4);
        assert!(line_graph_via_subdivision(&p4).unwrap().same_edges(&path(3)));
        let k3 = Graph::complete(3).unwrap();
        assert!(line_graph_via_subdivision(&k3).unwrap().same_edges(&k3));
        assert!(line_graph_via_subdivision(&star(3)).unwrap().same_edges(&k3));
        assert!(line_graph(&star(3)).unwrap().same_edges(&k3));
    }
}
