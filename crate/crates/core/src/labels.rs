//! Per-vertex role tags attached by generators and read back by verifiers.
//!
//! Algorithms never look at labels. The JSON shapes here are the label
//! sidecar format written next to edge-list files.

use serde::{Deserialize, Serialize};

/// Row/column position of a vertex `v_{i,j}` in `H_{n,m}` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HLabel {
    pub row: usize,
    pub col: usize,
}

/// Block membership in a twisted chain graph. `A`/`B` carry the scalar index
/// `k` in `1..=n^2`; `C` carries the grid position `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role")]
pub enum ChainLabel {
    A { k: usize },
    B { k: usize },
    C { i: usize, j: usize },
}

impl ChainLabel {
    /// `(x, y)` with `k = n(x-1) + y` for `A`/`B` labels.
    pub fn split_index(k: usize, n: usize) -> (usize, usize) {
        ((k - 1) / n + 1, (k - 1) % n + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    H(HLabel),
    Chain(ChainLabel),
    Text(String),
}
