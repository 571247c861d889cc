//! Cographs inside graphs of bounded rank-width, clique-or-independent-set
//! witnesses, and product colorings.

mod cotree;
mod extract;
mod witness;

use thiserror::Error;

use crate::coloring::ColoringError;
use crate::graph::GraphError;
use crate::width::WidthError;

pub use cotree::{check_set, clique_or_is, is_cograph, Cotree, SetKind};
pub use extract::{cograph_extract, kappa, uniform_blocks, Relation, UniformBlocks};
pub use witness::{
    chi_product_coloring, class_decompositions, class_decompositions_capped, eh_witness, eh_witness_capped,
    greedy_degeneracy_coloring, EHParams, ProductColoring, Witness,
};

#[derive(Debug, Error)]
pub enum EhError {
    #[error("decomposition has width {width}, above p = {p}")]
    WidthExceeded { width: usize, p: usize },
    #[error("cut has {patterns} distinct rows (rank {rank}), more than 2^{p}")]
    RankPrecondition { patterns: usize, rank: usize, p: usize },
    #[error("a rank decomposition is required for graphs on two or more vertices")]
    MissingDecomposition,
    #[error("empty vertex set")]
    EmptySide,
    #[error("class {color} has rank-width {width}, above R(1) = {r1}")]
    ClassTooWide { color: usize, width: usize, r1: usize },
    #[error("class {color} has {size} vertices and upper bound {upper}; too large to settle exactly")]
    Unverifiable { color: usize, size: usize, upper: usize },
    #[error("class {color} coloring is improper on edge {u}-{v}")]
    ImproperSubcoloring { color: usize, u: usize, v: usize },
    #[error("{0}")]
    BoundViolated(String),
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}
