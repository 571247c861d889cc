//! Rank-decompositions, exact and heuristic rank-width, balanced cuts and
//! exact tree-depth.

mod balanced;
mod decomposition;
mod rankwidth;
mod treedepth;

use thiserror::Error;

use crate::graph::GraphError;

pub use balanced::balanced_partition;
pub use decomposition::{caterpillar, verify_decomposition, LeafAssignment, RankDecomposition};
pub use rankwidth::{
    rank_width_by_components, rank_width_exact, rank_width_exact_capped, rank_width_upper, OrderStrategy,
    WidthMethod, WidthReport, EXACT_RANK_WIDTH_CAP, EXACT_RANK_WIDTH_MAX,
};
pub(crate) use treedepth::tree_depth_of_mask;
pub use treedepth::{tree_depth_exact, tree_depth_exact_capped, TREE_DEPTH_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WidthError {
    #[error("malformed decomposition: {0}")]
    Malformed(String),
    #[error("{n} vertices exceeds the exact cap of {cap}; {hint}")]
    TooLarge { n: usize, cap: usize, hint: &'static str },
    #[error("balanced partition needs |C| >= 3, got {0}")]
    BalancedTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
