//! Constructions, verifiers and lower-bound certificates for low rank-width
//! colorings of graphs.

pub mod bitset;
pub mod coloring;
pub mod ehchi;
pub mod generators;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod lab;
pub mod labels;
pub mod orderings;
pub mod width;

pub use bitset::BitSet;
pub use graph::{Graph, GraphError};
