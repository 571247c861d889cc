//! Lower-bound experiments on twisted chains: ordered matchings across
//! bipartitions, and monochromatic sub-chains of colored chains.

mod certificate;
mod ramsey;

use thiserror::Error;

use crate::graph::GraphError;

pub use certificate::{
    alternating_sequence, certificate_rank, lower_bound_certificate, matching_from_alternation, mixed_lines,
    random_balanced_partition, Bipartition, Direction, ImbalanceReport, LineOrder, LowerBoundOutcome,
    MatchingCertificate, Pair, Side,
};
pub use ramsey::{
    extracted_variant, monochromatic_substructure, ramsey_bireduce, ramsey_bound, verify_extraction, ExtractionMode,
    ExtractionReport, RamseyResult, StageReport,
};

#[derive(Debug, Error)]
pub enum LabError {
    #[error("chain condition fails at pair {index}: {msg}")]
    Chain { index: usize, msg: String },
    #[error("pair {index} does not straddle the bipartition in the stated direction")]
    WrongSide { index: usize },
    #[error("sequence element {index} breaks the alternation or the order")]
    NotAlternating { index: usize },
    #[error("alternating sequence of length {0} is too short; need at least 4")]
    SequenceTooShort(usize),
    #[error("expected {expected} vertices for this twisted chain order, found {found}")]
    HostSize { expected: usize, found: usize },
    #[error("twisted chain order {0} is below 12; the certificate needs floor(m/12) >= 1")]
    OrderTooSmall(usize),
    #[error("extraction check failed: {0}")]
    Extraction(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
