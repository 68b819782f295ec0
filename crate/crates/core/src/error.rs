use thiserror::Error;

use crate::graph::Carrier;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has no {0} weights")]
    MissingWeights(Carrier),
    #[error("operator expects a {expected} field, got a {found} field")]
    CarrierMismatch { expected: Carrier, found: Carrier },
    #[error("field has {found} entries, host graph has {expected} {carrier}s")]
    FieldLength { carrier: Carrier, expected: usize, found: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a flooding graph: {0} violation(s)")]
    InvalidFloodingGraph(usize),
    #[error("node {0} lies outside every regional minimum but already weighs 0")]
    ZeroNonMinimum(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dense matrix of size {size} exceeds the limit of {max}")]
    MatrixTooLarge { size: usize, max: usize },
    #[error("no roots given")]
    NoRoots,
    #[error("input graph is not connected")]
    DisconnectedInput,
    #[error("hierarchy does not end with a single region")]
    IncompleteHierarchy,
    #[error("weight {0} exceeds the maximal level")]
    WeightOverflow(u64),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
