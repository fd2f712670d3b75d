use thiserror::Error;

use crate::partition::Partition;
use crate::quiver::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed partition item `{0}`")]
    PartitionSyntax(String),
    #[error("empty partition")]
    EmptyPartition,
    #[error("vertex {0} is not a box of the Young diagram of {1}")]
    NoSuchVertex(Vertex, Partition),
    #[error("vector shape does not match the Young diagram of {0}")]
    ShapeMismatch(Partition),
    #[error("dimension vectors must be non-negative")]
    NegativeDimension,
    #[error("radical defined here only for non-negative forms")]
    NotNonNegative,
    #[error("form is not weakly positive; witness {0:?}")]
    NotWeaklyPositive(Vec<i64>),
    #[error("radical has rank {0}, expected a single generator")]
    RadicalRank(usize),
    #[error("radical generator mixes signs")]
    MixedSignGenerator,
    #[error("{0} is not of {1} representation type")]
    WrongType(Partition, &'static str),
    #[error("orbit quiver undefined on partial component")]
    PartialComponent,
    #[error("knitting breached mesh positivity at {0}")]
    MeshBreach(String),
    #[error("dimension overflow while knitting")]
    Overflow,
    #[error("no family descriptor bundled for {0}")]
    NoDescriptor(Partition),
    #[error("parameter vector must be nonzero and have length {0}")]
    BadParameters(usize),
    #[error("invalid graded pair: {0}")]
    InvalidPair(String),
    #[error("malformed matrix data: {0}")]
    Matrix(String),
    #[error("representations live over different partitions")]
    DifferentPartitions,
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("unsupported field size {0}; expected 2 or 3")]
    FieldSize(u64),
    #[error("zero bigraded space")]
    ZeroSpace,
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
