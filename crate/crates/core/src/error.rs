use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("size {size} exceeds the configured limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("ground sets differ: {left} vs {right}")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("partition is crossing")]
    Crossing,
    #[error("partitions are not ordered: the first is not below the second")]
    NotBelow,
    #[error("empty input")]
    EmptyInput,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index out of bounds: {0}")]
    Bounds(String),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("malformed representation: {0}")]
    MalformedRep(String),
    #[error("relation `{relation}` violated with residual {residual:e}")]
    RelationsViolated { relation: String, residual: f64 },
    #[error("moment of order {order} requested but only {available} are known")]
    MomentUnavailable { order: usize, available: usize },
}
