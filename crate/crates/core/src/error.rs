use thiserror::Error;

use crate::homspace::MatrixClass;
use crate::partitions::PartitionCategory;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point count mismatch: {left} vs {right}")]
    PointMismatch { left: usize, right: usize },

    #[error("index tuple has length {got}, partition has {expected} points")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unknown category `{0}` (expected one of O, S, H, B, Ofree, Sfree, Hfree, Bfree, Sprime, Bprime)")]
    UnknownCategory(String),

    #[error("category {0} has no Weingarten calculus here")]
    PrimedCategory(PartitionCategory),

    #[error("singular Gram, rank {rank} of {size}")]
    SingularGram { rank: usize, size: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("word dimension {word} does not match n = {n}")]
    DimensionMismatch { word: usize, n: usize },

    #[error("row index {row} is not above the cutoff k = {k}")]
    RowNotBelowCutoff { row: usize, k: usize },

    #[error("cutoff k = {k} exceeds n = {n}")]
    CutoffTooLarge { k: usize, n: usize },

    #[error("malformed word pair `{0}`")]
    MalformedPair(String),

    #[error("matrix is not a {required} within tolerance")]
    ClassMismatch { required: MatrixClass },

    #[error("n = {n} exceeds the enumeration cap {cap} for this group")]
    EnumerationCap { n: usize, cap: usize },

    #[error("group order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),
}
