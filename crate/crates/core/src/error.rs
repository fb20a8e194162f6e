use thiserror::Error;

/// Errors produced by the relation algebra, the extension engine and the
/// enumeration helpers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,

    #[error("universe has {n} elements; at most {max} are supported")]
    UniverseTooLarge { n: usize, max: usize },

    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),

    #[error("invalid label `{0}`")]
    InvalidLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("element index {index} out of range for a universe of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("relations live on universes of different sizes ({left} vs {right})")]
    UniverseMismatch { left: usize, right: usize },

    #[error("relation is not a preorder: {0}")]
    NotPreorder(&'static str),

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(&'static str),

    #[error("relation is not a total preorder: {0}")]
    NotTotalPreorder(&'static str),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("symmetric part of the preorder differs from the partition at pair ({0}, {1})")]
    QuotientMismatch(usize, usize),

    #[error("no extension exists; cycle certificate {certificate:?}")]
    NoExtension { certificate: Vec<usize> },

    #[error("forced pair ({0}, {1}) is already comparable")]
    ForcedPairComparable(usize, usize),

    #[error("universe of {n} elements exceeds the enumeration cap of {cap}")]
    Capacity { n: usize, cap: usize },

    #[error("partition is not a member of the collection {0}")]
    NotMember(&'static str),

    #[error("no extensions; intersection undefined")]
    EmptyIntersection,

    #[error("internal contract violated: {0}")]
    ContractViolation(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
