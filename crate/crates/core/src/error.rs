use std::io;

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("source must contain at least one symbol")]
    EmptySource,
    #[error("probability of symbol {index} is not strictly positive ({value})")]
    NonPositiveProbability { index: usize, value: String },
    #[error("probabilities sum to {total}, not 1")]
    BadTotal { total: String },
    #[error("{count} labels given for {n} symbols")]
    LabelCount { count: usize, n: usize },
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("length profile violates the Kraft inequality (sum {sum})")]
    KraftViolation { sum: String },
    #[error("codeword length 0 is only allowed for a single-symbol source")]
    ZeroLength,
    #[error("size mismatch: expected {expected} symbols, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("symbol index {index} out of range for alphabet of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size {n} exceeds the enumeration guard {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("profile is not expected-length optimal for this source")]
    NotOptimalProfile,
    #[error("profile is not the canonical Huffman profile of this source")]
    NotHuffmanProfile,
    #[error("length profile is not complete")]
    NotComplete,
    #[error("subset must be nonempty and proper")]
    BadSubset,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("Kraft order violated: K(U) = {ku} is not below K(V) = {kv}")]
    KraftOrderViolated { ku: String, kv: String },
    #[error("invalid epsilon: {0}")]
    BadEpsilon(String),
    #[error("operation needs a source of size {expected}, got {found}")]
    WrongSize { expected: String, found: usize },
    #[error("probabilities must be sorted in non-increasing order")]
    NotSorted,
    #[error("method {method} cannot be used here: {reason}")]
    UnsupportedMethod { method: String, reason: String },
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
