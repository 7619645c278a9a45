use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime below 2^61")]
    InvalidField(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid product table: {0}")]
    InvalidProductTable(String),
    #[error("complex is not minimal: entry ({row}, {col}) has a nonzero constant term")]
    NotMinimal { row: usize, col: usize },
    #[error("the model is zero; the filtration is undefined")]
    ZeroModel,
    #[error("no cycle of degree 0 with augmentation 1 exists")]
    NoAugmentedCycle,
    #[error("lifting obstruction in degree {degree} while lifting {generator}: {detail}")]
    Obstruction { degree: i64, generator: String, detail: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("chain-map law fails at column {column} ({generator})")]
    NotChainMap { column: usize, generator: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
