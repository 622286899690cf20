use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("group closure exceeded bound of {bound} elements")]
    ClosureOverflow { bound: usize },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("module is reducible")]
    Reducible,

    #[error("meataxe failed to decide irreducibility after {attempts} attempts (dim {dim})")]
    MeataxeExhausted { attempts: usize, dim: usize },

    #[error("straightening did not terminate within depth {0}")]
    StraighteningDepth(usize),

    #[error("fixed-vector construction failed: {0}")]
    FixedVector(String),

    #[error("bad prime {0}")]
    BadPrime(u64),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
