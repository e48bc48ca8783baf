use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two scalars (or points) were built over different irrational bases.
    #[error("scalars belong to different irrational bases")]
    BasisMismatch,

    /// A product of two scalars that are both irrational would leave the
    /// rational span of the basis.
    #[error("product of two irrational scalars leaves the formal span")]
    UnsupportedProduct,

    /// Interval refinement ran out of budget before the sign of a (nonzero)
    /// scalar could be separated from zero. Never a wrong answer: the caller
    /// may retry with a larger budget.
    #[error("sign undecided after {rounds} refinement rounds")]
    UndecidedSign { rounds: u32 },

    /// Textual input could not be parsed; `position` is a byte offset into
    /// the offending string.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// Operands of mismatched rank were combined.
    #[error("rank mismatch: expected n = {expected}, got n = {actual}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid subalgebra: {0}")]
    InvalidSubalgebra(String),

    #[error("invalid search spec: {0}")]
    InvalidSearchSpec(String),

    /// An operation was called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shift the byte position of a parse error, for errors produced while
    /// parsing a slice of a larger input.
    pub(crate) fn offset_parse(self, offset: usize) -> Self {
        match self {
            Error::Parse { position, message } => Error::Parse {
                position: position + offset,
                message,
            },
            other => other,
        }
    }
}
