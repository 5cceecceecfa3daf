use thiserror::Error;

/// Errors produced by the analyzer.
///
/// Indices carried in messages are 1-based, matching the way servers and
/// objects are numbered in reports and `.gm` files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("span too large: 2^{log2_size} vectors exceeds the enumeration cap of {cap}")]
    SpanTooLarge { log2_size: usize, cap: u64 },

    #[error("enumeration too large: {what} needs {needed} items, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u64,
    },

    #[error("basis vectors are linearly dependent (rank {rank} < {count})")]
    DependentBasis { rank: usize, count: usize },

    #[error("generator not full rank: row {row} is a combination of the rows above it")]
    RankDeficient { row: usize },

    #[error("dual is trivial: the code has k = n = {n}")]
    TrivialDual { n: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("object {object} has no systematic column")]
    NotSystematic { object: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for refusals caused by an enumeration or search cap.
    pub fn is_cap_refusal(&self) -> bool {
        matches!(self, Error::SpanTooLarge { .. } | Error::CapExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
