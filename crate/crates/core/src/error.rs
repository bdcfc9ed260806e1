use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A numeric argument fell outside its admissible range.
    #[error("{what} = {value} is out of range (expected {expected})")]
    Range {
        what: &'static str,
        value: u64,
        expected: String,
    },

    /// An argument is in range but violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    /// A shipped fixture failed its load-time self-validation.
    #[error("fixture `{name}` is corrupted: {reason}")]
    CorruptedFixture { name: String, reason: String },

    /// An unconditional mathematical statement was observed to fail. This can
    /// only happen if a computation in this crate is wrong.
    #[error("theorem contradiction ({theorem}): {witness}")]
    TheoremContradiction { theorem: String, witness: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn range(what: &'static str, value: impl Into<u64>, expected: impl Into<String>) -> Self {
        Error::Range {
            what,
            value: value.into(),
            expected: expected.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
