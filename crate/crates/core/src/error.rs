use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    /// A document failed to parse. `line` is 1-based; 0 means end of input.
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("invalid marginal: {0}")]
    InvalidMarginal(String),

    /// Column `column` (0-based) of the conditional matrix sums to more than one.
    #[error("infeasible: column {column} sums to {sum} > 1")]
    Infeasible { column: usize, sum: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("observation ({y}, {z}) has zero probability under the scheme")]
    OffSupport { y: String, z: String },

    #[error("pair ({x}, {y}) has zero probability under the prior")]
    OffSupportPair { x: String, y: String },

    #[error("scheme fails informativeness at ({y}, {z})")]
    NotInformative { y: String, z: String },

    #[error("scheme does not verify against the instance: {0}")]
    Unverified(String),

    /// A size cap was exceeded; this is a refusal, not a failure of the input.
    #[error("capability refused: {0}")]
    CapExceeded(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
