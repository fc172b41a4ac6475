use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: String },

    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },

    /// The order (or initial form) of the zero polynomial is undefined.
    #[error("undefined order: zero polynomial")]
    ZeroPolynomial,

    #[error("non-reduced input: {0}")]
    NonReduced(String),

    #[error("germ does not vanish at the origin")]
    NotVanishing,

    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableCount { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("empty branch list")]
    EmptyBranches,

    #[error("Newton-Puiseux recursion exceeded depth {0}")]
    DepthExceeded(usize),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("increase sampling density: {0}")]
    UnstableSampling(String),

    #[error("truncation too coarse for requested radii: {0}")]
    TruncationTooCoarse(String),

    #[error("germs are not blow-spherical equivalent; no witness exists")]
    NotEquivalent,

    #[error("family check failed: {0}")]
    Family(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
