use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial must be monic: {0}")]
    NotMonic(String),
    #[error("polynomial is zero or constant")]
    Degenerate,
    #[error("polynomial is not irreducible over Q: {0}")]
    NotIrreducible(String),
    #[error("endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("root isolation failed to converge at {0} bits")]
    PrecisionExhausted(u32),
    #[error("order {0} is not supported (expected 3..=7)")]
    UnsupportedOrder(u32),
    #[error("gamma approximation {0} matches no root unambiguously")]
    GammaNotMatched(String),
    #[error("gamma equals beta; the group is elementary")]
    GammaEqualsBeta,
    #[error("beta is not determined by gamma: {0}")]
    BetaNotInField(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
