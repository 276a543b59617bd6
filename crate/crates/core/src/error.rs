use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (non-coprime order, non-core, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Rejected instance parameters.
    #[error("configuration error: {0}")]
    Config(String),
    /// Quantities would leave the 64-bit desk-scale range.
    #[error("overflow guard: {0}")]
    Overflow(String),
    /// The requested quantity is not determined in this mode (e.g. ell = 2 at SL level).
    #[error("unsupported mode: {0}")]
    Unsupported(String),
    /// A counting identity that must hold exactly did not.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
