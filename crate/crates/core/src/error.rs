use thiserror::Error;

/// Error type shared by all engines.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation (zero where a
    /// nonzero rational is required, non-prime where a prime is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Operation invoked in a state its contract excludes (e.g. asking for the
    /// obstruction sum of an instance with a totally non-split place).
    #[error("usage error: {0}")]
    Usage(String),

    /// A configured size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A point could not be evaluated (vanishing factor, point off the variety).
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A structural invariant failed while constructing a value.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// Factorization gave up; the factors found so far are reported.
    #[error("factorization timed out on {remaining} (partial factorization {partial:?})")]
    FactorTimeout { partial: Vec<(u64, u32)>, remaining: u64 },

    /// Malformed textual input (rationals, lattice files).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
