use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("interval mismatch: left family ends at {left_end}, right family starts at {right_start}")]
    IntervalMismatch { left_end: String, right_start: String },

    #[error("Newton inversion failed after {iterations} iterations (residual {residual:e})")]
    InversionFailure { iterations: usize, residual: f64 },

    #[error("inverted point {point} left the closed unit disk (|w| = {modulus})")]
    Range { point: String, modulus: f64 },

    #[error("univalence certification failed: {0}")]
    CertificationFailure(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("time {0} is not a lattice point of the family")]
    Lattice(String),

    #[error("additive function is linear on the lattice (images proportional to the basis), hence continuous")]
    NotDiscontinuous,

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
