use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid type {given}: {hint}")]
    InvalidType { given: String, hint: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sublattice basis vector {index} is not contained in the outer lattice")]
    NotContained { index: usize },
    #[error("quotient is infinite (relations do not have full rank)")]
    InfiniteQuotient,
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("incompatible lattice pairs: {0}")]
    IncompatiblePairs(String),
    #[error("quotients do not come from mutually dual lattice pairs")]
    NotDual,
    #[error("automorphism is not ordinary: {0}")]
    NotOrdinary(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("omega {0:?} is not an element of the fundamental group")]
    BadOmega(Vec<u64>),
    #[error("classification inconsistency: {0}")]
    Classification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
