//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by field construction, symbol evaluation, and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 unsupported")]
    CharacteristicTwo,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,

    #[error("extension degree {0} too large for this representation")]
    ExtensionTooLarge(usize),

    #[error("field size p^k overflows u64")]
    FieldTooLarge,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("symbol undefined for zero")]
    ZeroInput,

    #[error("symbol undefined")]
    SymbolUndefined,

    #[error("not integral at place")]
    NotIntegral,

    #[error("place polynomial must be monic")]
    PlaceNotMonic,

    #[error("place polynomial is reducible; factor {factor} divides it")]
    ReduciblePlace { factor: String },

    #[error("place polynomial must be nonconstant")]
    PlaceConstant,

    #[error("witness target must be a finite place")]
    WitnessTargetInfinite,

    #[error("witness search exceeded cap (degree {cap})")]
    WitnessSearchExceeded { cap: i64 },

    #[error("witness postcondition failed for place {place}")]
    WitnessPostcondition { place: String },

    #[error("formula evaluation does not support {0}")]
    EvalUnsupported(&'static str),

    #[error("no semantics registered for opaque atom {0}")]
    UnknownAtom(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
