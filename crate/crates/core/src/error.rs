//! Crate-wide error type.
//!
//! One enum covers all modules; the variant name is the stable, machine-readable
//! identifier that the CLI prints on its diagnostic stream.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The map is not injective over Q (its matrix has rank below the number
    /// of columns), so no exact presentation of the cokernel exists.
    #[error("NotInjective: {0}")]
    NotInjective(String),

    /// The cokernel of the map has torsion; the requested free presentation
    /// with an exact rational section does not exist.
    #[error("TorsionCokernel: {0}")]
    TorsionCokernel(String),

    /// A primitive generator was requested for the zero vector.
    #[error("ZeroVector: {0}")]
    ZeroVector(String),

    /// Two polyhedra that must share a tail cone do not.
    #[error("TailMismatch: {0}")]
    TailMismatch(String),

    /// Vectors or matrices of incompatible rank were combined.
    #[error("RankMismatch: {0}")]
    RankMismatch(String),

    /// A prime-divisor label is not declared on the relevant model.
    #[error("UnknownLabel: {0}")]
    UnknownLabel(String),

    /// A divisor that must have integer coefficients does not.
    #[error("NonIntegral: {0}")]
    NonIntegral(String),

    /// Evaluation point lies outside the dual of the tail cone, so some
    /// coefficient minimum is unbounded below.
    #[error("OutsideWeightCone: {0}")]
    OutsideWeightCone(String),

    /// A lattice map does not carry the source tail cone into the target tail
    /// cone.
    #[error("TailViolation: {0}")]
    TailViolation(String),

    /// Map triples that do not chain (models or lattice ranks disagree).
    #[error("ChainMismatch: {0}")]
    ChainMismatch(String),

    /// A downgrade ray carries a nontrivial coefficient but no divisor label.
    #[error("MissingLabel: {0}")]
    MissingLabel(String),

    /// Two downgrade rays were assigned the same divisor label.
    #[error("DuplicateLabel: {0}")]
    DuplicateLabel(String),

    /// Interval bounds in the wrong order.
    #[error("EmptyInterval: {0}")]
    EmptyInterval(String),

    /// A quotient was requested for data that is not invariant under the
    /// group (polyhedra differ within one fiber).
    #[error("NotInvariant: {0}")]
    NotInvariant(String),

    /// Primes in one fiber of a cover carry different ramification indices.
    #[error("MixedRamification: {0}")]
    MixedRamification(String),

    /// Fixture parameters violate the arithmetic hypotheses (gcd or ordering
    /// conditions).
    #[error("InvalidParameters: {0}")]
    InvalidParameters(String),

    /// No Bezout pair with the required divisibility exists in the search
    /// window.
    #[error("NoBezoutWithDivisibility: {0}")]
    NoBezoutWithDivisibility(String),

    /// A formal function name is not registered on the model (or has no
    /// registered pull-back along a cover).
    #[error("UnknownFunction: {0}")]
    UnknownFunction(String),

    /// Malformed textual input (notation or session syntax).
    #[error("ParseError: {0}")]
    ParseError(String),
}

impl Error {
    /// Stable variant name, e.g. `"TorsionCokernel"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotInjective(_) => "NotInjective",
            Error::TorsionCokernel(_) => "TorsionCokernel",
            Error::ZeroVector(_) => "ZeroVector",
            Error::TailMismatch(_) => "TailMismatch",
            Error::RankMismatch(_) => "RankMismatch",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::NonIntegral(_) => "NonIntegral",
            Error::OutsideWeightCone(_) => "OutsideWeightCone",
            Error::TailViolation(_) => "TailViolation",
            Error::ChainMismatch(_) => "ChainMismatch",
            Error::MissingLabel(_) => "MissingLabel",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::EmptyInterval(_) => "EmptyInterval",
            Error::NotInvariant(_) => "NotInvariant",
            Error::MixedRamification(_) => "MixedRamification",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::NoBezoutWithDivisibility(_) => "NoBezoutWithDivisibility",
            Error::UnknownFunction(_) => "UnknownFunction",
            Error::ParseError(_) => "ParseError",
        }
    }
}
