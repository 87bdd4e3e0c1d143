use thiserror::Error;

/// Errors raised by ring, polynomial and automorphism operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings ({0} vs {1})")]
    MixedRings(String, String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("modulus {0} is not prime")]
    NotPrime(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("{value} does not lie in {ring}")]
    NotInRing { value: String, ring: String },
    #[error("no canonical map from {0} to {1}")]
    NoCanonicalMap(String, String),
    #[error("cannot reduce {value} modulo {p}: denominator divisible by {p}")]
    DenominatorDivisibleByP { value: String, p: String },
    #[error("leading form of the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("unsupported ring {ring}: {reason}")]
    UnsupportedRing { ring: String, reason: String },
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("determinant is {0}, expected 1")]
    DeterminantNotOne(String),
    #[error("matrix has no unit entry")]
    NoUnitEntry,
    #[error("Jacobian determinant is {0}, expected 1")]
    NotSpecial(String),
    #[error("pair is not closed: divergence {0} is nonzero")]
    NotClosed(String),
    #[error("characteristic obstruction: {0}")]
    CharacteristicObstruction(String),
    #[error("divergence of (u, v) is {0}, expected 0")]
    DivergenceNonZero(String),
    #[error("coefficient {0} does not square to zero")]
    NotSquareZero(String),
    #[error("no sum-of-powers decomposition within the search bounds")]
    NotFound,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedRings(..) => "MixedRings",
            Error::NotAUnit(_) => "NotAUnit",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidRing(_) => "InvalidRing",
            Error::NotInRing { .. } => "NotInRing",
            Error::NoCanonicalMap(..) => "NoCanonicalMap",
            Error::DenominatorDivisibleByP { .. } => "DenominatorDivisibleByP",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InvalidFactor(_) => "InvalidFactor",
            Error::NotInvertible(_) => "NotInvertible",
            Error::UnsupportedRing { .. } => "UnsupportedRing",
            Error::NotAnAutomorphism(_) => "NotAnAutomorphism",
            Error::DeterminantNotOne(_) => "DeterminantNotOne",
            Error::NoUnitEntry => "NoUnitEntry",
            Error::NotSpecial(_) => "NotSpecial",
            Error::NotClosed(_) => "NotClosed",
            Error::CharacteristicObstruction(_) => "CharacteristicObstruction",
            Error::DivergenceNonZero(_) => "DivergenceNonZero",
            Error::NotSquareZero(_) => "NotSquareZero",
            Error::NotFound => "NotFound",
            Error::Internal(_) => "Internal",
        }
    }

    pub fn unsupported(ring: &crate::Ring, reason: impl Into<String>) -> Self {
        Error::UnsupportedRing {
            ring: ring.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
