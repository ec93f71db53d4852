//! Error type shared by all modules of the crate.

use core::fmt;

/// Errors reported by constructors and operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix/tensor dimensions do not line up for the requested operation.
    ShapeMismatch(&'static str),
    /// An entry is NaN or infinite.
    NonFinite,
    /// A scalar argument is outside its admissible range.
    InvalidParameter(&'static str),
    /// No explicit construction is available for this dimension.
    UnsupportedDimension(usize),
    /// An operator that must be positive semidefinite is not.
    NotPositiveSemidefinite,
    /// An operator that must be Hermitian is not.
    NotHermitian,
    /// A state failed its defining invariants (trace, positivity, normalization).
    InvalidState(&'static str),
    /// A tester whose S₁→ℓ₂ norm must be 1 is not normalized.
    UnnormalizedTester,
    /// An index permutation has the wrong length or is not a bijection.
    InvalidPermutation,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch(ctx) => write!(f, "shape mismatch: {ctx}"),
            Error::NonFinite => write!(f, "non-finite entry (NaN or infinity)"),
            Error::InvalidParameter(ctx) => write!(f, "invalid parameter: {ctx}"),
            Error::UnsupportedDimension(d) => {
                write!(f, "no explicit construction for dimension {d}")
            }
            Error::NotPositiveSemidefinite => write!(f, "operator is not positive semidefinite"),
            Error::NotHermitian => write!(f, "operator is not Hermitian"),
            Error::InvalidState(ctx) => write!(f, "invalid state: {ctx}"),
            Error::UnnormalizedTester => write!(f, "tester is not normalized to norm 1"),
            Error::InvalidPermutation => write!(f, "invalid index permutation"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
