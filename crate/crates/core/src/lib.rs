//! Exact determinants and inverses of banded Toeplitz matrices over prime
//! fields F_p.
//!
//! Over F_p the Gaussian-elimination shift matrix `T` of a band has finite
//! multiplicative order, equal to the period `P(f)` of the band's feedback
//! polynomial. Two consequences drive this crate:
//!
//! * the determinant of the order-`n` matrix is obtained from `T^(e mod P(f))`
//!   and costs the same for `n = 10^3` as for `n = 10^18`;
//! * the inverse is block periodic with block size `P(f)`, so three `P×P`
//!   blocks describe the inverse of every order `n >= 2P(f)`.
//!
//! [`oracle`] holds deliberately naive reference implementations used to
//! check the fast paths, and [`sweep`] runs those checks over families of
//! bands.

pub mod band;
pub mod det;
pub mod factor;
pub mod field;
pub mod inverse;
pub mod matrix;
pub mod oracle;
pub mod par;
pub mod period;
pub mod pgm;
pub mod poly;
pub mod sweep;

pub use band::{BandSpec, DENSE_CAP};
pub use det::{det_fast, det_minimal_period, det_period, DetMethod, DetResult, PreparedBand};
pub use factor::{poly_factorize, poly_factorize_with, Factorization};
pub use field::{fe_inv, fe_pow, FieldElement, PrimeModulus};
pub use inverse::{
    col_extend, corner_elements, inverse_compact, inverse_compact_with, inverse_dense,
    inverse_dense_with, row_extend, DenseInverse, InverseDocument, PeriodicInverse,
};
pub use matrix::DenseMatrix;
pub use oracle::{oracle_det, oracle_inverse, oracle_poly_period, oracle_t_period};
pub use par::Execution;
pub use period::{irreducible_order, poly_period};
pub use poly::{lfsr_sequence, reciprocal, Poly};
pub use sweep::{default_specs, run_sweep, verify_spec, SweepReport};

/// Errors raised by the engine. [`Error::code`] gives a stable
/// machine-readable identifier for each variant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is outside the supported range 2 <= p < 2^31")]
    ModulusOutOfRange(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("operands belong to different fields (F_{left} and F_{right})")]
    MixedModulus { left: u64, right: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("polynomial modulus must have degree >= 1")]
    ZeroModulus,
    #[error("polynomial must have degree >= 1")]
    ZeroOrConstant,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("polynomial has a root at zero (constant coefficient is 0)")]
    RootAtZero,
    #[error("period arithmetic exceeds 63 bits: {0}")]
    CapacityExceeded(String),
    #[error("seed has length {got}, expected {expected}")]
    SeedLengthMismatch { expected: usize, got: usize },
    #[error("invalid band: {0}")]
    InvalidBand(String),
    #[error("order {n} exceeds the dense limit of {cap}")]
    DenseTooLarge { n: u64, cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("order {n} is below the minimum {min} for this method")]
    OrderTooSmall { n: u64, min: u64 },
    #[error("index ({i}, {j}) outside 1..={n}")]
    IndexOutOfRange { i: u64, j: u64, n: u64 },
    #[error("no period found within bound {0}")]
    NotFoundWithinBound(u64),
    #[error("malformed inverse document: {0}")]
    MalformedInverse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ModulusOutOfRange(_) => "MODULUS_OUT_OF_RANGE",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::MixedModulus { .. } => "MIXED_MODULUS",
            Error::ZeroInverse => "ZERO_INVERSE",
            Error::ZeroModulus => "ZERO_MODULUS",
            Error::ZeroOrConstant => "ZERO_OR_CONSTANT",
            Error::NotIrreducible => "NOT_IRREDUCIBLE",
            Error::RootAtZero => "ROOT_AT_ZERO",
            Error::CapacityExceeded(_) => "CAPACITY_EXCEEDED",
            Error::SeedLengthMismatch { .. } => "SEED_LENGTH_MISMATCH",
            Error::InvalidBand(_) => "INVALID_BAND",
            Error::DenseTooLarge { .. } => "DENSE_TOO_LARGE",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::NotSquare { .. } => "NOT_SQUARE",
            Error::Singular => "SINGULAR",
            Error::OrderTooSmall { .. } => "ORDER_TOO_SMALL",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::NotFoundWithinBound(_) => "NOT_FOUND_WITHIN_BOUND",
            Error::MalformedInverse(_) => "MALFORMED_INVERSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
