use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {len} entries, expected {n}x{n}")]
    Shape { n: usize, len: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("QR iteration did not converge after {iterations} sweeps ({deflated} of {n} eigenvalues found)")]
    NoConvergence {
        iterations: usize,
        deflated: usize,
        n: usize,
    },

    #[error("matrix is not Hermitian (relative deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Schatten exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("closed-form root oracle supports n <= 4, got n = {0}")]
    OracleDimension(usize),

    #[error("singular matrix encountered at pivot {0}")]
    Singular(usize),

    #[error("Joukowski map is undefined at z = 0")]
    JoukowskiPole,

    #[error("point {0} lies on or within 1e-12 of the segment [-2, 2]")]
    OnSegment(Complex64),

    #[error("point {0} is too close to [-2, 2] (distance {1:e})")]
    NearSegment(Complex64, f64),

    #[error("truncation size {n} too small, need at least {min}")]
    TruncationTooSmall { n: usize, min: usize },

    #[error("sample hit a zero of the integrand at {0}")]
    SampledZero(Complex64),

    #[error("empty grid")]
    EmptyGrid,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
