use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(
        "root finder did not converge (residual {residual:.3e} after {iterations} iterations)"
    )]
    RootsNotConverged {
        best: Vec<Complex64>,
        residual: f64,
        iterations: usize,
    },

    #[error("interpolation nodes {0} and {1} coincide")]
    DuplicateNodes(usize, usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("parameter {name} = {value} is not usable here: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: Complex64,
        reason: &'static str,
    },

    #[error("accessory parameter q is required but absent")]
    MissingAccessory,

    #[error("accessory polynomial has degree {actual}, expected {expected}")]
    DegreeMismatch { expected: usize, actual: usize },

    #[error("denominator parameter b = {0} is zero or a negative integer")]
    DenominatorHazard(Complex64),

    #[error("series did not converge within {terms} terms (last partial sum {partial})")]
    SeriesCap { terms: usize, partial: Complex64 },

    #[error("Frobenius recurrence is resonant: R_{0} vanishes")]
    Resonant(usize),

    #[error("point z = {0} lies outside the domain of this operation")]
    Domain(Complex64),

    #[error("series tail estimate {estimate:.3e} exceeds tolerance {tol:.3e}")]
    TailTooLarge { estimate: f64, tol: f64 },

    #[error(
        "exceptional case delta = 1: both exponents at z = 1 vanish and no integer gamma != 1 \
         is available, so no single generalized hypergeometric solution is known"
    )]
    Exceptional,

    #[error("unsupported parameters: neither delta nor gamma is a usable integer")]
    Unsupported,

    #[error("q = {0} is not in the accessory spectrum")]
    NotInSpectrum(Complex64),

    #[error("invalid configuration: {0}")]
    Config(String),
}
