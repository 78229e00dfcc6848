use thiserror::Error;

/// Errors raised by the computational modules.
///
/// Every variant maps to a stable machine-readable reason string through
/// [`Error::reason`], which the command-line front end reports verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {dim} is outside the supported range {min}..={max}")]
    DimensionOutOfRange { dim: usize, min: usize, max: usize },

    #[error("operation requires an even dimension, got {0}")]
    OddDimension(usize),

    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("mode box radius must be at least 1, got {0}")]
    CutoffTooSmall(i64),

    #[error("truncation with {modes} modes exceeds the limit of {limit}")]
    TruncationTooLarge { modes: u128, limit: u128 },

    #[error("invalid twist parameter: {0}")]
    InvalidTwist(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("path leaves the truncation-safe region: sup norm {sup_norm} needs cutoff at least {needed}, got {cutoff}")]
    PathOutsideTruncation { sup_norm: String, needed: i64, cutoff: i64 },

    #[error("matrix at sample {index} is not Hermitian (deviation {deviation:e})")]
    NotHermitian { index: usize, deviation: f64 },

    #[error("matrix at sample {index} is not unitary (deviation {deviation:e})")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("endpoint at t = {t} has an eigenvalue within {tol:e} of zero")]
    EndpointDegenerate { t: f64, tol: f64 },

    #[error("branch matching did not converge on [{t0}, {t1}] after {depth} refinements")]
    NonConvergence { t0: f64, t1: f64, depth: u32 },

    #[error("phase step {step} at sample {index} exceeds the aliasing bound {bound}")]
    Aliasing { index: usize, step: f64, bound: f64 },

    #[error("determinant modulus {modulus:e} at sample {index} is below {threshold:e}")]
    NearZero { index: usize, modulus: f64, threshold: f64 },

    #[error("surjectivity certificate failed at c = {point:?}: smallest singular value {sigma:e} below {threshold:e}")]
    CertificateFailed { point: Vec<f64>, sigma: f64, threshold: f64 },

    #[error("plaquette overlap {overlap:e} at ({i}, {j}) is below {threshold:e}; grid too coarse")]
    GridTooCoarse { i: usize, j: usize, overlap: f64, threshold: f64 },

    #[error("invalid frame grid: {0}")]
    InvalidFrames(String),

    #[error("generator sets differ")]
    AlgebraMismatch,

    #[error("element is not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid cup form: {0}")]
    InvalidCupForm(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn reason(&self) -> &'static str {
        match self {
            Error::DimensionOutOfRange { .. } => "dimension_out_of_range",
            Error::OddDimension(_) => "odd_dimension",
            Error::WrongDimension { .. } => "wrong_dimension",
            Error::CutoffTooSmall(_) => "cutoff_too_small",
            Error::TruncationTooLarge { .. } => "truncation_too_large",
            Error::InvalidTwist(_) => "invalid_twist",
            Error::InvalidPath(_) => "invalid_path",
            Error::PathOutsideTruncation { .. } => "path_outside_truncation",
            Error::NotHermitian { .. } => "not_hermitian",
            Error::NotUnitary { .. } => "not_unitary",
            Error::InvalidFamily(_) => "invalid_family",
            Error::EndpointDegenerate { .. } => "endpoint_degenerate",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Aliasing { .. } => "aliasing",
            Error::NearZero { .. } => "near_zero",
            Error::CertificateFailed { .. } => "certificate_failed",
            Error::GridTooCoarse { .. } => "grid_too_coarse",
            Error::InvalidFrames(_) => "invalid_frames",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::NotNilpotent(_) => "not_nilpotent",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidCupForm(_) => "invalid_cup_form",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
