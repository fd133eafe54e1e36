use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-radial weight: build a radial majorant with dyadic_radial_majorant first")]
    NonRadial,

    #[error("non-finite weight value {value} at {point:?}")]
    NonFiniteWeight { value: f64, point: Vec<f64> },

    #[error("|zeta| = {modulus} lies outside the certified radius {radius}")]
    OutOfCertifiedRange { modulus: f64, radius: f64 },

    #[error("truncation at M = {given} is not certified at radius {radius}; need M >= {required}")]
    TruncationTooShort {
        given: usize,
        required: usize,
        radius: f64,
    },

    #[error("family not constructively supported; admissibility alone does not yield a construction here ({0})")]
    UnsupportedFamily(String),

    #[error("construction infeasible: {0}")]
    Infeasible(String),

    #[error("evaluation failed at {point:?}: {reason}")]
    Evaluation { point: Vec<f64>, reason: String },

    #[error("asymmetric grid: {0}")]
    AsymmetricGrid(String),

    #[error("all samples are zero")]
    ZeroSamples,

    #[error("grid file: {0}")]
    GridFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
