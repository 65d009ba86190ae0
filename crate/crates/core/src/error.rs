use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("velocity magnitude {0} is not below the speed of light")]
    Superluminal(f64),
    #[error("four-momentum {p:?} is not on the mass shell m = {m} (residual {residual:e})")]
    OffShell { p: [f64; 4], m: f64, residual: f64 },
    #[error("matrix does not preserve the Minkowski metric (residual {0:e})")]
    NotLorentz(f64),
    #[error("Lorentz matrix is not proper orthochronous (det = {det}, L00 = {l00})")]
    NotProperOrthochronous { det: f64, l00: f64 },
    #[error("generator parameters are not antisymmetric (residual {0:e})")]
    NotAntisymmetric(f64),
    #[error("matrix is not a proper rotation (residual {0:e})")]
    NotRotation(f64),
    #[error("Bloch vector length {0} exceeds 1")]
    BlochVectorTooLong(f64),
    #[error("profile cannot be differentiated analytically; use the finite-difference variant")]
    NotDifferentiable,
    #[error("incompatible discretizations: {0}")]
    IncompatibleDiscretization(String),
    #[error("insufficient grid coverage: {0}")]
    InsufficientGrid(String),
    #[error("non-finite state at step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
