use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("correlation coefficient c{index} = {value} lies outside [-1, 1]")]
    CoefficientOutOfRange { index: usize, value: f64 },

    #[error("unphysical correlation triple ({c1}, {c2}, {c3}): Bell-basis eigenvalue {eigenvalue} is negative")]
    Unphysical {
        c1: f64,
        c2: f64,
        c3: f64,
        eigenvalue: f64,
    },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unitary parameters are not normalized: t^2 + |y|^2 = {0}")]
    UnnormalizedUnitary(f64),

    #[error("measurement direction is not a unit vector: |z|^2 = {0}")]
    UnnormalizedDirection(f64),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("closed-form correlation transformation for GAD requires p = 1/2 (got p = {0})")]
    GadRequiresHalf(f64),
}
