//! Error type shared across the crate.

use thiserror::Error;

/// Validation and computation failures. Numeric payloads are widened to
/// `f64` for reporting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bloch vector norm {norm} lies outside the unit ball")]
    OutsideBlochBall { norm: f64 },
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix trace {trace} differs from 1")]
    NonUnitTrace { trace: f64 },
    #[error("matrix has negative eigenvalue {eigenvalue:e}")]
    NotPositiveSemidefinite { eigenvalue: f64 },
    #[error("projector is not idempotent (defect {defect:e})")]
    NotIdempotent { defect: f64 },
    #[error("ensemble weight {weight} lies outside [0, 1]")]
    WeightOutOfRange { weight: f64 },
    #[error("ensemble weights sum to {sum}, expected 1")]
    WeightsNotNormalized { sum: f64 },
    #[error("ensemble has no members")]
    EmptyEnsemble,
    #[error("direction has norm {norm}, expected a unit vector")]
    NotUnitDirection { norm: f64 },
    #[error("flow rate {rate} must be positive")]
    NonPositiveRate { rate: f64 },
    #[error("measurement branch has vanishing probability {probability:e}")]
    ZeroProbabilityBranch { probability: f64 },
    #[error("reweighting denominator {denominator:e} is degenerate")]
    DegenerateDenominator { denominator: f64 },
    #[error("mixing weight {lambda} lies outside [0, 1]")]
    LambdaOutOfRange { lambda: f64 },
    #[error("integration produced a non-finite state at step {step}")]
    NonFiniteIntegration { step: usize },
    #[error("integrator needs at least one step")]
    ZeroSteps,
    #[error("certification needs at least one sample")]
    NoSamples,
    #[error("time grid must not be empty")]
    EmptyTimeGrid,
    #[error("angle grid must not be empty")]
    EmptyAngleGrid,
    #[error("tolerance {tol} must be positive")]
    NonPositiveTolerance { tol: f64 },
    #[error("{what} must be finite")]
    NonFiniteInput { what: &'static str },
    #[error("unknown flow kind `{0}`, expected `boost` or `weinberg`")]
    UnknownFlowKind(String),
    #[error("unknown weighting `{0}`, expected `paper-lambda` or `frequency`")]
    UnknownWeighting(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
