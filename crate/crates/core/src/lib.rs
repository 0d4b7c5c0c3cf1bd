//! Nonlinear qubit evolutions on the Bloch ball that preserve ensemble
//! equivalence — and one that does not.
//!
//! The crate implements two one-parameter flows of the Bloch vector: a
//! quasi-linear flow generated by reading the relativistic velocity-addition
//! rule as a time evolution, and a Weinberg-type comparison flow. Around
//! them sit the exact small-dimension state algebra ([`qstate`]), the convex
//! quasi-linearity certifier ([`quasilin`]), and an end-to-end simulation of
//! the entangled-pair signaling experiment ([`gisin`]): the first flow maps
//! equivalent ensembles to equivalent ensembles and so cannot transmit a
//! distant observer's measurement choice, the second breaks equivalence and
//! signals.
//!
//! All numerics are generic over the [`scalar::Real`] floating-point type;
//! the crate root provides `f64` and `f32` aliases for the main domain
//! types. Everything is pure and freely parallelizable; the only random
//! element is the seeded, counter-based sampler in [`sample`].

pub mod error;
pub mod flows;
pub mod gisin;
pub mod linalg;
pub mod qstate;
pub mod quasilin;
pub mod sample;
pub mod scalar;
pub mod vec3;

pub use error::{Error, Result};
pub use flows::{
    boost_velocity, quasilinear_flow, quasilinear_rhs, rk4_integrate, semigroup_check,
    weinberg_flow, weinberg_rhs, FlowKind, FlowParams,
};
pub use gisin::{
    default_phi_grid, default_time_grid, evolved_rho_b, prepare_b_ensemble, recombination_check,
    recombination_lambda, signaling_metric, sweep, ExperimentConfig, SignalRow, Weighting,
};
pub use qstate::{
    polarization_vector, projector_a, BlochVector, Ensemble, Projector2Q, ProjectorQ,
    QubitDensity, TwoQubitDensity,
};
pub use quasilin::{
    certify_quasilinearity, evolve_ensemble, fit_lambda, lambda_closed_form,
    measurement_lambda_bar, sample_ensembles, CertReport, EnsembleDraw, LambdaFit, WorstCase,
};
pub use scalar::Real;
pub use vec3::Vec3;

/// Double-precision aliases; tolerances are 1e-12 for algebraic identities
/// and 1e-9 for ball membership.
pub type Vec3f64 = Vec3<f64>;
pub type BlochVector64 = BlochVector<f64>;
pub type QubitDensity64 = QubitDensity<f64>;
pub type TwoQubitDensity64 = TwoQubitDensity<f64>;
pub type ProjectorQ64 = ProjectorQ<f64>;
pub type Projector2Q64 = Projector2Q<f64>;
pub type Ensemble64 = Ensemble<f64>;
pub type FlowParams64 = FlowParams<f64>;
pub type ExperimentConfig64 = ExperimentConfig<f64>;
pub type CertReport64 = CertReport<f64>;
pub type EnsembleDraw64 = EnsembleDraw<f64>;
pub type LambdaFit64 = LambdaFit<f64>;
pub type SignalRow64 = SignalRow<f64>;

/// Single-precision aliases, with correspondingly coarser tolerances.
pub type Vec3f32 = Vec3<f32>;
pub type BlochVector32 = BlochVector<f32>;
pub type QubitDensity32 = QubitDensity<f32>;
pub type TwoQubitDensity32 = TwoQubitDensity<f32>;
pub type ProjectorQ32 = ProjectorQ<f32>;
pub type Projector2Q32 = Projector2Q<f32>;
pub type Ensemble32 = Ensemble<f32>;
pub type FlowParams32 = FlowParams<f32>;
pub type ExperimentConfig32 = ExperimentConfig<f32>;
pub type CertReport32 = CertReport<f32>;
pub type EnsembleDraw32 = EnsembleDraw<f32>;
pub type LambdaFit32 = LambdaFit<f32>;
pub type SignalRow32 = SignalRow<f32>;
