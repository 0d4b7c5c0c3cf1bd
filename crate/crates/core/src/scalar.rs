//! Floating-point scalar abstraction.
//!
//! Everything in this crate is generic over a [`Real`] scalar so the same
//! state algebra and flows run in `f32` or `f64`. The crate root exposes
//! `f64`/`f32` aliases for the main domain types.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar type the state algebra and flows are generic over.
///
/// The associated tolerances scale with the precision of the concrete type;
/// the documented guarantees (1e-12 algebraic identities, 1e-9 ball slack)
/// refer to the `f64` instantiation.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Absolute tolerance for algebraic invariants: hermiticity, unit trace,
    /// projector idempotence, positive-semidefiniteness.
    const STATE_TOL: Self;

    /// Slack allowed on Bloch-ball membership and purity checks.
    const BALL_TOL: Self;

    /// Converts an `f64` constant into this scalar type.
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    fn half() -> Self {
        Self::real(0.5)
    }

    fn two() -> Self {
        Self::real(2.0)
    }

    /// Widens to `f64` for reporting (error messages, serialization of
    /// diagnostics). Lossless for `f32` and `f64`.
    fn widen(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const STATE_TOL: Self = 1e-12;
    const BALL_TOL: Self = 1e-9;
}

impl Real for f32 {
    const STATE_TOL: Self = 1e-5;
    const BALL_TOL: Self = 1e-4;
}
