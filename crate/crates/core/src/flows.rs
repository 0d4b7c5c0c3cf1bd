//! One-parameter nonlinear flows on the Bloch ball.
//!
//! Two dynamical laws are implemented, each in closed form and as a
//! right-hand side for the fixed-step RK4 oracle:
//!
//! - the quasi-linear boost flow, obtained by reading the relativistic
//!   velocity-addition rule as a time evolution with rapidity `g t` along a
//!   fixed unit direction `e`; it solves `dn/dt = g (e - n (e.n))`, maps the
//!   closed unit ball into itself, preserves purity, and drives every state
//!   except the antipode `-e` towards `e`;
//! - the Weinberg comparison flow `dn/dt = g (e x n)(e.n)`, a rotation about
//!   `e` at the state-dependent angle `theta(t) = g t (e.n)`; it conserves
//!   both `|n|` and `e.n`.
//!
//! Hyperbolic functions enter only through `tanh` and `sech`, evaluated in
//! overflow-free form, so the closed-form boost flow stays finite for any
//! `g t` magnitude.
//!
//! Times are in units of `1/g`; the public flow API documents `t >= 0` as
//! the physical regime, while the closed forms remain valid for negative
//! times (the boost family is a full one-parameter group).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::BlochVector;
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Direction and rate of a one-parameter flow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowParams<T> {
    e: Vec3<T>,
    g: T,
}

impl<T: Real> FlowParams<T> {
    /// `e` must be a unit vector (to `STATE_TOL`) and `g > 0`; reversing the
    /// direction is expressed via `e -> -e`, not a negative rate.
    pub fn new(e: Vec3<T>, g: T) -> Result<Self> {
        let norm = e.norm();
        if !e.is_finite() || (norm - T::one()).abs() > T::STATE_TOL {
            return Err(Error::NotUnitDirection { norm: norm.widen() });
        }
        if !g.is_finite() || g <= T::zero() {
            return Err(Error::NonPositiveRate { rate: g.widen() });
        }
        Ok(Self { e, g })
    }

    pub fn direction(&self) -> Vec3<T> {
        self.e
    }

    pub fn rate(&self) -> T {
        self.g
    }
}

/// Selects one of the two dynamical laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlowKind {
    #[serde(rename = "boost")]
    QuasiLinearBoost,
    #[serde(rename = "weinberg")]
    Weinberg,
}

impl FlowKind {
    pub fn name(self) -> &'static str {
        match self {
            FlowKind::QuasiLinearBoost => "boost",
            FlowKind::Weinberg => "weinberg",
        }
    }

    /// Closed-form evolution of `xi` for time `t`.
    pub fn evolve<T: Real>(self, xi: BlochVector<T>, p: &FlowParams<T>, t: T) -> BlochVector<T> {
        match self {
            FlowKind::QuasiLinearBoost => quasilinear_flow(xi, p, t),
            FlowKind::Weinberg => weinberg_flow(xi, p, t),
        }
    }

    fn rhs_raw<T: Real>(self, n: Vec3<T>, p: &FlowParams<T>) -> Vec3<T> {
        match self {
            FlowKind::QuasiLinearBoost => (p.e - n * p.e.dot(n)) * p.g,
            FlowKind::Weinberg => p.e.cross(n) * (p.e.dot(n) * p.g),
        }
    }
}

impl fmt::Display for FlowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FlowKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boost" => Ok(FlowKind::QuasiLinearBoost),
            "weinberg" => Ok(FlowKind::Weinberg),
            other => Err(Error::UnknownFlowKind(other.to_owned())),
        }
    }
}

/// `sech` evaluated as `2 e^{-|x|} / (1 + e^{-2|x|})`: exact at 0, monotone
/// to 0, and free of overflow for any argument.
fn sech<T: Real>(x: T) -> T {
    let e = (-x.abs()).exp();
    T::two() * e / (T::one() + e * e)
}

/// Relativistic composition of a velocity `v` (`|v| <= 1`) with a boost of
/// rapidity `eta` along the unit direction `e`:
///
/// `v' = (v + e [sinh eta + (cosh eta - 1)(e.v)]) / (cosh eta + (e.v) sinh eta)`
///
/// evaluated in the equivalent `tanh`/`sech` form so large rapidities do not
/// overflow. The denominator is positive for any finite `eta`.
pub fn boost_velocity<T: Real>(v: Vec3<T>, e: Vec3<T>, eta: T) -> Vec3<T> {
    let u = eta.tanh();
    let s = sech(eta);
    let ev = e.dot(v);
    let denom = T::one() + ev * u;
    (v * s + e * (u + (T::one() - s) * ev)) * denom.recip()
}

/// Closed form of the quasi-linear boost flow: a boost of rapidity `g t`
/// applied to the Bloch vector. Pure states stay pure and the ball maps
/// into itself, so the output needs no re-validation.
pub fn quasilinear_flow<T: Real>(xi: BlochVector<T>, p: &FlowParams<T>, t: T) -> BlochVector<T> {
    BlochVector::from_vec_unchecked(boost_velocity(xi.vec(), p.e, p.g * t))
}

/// `dn/dt = g (e - n (e.n))`.
pub fn quasilinear_rhs<T: Real>(n: BlochVector<T>, p: &FlowParams<T>) -> Vec3<T> {
    FlowKind::QuasiLinearBoost.rhs_raw(n.vec(), p)
}

/// `dn/dt = g (e x n)(e.n)`; orthogonal to both `n` and `e`, so it conserves
/// `|n|` and `e.n`.
pub fn weinberg_rhs<T: Real>(n: BlochVector<T>, p: &FlowParams<T>) -> Vec3<T> {
    FlowKind::Weinberg.rhs_raw(n.vec(), p)
}

/// Closed form of the Weinberg flow: rotation of `xi` about `e` by the angle
/// `theta = g t (e.xi)`,
///
/// `n(t) = xi cos theta + (e x xi) sin theta + e (e.xi)(1 - cos theta)`.
pub fn weinberg_flow<T: Real>(xi: BlochVector<T>, p: &FlowParams<T>, t: T) -> BlochVector<T> {
    let v = xi.vec();
    let axis_component = p.e.dot(v);
    let theta = p.g * t * axis_component;
    let (sin, cos) = theta.sin_cos();
    let rotated = v * cos + p.e.cross(v) * sin + p.e * (axis_component * (T::one() - cos));
    BlochVector::from_vec_unchecked(rotated)
}

/// Classical fixed-step fourth-order Runge-Kutta integration of the selected
/// flow's right-hand side; the independent oracle for the closed forms.
/// The result may carry `O(h^4)` truncation error outside the exact ball.
pub fn rk4_integrate<T: Real>(
    kind: FlowKind,
    xi: BlochVector<T>,
    p: &FlowParams<T>,
    t: T,
    steps: usize,
) -> Result<BlochVector<T>> {
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let h = t / T::from_usize(steps).expect("step count fits the scalar");
    let half_h = h * T::half();
    let sixth = h / T::real(6.0);
    let mut y = xi.vec();
    for step in 0..steps {
        let k1 = kind.rhs_raw(y, p);
        let k2 = kind.rhs_raw(y + k1 * half_h, p);
        let k3 = kind.rhs_raw(y + k2 * half_h, p);
        let k4 = kind.rhs_raw(y + k3 * h, p);
        y = y + (k1 + k2 * T::two() + k3 * T::two() + k4) * sixth;
        if !y.is_finite() {
            return Err(Error::NonFiniteIntegration { step });
        }
    }
    Ok(BlochVector::from_vec_unchecked(y))
}

/// Residual `|f_{t2}(f_{t1}(xi)) - f_{t1+t2}(xi)|` of the semigroup law for
/// the selected closed-form flow.
pub fn semigroup_check<T: Real>(
    kind: FlowKind,
    xi: BlochVector<T>,
    p: &FlowParams<T>,
    t1: T,
    t2: T,
) -> T {
    let stepped = kind.evolve(kind.evolve(xi, p, t1), p, t2);
    let direct = kind.evolve(xi, p, t1 + t2);
    stepped.vec().distance(direct.vec())
}
