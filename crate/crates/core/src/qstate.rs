//! Exact small-dimension quantum-state algebra.
//!
//! Qubit states carry a dual representation: the Bloch vector
//! `n` (canonical for flows) and the density matrix
//! `rho = (I + n . sigma) / 2` (canonical for measurements and partial
//! traces). Conversions round-trip to working precision.
//!
//! Conventions fixed here and relied on throughout:
//! - computational basis ordered |00>, |01>, |10>, |11>;
//! - subsystem A is the left tensor factor;
//! - entropies are in nats.

use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli, Mat, Mat2, Mat4, C};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Bloch vector of a qubit state; `|n| <= 1` up to [`Real::BALL_TOL`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BlochVector<T>(Vec3<T>);

impl<T: Real> BlochVector<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(v: Vec3<T>) -> Result<Self> {
        let norm = v.norm();
        if !v.is_finite() || norm > T::one() + T::BALL_TOL {
            return Err(Error::OutsideBlochBall { norm: norm.widen() });
        }
        Ok(Self(v))
    }

    /// Wraps without the ball check. Callers guarantee `|v| <= 1` up to
    /// tolerance (e.g. outputs of ball-preserving maps).
    pub fn from_vec_unchecked(v: Vec3<T>) -> Self {
        Self(v)
    }

    /// Center of the ball: the maximally mixed state.
    pub fn zero() -> Self {
        Self(Vec3::zero())
    }

    pub fn vec(self) -> Vec3<T> {
        self.0
    }

    /// `|n| = 1` up to [`Real::BALL_TOL`]: the state is pure.
    pub fn is_pure(self) -> bool {
        (self.norm() - T::one()).abs() <= T::BALL_TOL
    }

    pub fn to_density(self) -> QubitDensity<T> {
        QubitDensity::from_bloch(self)
    }
}

impl<T> Deref for BlochVector<T> {
    type Target = Vec3<T>;
    fn deref(&self) -> &Vec3<T> {
        &self.0
    }
}

/// Unit polarization vector `(cos phi, sin phi, 0)` in the xy-plane.
pub fn polarization_vector<T: Real>(phi: T) -> Vec3<T> {
    Vec3::new(phi.cos(), phi.sin(), T::zero())
}

/// 2x2 Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitDensity<T> {
    m: Mat2<T>,
}

impl<T: Real> QubitDensity<T> {
    /// Validates hermiticity, unit trace and positivity. States below the
    /// `-STATE_TOL` eigenvalue threshold are rejected, not clamped.
    pub fn new(m: Mat2<T>) -> Result<Self> {
        validate_density(&m)?;
        Ok(Self { m })
    }

    pub(crate) fn from_matrix_unchecked(m: Mat2<T>) -> Self {
        Self { m }
    }

    /// `rho = (I + n . sigma) / 2`.
    pub fn from_bloch(n: BlochVector<T>) -> Self {
        let half = T::half();
        let v = n.vec();
        let m = Mat([
            [
                C::new((T::one() + v.z) * half, T::zero()),
                C::new(v.x * half, -v.y * half),
            ],
            [
                C::new(v.x * half, v.y * half),
                C::new((T::one() - v.z) * half, T::zero()),
            ],
        ]);
        Self { m }
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch(BlochVector::zero())
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }

    /// Bloch vector via Pauli traces, `n_k = tr(rho sigma_k)`.
    pub fn bloch(&self) -> BlochVector<T> {
        let [sx, sy, sz] = pauli::<T>();
        BlochVector::from_vec_unchecked(Vec3::new(
            self.m.trace_mul(&sx).re,
            self.m.trace_mul(&sy).re,
            self.m.trace_mul(&sz).re,
        ))
    }

    /// Eigenvalues `(1 - |n|)/2 <= (1 + |n|)/2`, clamped at zero from below.
    pub fn eigenvalues(&self) -> [T; 2] {
        let r = self.bloch().norm();
        let lo = ((T::one() - r) * T::half()).max(T::zero());
        let hi = (T::one() + r) * T::half();
        [lo, hi]
    }

    /// Von Neumann entropy in nats; `0 ln 0 := 0`.
    pub fn von_neumann_entropy(&self) -> T {
        let plogp = |p: T| {
            if p > T::zero() {
                -p * p.ln()
            } else {
                T::zero()
            }
        };
        let [lo, hi] = self.eigenvalues();
        plogp(lo) + plogp(hi)
    }

    /// Trace distance `tr|rho - sigma| / 2`, in `[0, 1]`. Computed from the
    /// eigenvalues of the Hermitian difference; for qubits this equals half
    /// the Euclidean distance of the Bloch vectors.
    pub fn trace_distance(&self, other: &Self) -> T {
        let d = self.m - other.m;
        let mean = (d.0[0][0].re + d.0[1][1].re) * T::half();
        let half_gap = (d.0[0][0].re - d.0[1][1].re) * T::half();
        let radius = (half_gap * half_gap + d.0[0][1].norm_sqr()).sqrt();
        ((mean + radius).abs() + (mean - radius).abs()) * T::half()
    }

    /// Selective measurement `rho -> P rho P / tr(P rho)` with the branch
    /// probability. Vanishing branches are an error.
    pub fn measure_selective(&self, p: &ProjectorQ<T>) -> Result<(Self, T)> {
        let prob = p.m.trace_mul(&self.m).re;
        if prob <= T::STATE_TOL {
            return Err(Error::ZeroProbabilityBranch {
                probability: prob.widen(),
            });
        }
        let post = (p.m * self.m * p.m).scale(prob.recip());
        Ok((Self::from_matrix_unchecked(post), prob))
    }
}

/// 4x4 Hermitian, unit-trace, positive-semidefinite matrix for the A (x) B
/// pair; A is the left tensor factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitDensity<T> {
    m: Mat4<T>,
}

impl<T: Real> TwoQubitDensity<T> {
    pub fn new(m: Mat4<T>) -> Result<Self> {
        validate_density(&m)?;
        Ok(Self { m })
    }

    pub(crate) fn from_matrix_unchecked(m: Mat4<T>) -> Self {
        Self { m }
    }

    /// The singlet `(|01> - |10>) / sqrt(2)` as a density matrix. Its
    /// conditional states at B are anti-correlated with A's outcome along
    /// every measurement axis.
    pub fn bell() -> Self {
        let h = T::half();
        let mut m = Mat4::zero();
        m.0[1][1] = C::new(h, T::zero());
        m.0[2][2] = C::new(h, T::zero());
        m.0[1][2] = C::new(-h, T::zero());
        m.0[2][1] = C::new(-h, T::zero());
        Self { m }
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.m
    }

    /// Non-selective measurement `P rho P + (I-P) rho (I-P)`.
    pub fn measure_nonselective(&self, p: &Projector2Q<T>) -> Self {
        let q = p.complement();
        let kept = p.m * self.m * p.m;
        let other = q.m * self.m * q.m;
        Self::from_matrix_unchecked(kept + other)
    }

    /// Selective measurement, as for [`QubitDensity::measure_selective`].
    pub fn measure_selective(&self, p: &Projector2Q<T>) -> Result<(Self, T)> {
        let prob = p.m.trace_mul(&self.m).re;
        if prob <= T::STATE_TOL {
            return Err(Error::ZeroProbabilityBranch {
                probability: prob.widen(),
            });
        }
        let post = (p.m * self.m * p.m).scale(prob.recip());
        Ok((Self::from_matrix_unchecked(post), prob))
    }

    /// Reduction to B's marginal, `tr_A`.
    pub fn partial_trace_a(&self) -> QubitDensity<T> {
        let m = Mat2::from_fn(|b1, b2| self.m.0[b1][b2] + self.m.0[2 + b1][2 + b2]);
        QubitDensity::from_matrix_unchecked(m)
    }
}

/// 2x2 Hermitian idempotent matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectorQ<T> {
    m: Mat2<T>,
}

impl<T: Real> ProjectorQ<T> {
    pub fn new(m: Mat2<T>) -> Result<Self> {
        validate_projector(&m)?;
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: Mat2::identity(),
        }
    }

    pub fn null() -> Self {
        Self { m: Mat2::zero() }
    }

    /// Rank-1 projector `(I + u . sigma) / 2` onto the pure state with Bloch
    /// vector `u`; `u` must be a unit vector.
    pub fn from_axis(u: Vec3<T>) -> Result<Self> {
        let norm = u.norm();
        if (norm - T::one()).abs() > T::BALL_TOL {
            return Err(Error::NotUnitDirection { norm: norm.widen() });
        }
        let pure = BlochVector::from_vec_unchecked(u);
        Ok(Self {
            m: *QubitDensity::from_bloch(pure).matrix(),
        })
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }

    pub fn complement(&self) -> Self {
        Self {
            m: Mat2::identity() - self.m,
        }
    }
}

/// 4x4 Hermitian idempotent matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projector2Q<T> {
    m: Mat4<T>,
}

impl<T: Real> Projector2Q<T> {
    pub fn new(m: Mat4<T>) -> Result<Self> {
        validate_projector(&m)?;
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: Mat4::identity(),
        }
    }

    pub fn null() -> Self {
        Self { m: Mat4::zero() }
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.m
    }

    pub fn complement(&self) -> Self {
        Self {
            m: Mat4::identity() - self.m,
        }
    }
}

/// A's polarization projector `(I + zeta_phi . sigma)/2 (x) I` for the
/// in-plane axis `zeta_phi = (cos phi, sin phi, 0)`.
pub fn projector_a<T: Real>(phi: T) -> Projector2Q<T> {
    let axis = polarization_vector(phi);
    let one_sided = QubitDensity::from_bloch(BlochVector::from_vec_unchecked(axis));
    Projector2Q {
        m: kron(one_sided.matrix(), &Mat2::identity()),
    }
}

/// Finite list of `(weight, state)` pairs with weights in `[0, 1]` summing
/// to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble<T> {
    members: Vec<(T, QubitDensity<T>)>,
}

impl<T: Real> Ensemble<T> {
    pub fn new(members: Vec<(T, QubitDensity<T>)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let mut sum = T::zero();
        for &(w, _) in &members {
            if !w.is_finite() || w < -T::STATE_TOL || w > T::one() + T::STATE_TOL {
                return Err(Error::WeightOutOfRange { weight: w.widen() });
            }
            sum = sum + w;
        }
        if (sum - T::one()).abs() > T::STATE_TOL {
            return Err(Error::WeightsNotNormalized { sum: sum.widen() });
        }
        Ok(Self { members })
    }

    pub(crate) fn from_members_unchecked(members: Vec<(T, QubitDensity<T>)>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &[(T, QubitDensity<T>)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The represented density matrix, `sum_i w_i rho_i`.
    pub fn mixture(&self) -> QubitDensity<T> {
        let mut m = Mat2::zero();
        for (w, rho) in &self.members {
            m = m + rho.matrix().scale(*w);
        }
        QubitDensity::from_matrix_unchecked(m)
    }
}

fn validate_density<T: Real, const N: usize>(m: &crate::linalg::Mat<T, N>) -> Result<()> {
    let defect = m.hermitian_defect();
    if !defect.is_finite() || defect > T::STATE_TOL {
        return Err(Error::NotHermitian {
            defect: defect.widen(),
        });
    }
    let trace = m.trace();
    if (trace.re - T::one()).abs() > T::STATE_TOL || trace.im.abs() > T::STATE_TOL {
        return Err(Error::NonUnitTrace {
            trace: trace.re.widen(),
        });
    }
    let eigen = m.eigenvalues_hermitian();
    if eigen[0] < -T::STATE_TOL {
        return Err(Error::NotPositiveSemidefinite {
            eigenvalue: eigen[0].widen(),
        });
    }
    Ok(())
}

fn validate_projector<T: Real, const N: usize>(m: &crate::linalg::Mat<T, N>) -> Result<()> {
    let defect = m.hermitian_defect();
    if !defect.is_finite() || defect > T::STATE_TOL {
        return Err(Error::NotHermitian {
            defect: defect.widen(),
        });
    }
    let idem = (*m * *m).max_abs_diff(m);
    if !idem.is_finite() || idem > T::STATE_TOL {
        return Err(Error::NotIdempotent {
            defect: idem.widen(),
        });
    }
    Ok(())
}
