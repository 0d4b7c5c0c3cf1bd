//! Seeded random state generation.
//!
//! Draws happen in `f64` and are converted to the target scalar afterwards,
//! so a fixed seed produces the same sequence regardless of the scalar the
//! caller instantiates.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::qstate::{BlochVector, ProjectorQ, QubitDensity};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Counter-based seeded generator used by all deterministic samplers.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the closed unit ball by rejection from the cube.
pub fn bloch_in_ball<T: Real, R: Rng>(rng: &mut R) -> BlochVector<T> {
    loop {
        let x: f64 = rng.random_range(-1.0..=1.0);
        let y: f64 = rng.random_range(-1.0..=1.0);
        let z: f64 = rng.random_range(-1.0..=1.0);
        if x * x + y * y + z * z <= 1.0 {
            return BlochVector::from_vec_unchecked(Vec3::new(
                T::real(x),
                T::real(y),
                T::real(z),
            ));
        }
    }
}

/// Uniform direction on the unit sphere (normalized ball draw; tiny-norm
/// draws are rejected for numerical stability).
pub fn unit_vector<T: Real, R: Rng>(rng: &mut R) -> Vec3<T> {
    loop {
        let v = bloch_in_ball::<f64, _>(rng).vec();
        if v.norm() >= 1e-3 {
            let u = v.normalized().expect("norm bounded away from zero");
            return Vec3::new(T::real(u.x), T::real(u.y), T::real(u.z));
        }
    }
}

/// Uniform draw from `[0, 1]`.
pub fn mixing_weight<T: Real, R: Rng>(rng: &mut R) -> T {
    T::real(rng.random_range(0.0..=1.0))
}

/// Random (generally mixed) qubit state, uniform over the Bloch ball.
pub fn qubit_density<T: Real, R: Rng>(rng: &mut R) -> QubitDensity<T> {
    bloch_in_ball(rng).to_density()
}

/// Random rank-1 projector, uniform over measurement axes.
pub fn rank1_projector<T: Real, R: Rng>(rng: &mut R) -> ProjectorQ<T> {
    ProjectorQ::from_axis(unit_vector(rng)).expect("sampled axis is unit")
}
