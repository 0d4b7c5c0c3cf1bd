//! Convex quasi-linearity machinery.
//!
//! A trace-preserving map `Phi` on density matrices is convex quasi-linear
//! if the image of every two-member mixture is again a mixture of the
//! images: `Phi[l rho_a + (1-l) rho_b] = l' Phi[rho_a] + (1-l') Phi[rho_b]`
//! for some `l'` in `[0, 1]`. A time evolution satisfies the property with a
//! time-dependent coefficient `l(t)`, `l(0) = l`.
//!
//! For the quasi-linear boost flow `l(t)` has the closed form
//!
//! `l(t) = l (1 + (e.xi_a) tanh(g t)) / (1 + (e.xi) tanh(g t))`
//!
//! where `xi` is the mixture's Bloch vector. [`certify_quasilinearity`]
//! checks the property numerically on seeded random ensembles: it evolves
//! the mixture and both members, projects the evolved mixture onto the
//! members' chord ([`fit_lambda`]), and counts residuals above tolerance and
//! out-of-range coefficients. The boost flow certifies clean; the Weinberg
//! flow does not.
//!
//! Selective measurements are quasi-linear with
//! `l' = l tr(P rho_a) / tr(P rho)` ([`measurement_lambda_bar`]).
//!
//! Residuals are Euclidean distances in Bloch space, which is twice the
//! trace distance for qubits.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flows::{FlowKind, FlowParams};
use crate::qstate::{BlochVector, Ensemble, ProjectorQ, QubitDensity};
use crate::sample;
use crate::scalar::Real;

/// A seeded two-member ensemble draw: member Bloch vectors and the mixing
/// weight of the first member.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct EnsembleDraw<T> {
    pub xi_a: BlochVector<T>,
    pub xi_b: BlochVector<T>,
    pub lambda: T,
}

impl<T: Real> EnsembleDraw<T> {
    /// Bloch vector of the represented mixture,
    /// `lambda xi_a + (1 - lambda) xi_b`.
    pub fn mixed(&self) -> BlochVector<T> {
        let v = self.xi_a.vec() * self.lambda + self.xi_b.vec() * (T::one() - self.lambda);
        BlochVector::from_vec_unchecked(v)
    }
}

/// Deterministic sample of `count` two-member ensembles: members uniform in
/// the closed unit ball, weights uniform on `[0, 1]`.
pub fn sample_ensembles<T: Real>(seed: u64, count: usize) -> Vec<EnsembleDraw<T>> {
    let mut rng = sample::seeded_rng(seed);
    (0..count)
        .map(|_| EnsembleDraw {
            xi_a: sample::bloch_in_ball(&mut rng),
            xi_b: sample::bloch_in_ball(&mut rng),
            lambda: sample::mixing_weight(&mut rng),
        })
        .collect()
}

/// Evolves every member state by the selected flow, keeping the weights:
/// the physical outcome frequencies are untouched, re-weighting is a
/// separate equivalence statement.
pub fn evolve_ensemble<T: Real>(
    ens: &Ensemble<T>,
    kind: FlowKind,
    p: &FlowParams<T>,
    t: T,
) -> Ensemble<T> {
    let members = ens
        .members()
        .iter()
        .map(|(w, rho)| (*w, kind.evolve(rho.bloch(), p, t).to_density()))
        .collect();
    Ensemble::from_members_unchecked(members)
}

/// Closed-form time-dependent mixing coefficient of the boost flow.
///
/// `xi` is the mixture's Bloch vector (`xi = lambda xi_a + (1-lambda) xi_b`
/// for some admissible second member). The denominator degenerates only for
/// a pure mixture at the antipode of `e` in the infinite-time limit.
pub fn lambda_closed_form<T: Real>(
    lambda: T,
    xi_a: BlochVector<T>,
    xi: BlochVector<T>,
    p: &FlowParams<T>,
    t: T,
) -> Result<T> {
    if lambda < -T::STATE_TOL || lambda > T::one() + T::STATE_TOL {
        return Err(Error::LambdaOutOfRange {
            lambda: lambda.widen(),
        });
    }
    let u = (p.rate() * t).tanh();
    let denominator = T::one() + p.direction().dot(xi.vec()) * u;
    if denominator.abs() <= T::STATE_TOL {
        return Err(Error::DegenerateDenominator {
            denominator: denominator.widen(),
        });
    }
    let numerator = T::one() + p.direction().dot(xi_a.vec()) * u;
    Ok(lambda * numerator / denominator)
}

/// Least-squares mixing coefficient for a target state against a two-member
/// chord.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct LambdaFit<T> {
    /// Orthogonal projection of the target onto the chord, as a coefficient.
    pub lambda_star: T,
    /// Bloch-space distance from the target to the fitted combination.
    pub residual: T,
    /// Whether `lambda_star` lies in `[0, 1]` up to `BALL_TOL`.
    pub in_range: bool,
    /// Chord shorter than `STATE_TOL`: any coefficient works, the fit
    /// reports `lambda_star = 1` and the distance to the first member.
    pub degenerate: bool,
}

/// Projects `n_target` onto the chord between `n_a` and `n_b`:
/// `lambda* = <n_target - n_b, n_a - n_b> / |n_a - n_b|^2`, with the
/// residual of the resulting convex recombination.
pub fn fit_lambda<T: Real>(
    n_a: BlochVector<T>,
    n_b: BlochVector<T>,
    n_target: BlochVector<T>,
) -> LambdaFit<T> {
    let chord = n_a.vec() - n_b.vec();
    let chord_sq = chord.norm_sq();
    if chord_sq.sqrt() <= T::STATE_TOL {
        return LambdaFit {
            lambda_star: T::one(),
            residual: n_a.vec().distance(n_target.vec()),
            in_range: true,
            degenerate: true,
        };
    }
    let lambda_star = (n_target.vec() - n_b.vec()).dot(chord) / chord_sq;
    let recombined = n_a.vec() * lambda_star + n_b.vec() * (T::one() - lambda_star);
    let residual = recombined.distance(n_target.vec());
    let in_range = lambda_star >= -T::BALL_TOL && lambda_star <= T::one() + T::BALL_TOL;
    LambdaFit {
        lambda_star,
        residual,
        in_range,
        degenerate: false,
    }
}

/// The sample with the largest chord residual in a certification run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct WorstCase<T> {
    pub xi_a: BlochVector<T>,
    pub xi_b: BlochVector<T>,
    pub lambda: T,
    pub t: T,
}

/// Outcome of a quasi-linearity certification run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct CertReport<T> {
    pub flow: FlowKind,
    pub samples: usize,
    pub max_residual: T,
    pub worst_case: WorstCase<T>,
    pub violations: usize,
}

impl<T: Real> CertReport<T> {
    /// No residual above tolerance and no out-of-range coefficient.
    pub fn passes(&self) -> bool {
        self.violations == 0
    }
}

/// Per-draw certification outcome, reduced in index order.
struct DrawOutcome<T> {
    max_residual: T,
    worst_t: T,
    violations: usize,
}

/// Certifies the quasi-linearity property for `samples` seeded random
/// two-member ensembles over a time grid.
///
/// For each draw the mixture and both members are evolved by the selected
/// flow at every grid time, the evolved mixture is projected onto the
/// members' chord, and a violation is counted whenever the fit residual
/// exceeds `tol` or the fitted coefficient leaves `[0, 1]` (degenerate
/// chords demand only the residual). Deterministic for a fixed seed; the
/// samples are evaluated in parallel and reduced in index order.
pub fn certify_quasilinearity<T: Real>(
    kind: FlowKind,
    p: &FlowParams<T>,
    samples: usize,
    t_grid: &[T],
    tol: T,
    seed: u64,
) -> Result<CertReport<T>> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    if t_grid.is_empty() {
        return Err(Error::EmptyTimeGrid);
    }
    if !tol.is_finite() || tol <= T::zero() {
        return Err(Error::NonPositiveTolerance { tol: tol.widen() });
    }
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFiniteInput { what: "time grid" });
    }

    let draws = sample_ensembles::<T>(seed, samples);
    let outcomes: Vec<DrawOutcome<T>> = draws
        .par_iter()
        .map(|draw| {
            let mut out = DrawOutcome {
                max_residual: T::neg_infinity(),
                worst_t: t_grid[0],
                violations: 0,
            };
            let mixed = draw.mixed();
            for &t in t_grid {
                let n_a = kind.evolve(draw.xi_a, p, t);
                let n_b = kind.evolve(draw.xi_b, p, t);
                let n_mixed = kind.evolve(mixed, p, t);
                let fit = fit_lambda(n_a, n_b, n_mixed);
                if fit.residual > tol || !fit.in_range {
                    out.violations += 1;
                }
                if fit.residual > out.max_residual {
                    out.max_residual = fit.residual;
                    out.worst_t = t;
                }
            }
            out
        })
        .collect();

    let mut violations = 0;
    let mut max_residual = T::neg_infinity();
    let mut worst = WorstCase {
        xi_a: draws[0].xi_a,
        xi_b: draws[0].xi_b,
        lambda: draws[0].lambda,
        t: t_grid[0],
    };
    for (draw, outcome) in draws.iter().zip(&outcomes) {
        violations += outcome.violations;
        if outcome.max_residual > max_residual {
            max_residual = outcome.max_residual;
            worst = WorstCase {
                xi_a: draw.xi_a,
                xi_b: draw.xi_b,
                lambda: draw.lambda,
                t: outcome.worst_t,
            };
        }
    }
    Ok(CertReport {
        flow: kind,
        samples,
        max_residual,
        worst_case: worst,
        violations,
    })
}

/// Mixing coefficient of a selective measurement,
/// `l' = l tr(P rho_a) / tr(P rho)`, the coefficient that recombines the
/// measured members into the measured mixture.
pub fn measurement_lambda_bar<T: Real>(
    lambda: T,
    rho_a: &QubitDensity<T>,
    rho: &QubitDensity<T>,
    p: &ProjectorQ<T>,
) -> Result<T> {
    if lambda < -T::STATE_TOL || lambda > T::one() + T::STATE_TOL {
        return Err(Error::LambdaOutOfRange {
            lambda: lambda.widen(),
        });
    }
    let total = p.matrix().trace_mul(rho.matrix()).re;
    if total <= T::STATE_TOL {
        return Err(Error::ZeroProbabilityBranch {
            probability: total.widen(),
        });
    }
    let member = p.matrix().trace_mul(rho_a.matrix()).re;
    Ok(lambda * member / total)
}
