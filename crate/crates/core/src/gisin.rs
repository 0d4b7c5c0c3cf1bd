//! The two-observer polarization experiment, end to end.
//!
//! A source midway between observers A and B emits singlet pairs. A
//! measures, without selection, the polarization projector
//! `(I + zeta_phi . sigma)/2 (x) I` with a freely chosen angle `phi`. B's
//! reduced state is then the even mixture of the two conditional states
//! `(I -+ zeta_phi . sigma)/2` — the fully depolarized state, independent of
//! `phi`. A nonlinear evolution applied on B's side can break that
//! independence and so open a signaling channel; whether it does is exactly
//! the quasi-linearity question.
//!
//! For the boost flow the evolved ensemble recombines, with the
//! time-dependent coefficient `l(t) = (1 - (e.zeta_phi) tanh(g t))/2`,
//! to the `phi`-independent state with Bloch vector `e tanh(g t)`:
//! B cannot detect A's setting. For the Weinberg flow the `1/2 / 1/2`
//! mixture of the evolved members is `phi`-dependent, which
//! [`signaling_metric`] quantifies as a trace distance between B's effective
//! states under two settings.
//!
//! Two weighting modes make the comparison explicit: `PaperLambda`
//! recombines evolved members with `l(t)` (the equivalence statement),
//! `Frequency` mixes them with the unchanged outcome frequencies `1/2, 1/2`
//! (the operational reading). The modes agree at `t = 0` and, for the boost
//! flow under `PaperLambda`, at all times.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flows::{FlowKind, FlowParams};
use crate::qstate::{polarization_vector, projector_a, BlochVector, Ensemble, QubitDensity, TwoQubitDensity};
use crate::quasilin::evolve_ensemble;
use crate::scalar::Real;

/// How B's effective state is assembled from the evolved ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Weighting {
    /// Recombine with the time-dependent coefficient `l(t)`.
    #[serde(rename = "paper-lambda")]
    PaperLambda,
    /// Mix with the physical outcome frequencies `1/2, 1/2`.
    #[serde(rename = "frequency")]
    Frequency,
}

impl Weighting {
    pub fn name(self) -> &'static str {
        match self {
            Weighting::PaperLambda => "paper-lambda",
            Weighting::Frequency => "frequency",
        }
    }
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Weighting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-lambda" => Ok(Weighting::PaperLambda),
            "frequency" => Ok(Weighting::Frequency),
            other => Err(Error::UnknownWeighting(other.to_owned())),
        }
    }
}

/// Full experiment configuration: flow, geometry, setting and time grids,
/// weighting mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig<T> {
    kind: FlowKind,
    params: FlowParams<T>,
    phis: Vec<T>,
    times: Vec<T>,
    weighting: Weighting,
}

impl<T: Real> ExperimentConfig<T> {
    pub fn new(
        kind: FlowKind,
        params: FlowParams<T>,
        phis: Vec<T>,
        times: Vec<T>,
        weighting: Weighting,
    ) -> Result<Self> {
        if phis.is_empty() {
            return Err(Error::EmptyAngleGrid);
        }
        if times.is_empty() {
            return Err(Error::EmptyTimeGrid);
        }
        if phis.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteInput { what: "angle grid" });
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFiniteInput { what: "time grid" });
        }
        Ok(Self {
            kind,
            params,
            phis,
            times,
            weighting,
        })
    }

    pub fn kind(&self) -> FlowKind {
        self.kind
    }

    pub fn params(&self) -> &FlowParams<T> {
        &self.params
    }

    pub fn phis(&self) -> &[T] {
        &self.phis
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }
}

/// Default setting grid: 36 uniform angles on `[0, 2 pi)`.
pub fn default_phi_grid<T: Real>() -> Vec<T> {
    let n = 36;
    let step = T::TAU() / T::from_usize(n).expect("grid size fits the scalar");
    (0..n)
        .map(|k| step * T::from_usize(k).expect("grid index fits the scalar"))
        .collect()
}

/// Default time grid: 20 uniform points on `(0, 10]` (in units of `1/g`).
pub fn default_time_grid<T: Real>() -> Vec<T> {
    let n = 20;
    let step = T::real(0.5);
    (1..=n)
        .map(|k| step * T::from_usize(k).expect("grid index fits the scalar"))
        .collect()
}

/// B's ensemble after A measures at angle `phi`: the selective branches of
/// the non-selective polarization measurement on the singlet, reduced to B.
/// Members carry Bloch vectors `-zeta_phi` and `+zeta_phi` with weights
/// `1/2, 1/2`; the mixture is the fully depolarized state for every `phi`.
pub fn prepare_b_ensemble<T: Real>(phi: T) -> Ensemble<T> {
    let bell = TwoQubitDensity::bell();
    let p = projector_a(phi);
    let (branch1, w1) = bell
        .measure_selective(&p)
        .expect("singlet branch probability is 1/2");
    let (branch2, w2) = bell
        .measure_selective(&p.complement())
        .expect("singlet branch probability is 1/2");
    Ensemble::from_members_unchecked(vec![
        (w1, branch1.partial_trace_a()),
        (w2, branch2.partial_trace_a()),
    ])
}

/// B's reduced state evolved from the center of the ball by the boost flow:
/// Bloch vector `e tanh(g t)`.
pub fn evolved_rho_b<T: Real>(p: &FlowParams<T>, t: T) -> QubitDensity<T> {
    let n = p.direction() * (p.rate() * t).tanh();
    BlochVector::from_vec_unchecked(n).to_density()
}

/// The time-dependent recombination coefficient for B's ensemble,
/// `l(t) = (1 - (e.zeta_phi) tanh(g t)) / 2`.
pub fn recombination_lambda<T: Real>(p: &FlowParams<T>, phi: T, t: T) -> T {
    let c = p.direction().dot(polarization_vector(phi));
    (T::one() - c * (p.rate() * t).tanh()) * T::half()
}

/// Trace distance between the `l(t)`-recombined boost-evolved ensemble and
/// the directly evolved reduced state; vanishes (to rounding) for every
/// `phi` and `t`.
pub fn recombination_check<T: Real>(phi: T, p: &FlowParams<T>, t: T) -> T {
    let recombined = effective_state(
        FlowKind::QuasiLinearBoost,
        p,
        Weighting::PaperLambda,
        phi,
        t,
    );
    recombined.trace_distance(&evolved_rho_b(p, t))
}

/// B's effective state for setting `phi` at time `t` under the selected
/// flow and weighting mode.
fn effective_state<T: Real>(
    kind: FlowKind,
    p: &FlowParams<T>,
    weighting: Weighting,
    phi: T,
    t: T,
) -> QubitDensity<T> {
    let ens = prepare_b_ensemble(phi);
    let evolved = evolve_ensemble(&ens, kind, p, t);
    let members = evolved.members();
    let (w1, n1) = (members[0].0, members[0].1.bloch().vec());
    let (w2, n2) = (members[1].0, members[1].1.bloch().vec());
    let mixed = match weighting {
        Weighting::PaperLambda => {
            let l = recombination_lambda(p, phi, t);
            n1 * l + n2 * (T::one() - l)
        }
        Weighting::Frequency => n1 * w1 + n2 * w2,
    };
    BlochVector::from_vec_unchecked(mixed).to_density()
}

/// Trace distance between B's effective states for A's settings `phi1` and
/// `phi2`; a nonzero value is a signaling channel.
pub fn signaling_metric<T: Real>(cfg: &ExperimentConfig<T>, phi1: T, phi2: T, t: T) -> T {
    let s1 = effective_state(cfg.kind, &cfg.params, cfg.weighting, phi1, t);
    let s2 = effective_state(cfg.kind, &cfg.params, cfg.weighting, phi2, t);
    s1.trace_distance(&s2)
}

/// One evaluated setting pair of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct SignalRow<T> {
    pub phi1: T,
    pub phi2: T,
    pub t: T,
    pub weighting: Weighting,
    pub distance: T,
}

/// Evaluates [`signaling_metric`] over the Cartesian product of setting
/// pairs and times, in lexicographic `(phi1, phi2, t)` index order. Rows are
/// computed in parallel and collected in index order.
pub fn sweep<T: Real>(cfg: &ExperimentConfig<T>) -> Vec<SignalRow<T>> {
    let mut cells = Vec::with_capacity(cfg.phis.len() * cfg.phis.len() * cfg.times.len());
    for &phi1 in &cfg.phis {
        for &phi2 in &cfg.phis {
            for &t in &cfg.times {
                cells.push((phi1, phi2, t));
            }
        }
    }
    cells
        .par_iter()
        .map(|&(phi1, phi2, t)| SignalRow {
            phi1,
            phi2,
            t,
            weighting: cfg.weighting,
            distance: signaling_metric(cfg, phi1, phi2, t),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec3::Vec3;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn params_x() -> FlowParams<f64> {
        FlowParams::new(Vec3::new(1.0, 0.0, 0.0), 1.0).unwrap()
    }

    fn config(kind: FlowKind, weighting: Weighting) -> ExperimentConfig<f64> {
        ExperimentConfig::new(
            kind,
            params_x(),
            default_phi_grid(),
            default_time_grid(),
            weighting,
        )
        .unwrap()
    }

    #[test]
    fn preparation_is_setting_independent() {
        for phi in default_phi_grid::<f64>() {
            let ens = prepare_b_ensemble(phi);
            let mixture = ens.mixture();
            assert!(
                mixture
                    .matrix()
                    .max_abs_diff(QubitDensity::maximally_mixed().matrix())
                    < 1e-14
            );
        }
    }

    #[test]
    fn preparation_members_at_phi_zero() {
        let ens = prepare_b_ensemble(0.0f64);
        let members = ens.members();
        assert!((members[0].0 - 0.5).abs() < 1e-14);
        assert!((members[1].0 - 0.5).abs() < 1e-14);
        assert!(members[0].1.bloch().vec().distance(Vec3::new(-1.0, 0.0, 0.0)) < 1e-14);
        assert!(members[1].1.bloch().vec().distance(Vec3::new(1.0, 0.0, 0.0)) < 1e-14);
    }

    #[test]
    fn evolved_reduced_state_examples() {
        let p = FlowParams::new(Vec3::new(0.0, 0.0, 1.0), 1.0).unwrap();
        let at_zero = evolved_rho_b(&p, 0.0);
        assert!(
            at_zero
                .matrix()
                .max_abs_diff(QubitDensity::maximally_mixed().matrix())
                < 1e-15
        );

        // Against the RK4 oracle from the center.
        let oracle = crate::flows::rk4_integrate(
            FlowKind::QuasiLinearBoost,
            BlochVector::zero(),
            &p,
            1.0,
            10_000,
        )
        .unwrap();
        assert!(evolved_rho_b(&p, 1.0).bloch().vec().distance(oracle.vec()) < 1e-10);

        // Saturation: essentially pure along e.
        let late = evolved_rho_b(&p, 30.0);
        assert!(late.bloch().vec().distance(Vec3::new(0.0, 0.0, 1.0)) < 1e-9);
    }

    #[test]
    fn recombination_lambda_matches_general_closed_form() {
        let p = params_x();
        for (phi, t) in [(0.0, 0.5), (1.1, 2.0), (2.9, 7.0)] {
            let zeta = polarization_vector(phi);
            let via_general = crate::quasilin::lambda_closed_form(
                0.5,
                BlochVector::from_vec(-zeta).unwrap(),
                BlochVector::zero(),
                &p,
                t,
            )
            .unwrap();
            let via_gisin = recombination_lambda(&p, phi, t);
            assert!((via_general - via_gisin).abs() < 1e-15);
        }
    }

    #[test]
    fn recombination_residual_vanishes() {
        let p = params_x();
        assert_eq!(recombination_check(1.3, &p, 0.0), 0.0);
        assert!(recombination_check(PI / 3.0, &p, 2.0) < 1e-12);
        let mut worst = 0.0f64;
        for phi in default_phi_grid::<f64>() {
            for t in default_time_grid::<f64>() {
                worst = worst.max(recombination_check(phi, &p, t));
            }
        }
        assert!(worst < 1e-12, "worst residual {worst}");
    }

    #[test]
    fn signaling_metric_trivial_cases() {
        for weighting in [Weighting::PaperLambda, Weighting::Frequency] {
            for kind in [FlowKind::QuasiLinearBoost, FlowKind::Weinberg] {
                let cfg = config(kind, weighting);
                let d = signaling_metric(&cfg, 0.4, 2.0, 0.0);
                assert!(d < 1e-14, "{kind:?}/{weighting:?} at t=0: {d}");
            }
        }
    }

    #[test]
    fn boost_flow_does_not_signal_under_reweighting() {
        let cfg = config(FlowKind::QuasiLinearBoost, Weighting::PaperLambda);
        for (phi1, phi2, t) in [(0.0, FRAC_PI_4, 1.0), (1.0, 4.0, 3.5), (0.2, 5.9, 9.0)] {
            assert!(signaling_metric(&cfg, phi1, phi2, t) < 1e-12);
        }
    }

    #[test]
    fn weinberg_flow_signals_under_frequency_weighting() {
        let cfg = config(FlowKind::Weinberg, Weighting::Frequency);
        let d = signaling_metric(&cfg, 0.0, FRAC_PI_4, 1.0);
        assert!(d > 0.1, "signal distance {d}");

        // Independent evaluation: the 1/2-1/2 mixture of the rotated members
        // has Bloch vector (e x zeta_phi) sin(g t cos phi); the distance is
        // half the difference of the two mixtures.
        let e = Vec3::new(1.0, 0.0, 0.0);
        let mix = |phi: f64, t: f64| {
            e.cross(polarization_vector(phi)) * (t * e.dot(polarization_vector(phi))).sin()
        };
        let expected = 0.5 * mix(0.0, 1.0).distance(mix(FRAC_PI_4, 1.0));
        assert!((d - expected).abs() < 1e-13);
    }

    #[test]
    fn signaling_metric_is_symmetric() {
        let cfg = config(FlowKind::Weinberg, Weighting::Frequency);
        for (phi1, phi2, t) in [(0.0, 1.0, 0.7), (2.0, 5.0, 3.0)] {
            let d12 = signaling_metric(&cfg, phi1, phi2, t);
            let d21 = signaling_metric(&cfg, phi2, phi1, t);
            assert_eq!(d12, d21);
        }
    }

    #[test]
    fn sweep_orders_rows_lexicographically() {
        let cfg = ExperimentConfig::new(
            FlowKind::QuasiLinearBoost,
            params_x(),
            vec![0.0, 1.0],
            vec![0.5, 1.5],
            Weighting::PaperLambda,
        )
        .unwrap();
        let rows = sweep(&cfg);
        assert_eq!(rows.len(), 8);
        assert_eq!((rows[0].phi1, rows[0].phi2, rows[0].t), (0.0, 0.0, 0.5));
        assert_eq!((rows[1].phi1, rows[1].phi2, rows[1].t), (0.0, 0.0, 1.5));
        assert_eq!((rows[2].phi1, rows[2].phi2, rows[2].t), (0.0, 1.0, 0.5));
        assert_eq!((rows[7].phi1, rows[7].phi2, rows[7].t), (1.0, 1.0, 1.5));
    }

    #[test]
    fn sweep_single_cell() {
        let cfg = ExperimentConfig::new(
            FlowKind::Weinberg,
            params_x(),
            vec![0.9],
            vec![2.0],
            Weighting::Frequency,
        )
        .unwrap();
        let rows = sweep(&cfg);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].phi1, rows[0].phi2);
        assert!(rows[0].distance < 1e-14);
    }

    #[test]
    fn sweep_extremes_match_the_pointwise_metric() {
        let boost = config(FlowKind::QuasiLinearBoost, Weighting::PaperLambda);
        let max = sweep(&boost)
            .into_iter()
            .map(|r| r.distance)
            .fold(0.0f64, f64::max);
        assert!(max < 1e-12, "boost sweep max {max}");

        let weinberg = config(FlowKind::Weinberg, Weighting::Frequency);
        let max = sweep(&weinberg)
            .into_iter()
            .map(|r| r.distance)
            .fold(0.0f64, f64::max);
        assert!(max > 0.1, "weinberg sweep max {max}");
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            ExperimentConfig::new(
                FlowKind::QuasiLinearBoost,
                params_x(),
                vec![],
                vec![1.0],
                Weighting::PaperLambda,
            ),
            Err(Error::EmptyAngleGrid)
        ));
        assert!(matches!(
            ExperimentConfig::new(
                FlowKind::QuasiLinearBoost,
                params_x(),
                vec![0.0],
                vec![f64::INFINITY],
                Weighting::PaperLambda,
            ),
            Err(Error::NonFiniteInput { .. })
        ));
    }

    #[test]
    fn weighting_round_trips_through_strings() {
        assert_eq!(
            "paper-lambda".parse::<Weighting>().unwrap(),
            Weighting::PaperLambda
        );
        assert_eq!("frequency".parse::<Weighting>().unwrap(), Weighting::Frequency);
        assert!("midpoint".parse::<Weighting>().is_err());
    }
}
