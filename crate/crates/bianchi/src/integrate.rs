//! Adaptive integration of the expansion-reduced system with dense sample
//! recording and per-step sign bookkeeping for the curvature variables.

use serde::{Deserialize, Serialize};

use crate::state::{
    classify_type, derived, rhs, BianchiClass, BianchiState, DerivedQuantities, FluidParameter,
};
use crate::BianchiError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    /// Toward the big-bang limit of the rescaled time.
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegrationConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on the step size; the passages along the Kasner circle are slow
    /// and a large step would skate over the transitions.
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_step: 0.1,
            max_steps: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub state: BianchiState,
    pub derived: DerivedQuantities,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub direction: Direction,
    pub fluid: FluidParameter,
    /// Accepted steps on which any curvature variable changed sign.
    pub sign_violations: usize,
}

impl Trajectory {
    pub fn classify(&self) -> BianchiClass {
        classify_type(&self.samples[0].state)
    }

    pub fn max_abs_omega(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.derived.omega.abs())
            .fold(0.0, f64::max)
    }

    /// Largest state-space displacement from the initial point.
    pub fn max_drift(&self) -> f64 {
        let y0 = self.samples[0].state.to_array();
        self.samples
            .iter()
            .map(|s| {
                s.state
                    .to_array()
                    .iter()
                    .zip(y0.iter())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

pub fn integrate(
    s0: BianchiState,
    fluid: FluidParameter,
    direction: Direction,
    t_span: f64,
    cfg: &IntegrationConfig,
) -> Result<Trajectory, BianchiError> {
    if t_span <= 0.0 || t_span.is_nan() {
        return Err(BianchiError::InvalidSpan(t_span));
    }
    if cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0 || cfg.rel_tol.is_nan() || cfg.abs_tol.is_nan() {
        return Err(BianchiError::InvalidTolerance);
    }
    if !s0.is_finite() {
        return Err(BianchiError::NonFiniteState);
    }
    let t_end = match direction {
        Direction::Forward => t_span,
        Direction::Backward => -t_span,
    };
    let opts = dopri::Options {
        rel_tol: cfg.rel_tol,
        abs_tol: cfg.abs_tol,
        max_step: cfg.max_step,
        max_steps: cfg.max_steps,
    };
    let initial_signs = s0.to_array().map(f64::signum);
    let mut samples = Vec::new();
    let mut sign_violations = 0usize;
    dopri::integrate(
        |_t, y: &[f64; 5]| rhs(&BianchiState::from_array(*y), fluid),
        0.0,
        t_end,
        s0.to_array(),
        &opts,
        |t, y| {
            let state = BianchiState::from_array(*y);
            for (i, v) in y.iter().enumerate().take(3) {
                if initial_signs[i] != 0.0 && v.signum() != initial_signs[i] && *v != 0.0 {
                    sign_violations += 1;
                }
            }
            samples.push(Sample {
                t,
                state,
                derived: derived(&state, fluid),
            });
            true
        },
    )
    .map_err(BianchiError::Integrator)?;
    Ok(Trajectory {
        samples,
        direction,
        fluid,
        sign_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kasner_points_are_stationary() {
        let cfg = IntegrationConfig::default();
        let s0 = BianchiState::kasner(1.234);
        let traj = integrate(
            s0,
            FluidParameter::RADIATION,
            Direction::Forward,
            50.0,
            &cfg,
        )
        .unwrap();
        assert!(traj.max_drift() <= 1e-10, "drift {}", traj.max_drift());
    }

    #[test]
    fn sample_times_strictly_monotone_both_directions() {
        let cfg = IntegrationConfig::default();
        let s0 = BianchiState::vacuum(0.2, 0.1, 0.3, 1.0).unwrap();
        // forward stays inside the interval of existence only briefly
        for (direction, sign, span) in [
            (Direction::Forward, 1.0, 0.5),
            (Direction::Backward, -1.0, 5.0),
        ] {
            let traj = integrate(s0, FluidParameter::RADIATION, direction, span, &cfg).unwrap();
            for w in traj.samples.windows(2) {
                assert!((w[1].t - w[0].t) * sign > 0.0);
            }
        }
    }

    #[test]
    fn forward_blowup_is_reported() {
        // away from the singularity the curvature variables blow up in finite
        // time; the integrator must fail loudly rather than stall silently
        let cfg = IntegrationConfig::default();
        let s0 = BianchiState::vacuum(0.2, 0.1, 0.3, 1.0).unwrap();
        let result = integrate(s0, FluidParameter::RADIATION, Direction::Forward, 5.0, &cfg);
        assert!(matches!(result, Err(BianchiError::Integrator(_))));
    }

    #[test]
    fn vacuum_boundary_is_invariant_backward() {
        let cfg = IntegrationConfig::default();
        let s0 = BianchiState::vacuum(0.2, 0.15, 0.1, 0.9).unwrap();
        let traj = integrate(
            s0,
            FluidParameter::RADIATION,
            Direction::Backward,
            50.0,
            &cfg,
        )
        .unwrap();
        assert!(
            traj.max_abs_omega() <= 1e-6,
            "omega {}",
            traj.max_abs_omega()
        );
        assert_eq!(traj.sign_violations, 0);
    }

    #[test]
    fn single_cap_stays_in_cap_closure() {
        let cfg = IntegrationConfig::default();
        let eps = 1e-3;
        let radius = (1.0f64 - 0.75 * eps * eps).sqrt();
        let s0 = BianchiState::new(eps, 0.0, 0.0, radius * 0.6, radius * 0.8);
        let traj = integrate(
            s0,
            FluidParameter::RADIATION,
            Direction::Backward,
            40.0,
            &cfg,
        )
        .unwrap();
        for s in &traj.samples {
            assert_eq!(s.state.n2, 0.0);
            assert_eq!(s.state.n3, 0.0);
            assert!(s.derived.omega.abs() <= 1e-8);
        }
    }

    #[test]
    fn classification_constant_along_trajectories() {
        let cfg = IntegrationConfig::default();
        let s0 = BianchiState::vacuum(0.3, 0.2, 0.25, 0.4).unwrap();
        let traj = integrate(
            s0,
            FluidParameter::RADIATION,
            Direction::Backward,
            30.0,
            &cfg,
        )
        .unwrap();
        let class = traj.classify();
        for s in &traj.samples {
            assert_eq!(classify_type(&s.state), class);
        }
    }

    #[test]
    fn invalid_inputs_rejected() {
        let cfg = IntegrationConfig::default();
        let s0 = BianchiState::kasner(0.0);
        assert!(matches!(
            integrate(s0, FluidParameter::RADIATION, Direction::Forward, 0.0, &cfg),
            Err(BianchiError::InvalidSpan(_))
        ));
        let bad = IntegrationConfig {
            rel_tol: 0.0,
            ..cfg
        };
        assert!(matches!(
            integrate(s0, FluidParameter::RADIATION, Direction::Forward, 1.0, &bad),
            Err(BianchiError::InvalidTolerance)
        ));
    }

    #[test]
    fn config_json_roundtrip() {
        let cfg = IntegrationConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: IntegrationConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
        // partial configs fall back to defaults
        let partial: IntegrationConfig = serde_json::from_str(r#"{"rel_tol":1e-8}"#).unwrap();
        assert_eq!(partial.rel_tol, 1e-8);
        assert_eq!(partial.abs_tol, cfg.abs_tol);
    }
}
