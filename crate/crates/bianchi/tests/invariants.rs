//! Equilibrium sweeps and a regression ensemble for the invariants the
//! right-hand side must respect.

use bianchi::{
    classify_type, integrate, rhs, BianchiState, Direction, FluidParameter, IntegrationConfig,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::TAU;

fn rhs_norm(s: &BianchiState) -> f64 {
    rhs(s, FluidParameter::RADIATION)
        .iter()
        .map(|c| c * c)
        .sum::<f64>()
        .sqrt()
}

#[test]
fn rhs_vanishes_on_360_kasner_circle_points() {
    for k in 0..360 {
        let theta = TAU * k as f64 / 360.0;
        let norm = rhs_norm(&BianchiState::kasner(theta));
        assert!(norm <= 1e-12, "rhs norm {norm} at theta={theta}");
    }
}

#[test]
fn rhs_vanishes_on_100_taub_line_points() {
    for k in 0..100 {
        let n = -2.0 + 4.0 * (k as f64 + 0.5) / 100.0;
        let norm = rhs_norm(&BianchiState::taub_line(n));
        assert!(norm <= 1e-12, "rhs norm {norm} at n={n}");
    }
}

/// Mixed vacuum ensemble of cap, type VIII and type IX starts.
fn regression_ensemble() -> Vec<BianchiState> {
    let mut rng = StdRng::seed_from_u64(0xb1a2c41);
    let mut out = Vec::new();
    while out.len() < 20 {
        let pattern = out.len() % 4;
        let mag = |rng: &mut StdRng| rng.random_range(0.05..0.4);
        let (n1, n2, n3) = match pattern {
            0 => (mag(&mut rng), 0.0, 0.0),
            1 => (mag(&mut rng), mag(&mut rng), mag(&mut rng)),
            2 => (-mag(&mut rng), mag(&mut rng), mag(&mut rng)),
            _ => (0.0, mag(&mut rng), mag(&mut rng)),
        };
        let angle = rng.random_range(0.0..TAU);
        if let Some(s) = BianchiState::vacuum(n1, n2, n3, angle) {
            out.push(s);
        }
    }
    out
}

#[test]
fn ensemble_no_sign_changes_and_constant_class() {
    let cfg = IntegrationConfig::default();
    for s0 in regression_ensemble() {
        let traj = integrate(
            s0,
            FluidParameter::RADIATION,
            Direction::Backward,
            30.0,
            &cfg,
        )
        .unwrap();
        assert_eq!(traj.sign_violations, 0, "sign flip from {s0:?}");
        let class = classify_type(&s0);
        for s in &traj.samples {
            assert_eq!(classify_type(&s.state), class, "class drift from {s0:?}");
        }
    }
}

#[test]
fn ensemble_vacuum_drift_bounded() {
    let cfg = IntegrationConfig::default();
    for s0 in regression_ensemble() {
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
            "omega drift {} from {s0:?}",
            traj.max_abs_omega()
        );
    }
}

#[test]
fn matter_trajectories_keep_omega_nonnegative() {
    // with radiation, starts inside the matter region stay physical
    let cfg = IntegrationConfig::default();
    let s0 = BianchiState::new(0.1, 0.08, 0.05, 0.3, 0.2);
    let traj = integrate(
        s0,
        FluidParameter::RADIATION,
        Direction::Backward,
        20.0,
        &cfg,
    )
    .unwrap();
    for s in &traj.samples {
        assert!(s.derived.omega >= -1e-12, "omega {}", s.derived.omega);
    }
}
