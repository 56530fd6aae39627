//! Running Mixmaster-type integrals along a trajectory: the particle-horizon
//! integrand uses square roots of the pairwise curvature products, the weaker
//! companion integral the plain absolute products.

use crate::integrate::Trajectory;
use crate::state::BianchiState;

/// Partial sums of both integrals at every sample time.
#[derive(Debug, Clone, PartialEq)]
pub struct MixmasterSeries {
    /// `(t, I partial sum, J partial sum)`
    pub partials: Vec<(f64, f64, f64)>,
}

fn integrand_i(s: &BianchiState) -> f64 {
    (s.n1 * s.n2).abs().sqrt() + (s.n2 * s.n3).abs().sqrt() + (s.n3 * s.n1).abs().sqrt()
}

fn integrand_j(s: &BianchiState) -> f64 {
    (s.n1 * s.n2).abs() + (s.n2 * s.n3).abs() + (s.n3 * s.n1).abs()
}

/// Trapezoid accumulation over the adaptive samples, in traversal order.
pub fn mixmaster_integrals(traj: &Trajectory) -> MixmasterSeries {
    let mut partials = Vec::with_capacity(traj.samples.len());
    let mut acc_i = 0.0;
    let mut acc_j = 0.0;
    let mut prev: Option<(f64, f64, f64)> = None;
    for s in &traj.samples {
        let fi = integrand_i(&s.state);
        let fj = integrand_j(&s.state);
        if let Some((tp, fip, fjp)) = prev {
            let dt = (s.t - tp).abs();
            acc_i += 0.5 * dt * (fi + fip);
            acc_j += 0.5 * dt * (fj + fjp);
        }
        partials.push((s.t, acc_i, acc_j));
        prev = Some((s.t, fi, fj));
    }
    MixmasterSeries { partials }
}

impl MixmasterSeries {
    pub fn total_i(&self) -> f64 {
        self.partials.last().map_or(0.0, |&(_, i, _)| i)
    }

    pub fn total_j(&self) -> f64 {
        self.partials.last().map_or(0.0, |&(_, _, j)| j)
    }
}

/// CSV with one row per sample: state, derived constraint data, and the
/// running integrals.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let series = mixmaster_integrals(traj);
    let mut out = String::from("t,N1,N2,N3,Sp,Sm,Omega,q,I_partial,J_partial\n");
    for (s, &(_, i, j)) in traj.samples.iter().zip(series.partials.iter()) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            s.t,
            s.state.n1,
            s.state.n2,
            s.state.n3,
            s.state.sigma_plus,
            s.state.sigma_minus,
            s.derived.omega,
            s.derived.q,
            i,
            j
        ));
    }
    out
}
