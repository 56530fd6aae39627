//! Class A Bianchi cosmology in Wainwright–Hsu variables: the
//! expansion-reduced right-hand side and its derived quantities, invariant
//! subsets (Kasner circle, Taub line, vacuum boundary), adaptive integration,
//! and the running Mixmaster integrals toward the big-bang limit.

use thiserror::Error;

pub mod integrals;
pub mod integrate;
pub mod state;

pub use integrals::{mixmaster_integrals, trajectory_csv, MixmasterSeries};
pub use integrate::{integrate, Direction, IntegrationConfig, Sample, Trajectory};
pub use state::{
    classify_type, derived, kasner_angle, rhs, BianchiClass, BianchiState, DerivedQuantities,
    FluidParameter,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BianchiError {
    #[error("fluid parameter gamma = {0} outside [0, 2)")]
    InvalidGamma(f64),
    #[error("time span {0} must be positive")]
    InvalidSpan(f64),
    #[error("tolerances must be positive")]
    InvalidTolerance,
    #[error("initial state is not finite")]
    NonFiniteState,
    #[error(transparent)]
    Integrator(dopri::StepError),
}
