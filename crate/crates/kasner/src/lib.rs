//! Discrete Kasner dynamics on the circle of self-similar vacuum states: the
//! chord map induced by heteroclinic transitions, its one-parameter family of
//! geometries (inscribed, gapped, overlapping), era statistics, and the
//! set-valued iteration with Hausdorff distance for the multivalued regime.

use thiserror::Error;

pub mod arcs;
pub mod ifs;
pub mod map;
pub mod stats;
pub mod svg;

pub use arcs::{circle_distance, hausdorff_distance, ArcSet};
pub use ifs::{ifs_iterate, ifs_step, steps_to_full_coverage};
pub use map::{
    arc_image, chord_point, eras, eras_of_corners, iterate, kasner_images, near_arc,
    near_arc_union, near_arcs, stable_arcs, taub_points, EmanationConfig, Era, Itinerary, Policy,
    Step, Termination, TANGENCY_EPS,
};
pub use stats::{termination_stats, termination_stats_jobs, TerminationStats};
pub use svg::scene_svg;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum KasnerError {
    #[error("emanation distance {0} must be finite and greater than 1")]
    InvalidDistance(f64),
    #[error("angle {theta} is a tangency point; the chord map is undefined there")]
    TangencyPoint { theta: f64 },
    #[error("angle {theta} has {count} images; pick a resolution policy")]
    MultiValued { theta: f64, count: usize },
    #[error("arc set input must be nonempty")]
    EmptyInput,
}
