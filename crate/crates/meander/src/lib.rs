//! Meander combinatorics: permutations as arch diagrams, the Sturm predicate
//! (meander + dissipative + Morse), enumeration of Sturm permutations, and
//! closed-meander component calculus with the doubling construction.

use thiserror::Error;

pub mod closed;
pub mod enumerate;
pub mod open;
pub mod perm;
pub mod svg;

pub use closed::{close_open_meander, open_to_rainbow, ClosedMeander};
pub use enumerate::{
    enumerate_sturm, enumerate_sturm_brute_force, enumerate_sturm_brute_force_bounded,
    BRUTE_FORCE_BOUND,
};
pub use open::{
    candidate_arches, find_crossing_pairwise, is_meander, is_noncrossing_stack, is_sturm,
    open_meander_arches, ArchFamily, OpenMeander,
};
pub use perm::{parse_permutation, MorseVector, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeanderError {
    #[error("empty permutation")]
    Empty,
    #[error("not a bijection on 1..={n}: {reason}")]
    NotABijection { n: usize, reason: String },
    #[error("invalid token `{0}` in permutation")]
    InvalidToken(String),
    #[error("crossing count {n} has the wrong parity for this construction")]
    ParityViolation { n: usize },
    #[error("arches {first:?} and {second:?} cross")]
    ArchCrossing {
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("permutation is not dissipative")]
    NotDissipative,
    #[error("not a perfect matching: {reason}")]
    NotAMatching { reason: String },
    #[error("order {n} exceeds the brute-force bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
}
