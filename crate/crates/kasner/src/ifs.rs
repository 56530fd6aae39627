//! Set-valued iteration for overlapping expanding arcs: one step maps an arc
//! set through every corner chord map restricted to its expanding arc and
//! takes the union.

use crate::arcs::ArcSet;
use crate::map::{arc_image, near_arc, EmanationConfig};

/// One application of the iterated function system to an arc set.
pub fn ifs_step(a: &ArcSet, cfg: &EmanationConfig) -> ArcSet {
    let mut out = ArcSet::empty();
    for corner in 0..3 {
        let restricted = a.intersect(&near_arc(cfg, corner));
        for (lo, hi) in restricted.segments() {
            out = out.union(&arc_image(cfg, corner, lo, hi));
        }
    }
    out
}

/// `n` applications of the IFS.
pub fn ifs_iterate(a: &ArcSet, n: usize, cfg: &EmanationConfig) -> ArcSet {
    let mut cur = a.clone();
    for _ in 0..n {
        cur = ifs_step(&cur, cfg);
    }
    cur
}

/// Iterates until the image covers the whole circle (within `tol` of full
/// measure), returning the number of steps used, or `None` if `max_steps`
/// did not suffice.
pub fn steps_to_full_coverage(
    a: &ArcSet,
    cfg: &EmanationConfig,
    max_steps: usize,
    tol: f64,
) -> Option<usize> {
    let mut cur = a.clone();
    for step in 0..=max_steps {
        if cur.measure() >= std::f64::consts::TAU - tol {
            return Some(step);
        }
        cur = ifs_step(&cur, cfg);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn empty_stays_empty_and_full_stays_full() {
        let cfg = EmanationConfig::gr();
        assert!(ifs_iterate(&ArcSet::empty(), 3, &cfg).is_empty());
        let full = ifs_iterate(&ArcSet::full(), 1, &cfg);
        assert!((full.measure() - TAU).abs() < 1e-9, "{}", full.measure());
    }

    #[test]
    fn monotone_in_the_input() {
        let cfg = EmanationConfig::new(2.4).unwrap();
        let small = ArcSet::arc(0.1, 0.3);
        let big = ArcSet::arc(0.0, 0.8);
        let im_small = ifs_step(&small, &cfg);
        let im_big = ifs_step(&big, &cfg);
        assert!(im_big.contains_set(&im_small));
    }

    #[test]
    fn commutes_with_third_turn_rotation() {
        let cfg = EmanationConfig::new(2.2).unwrap();
        let a = ArcSet::arc(0.2, 0.9);
        let lhs = ifs_step(&a.rotate(TAU / 3.0), &cfg);
        let rhs = ifs_step(&a, &cfg).rotate(TAU / 3.0);
        assert!((lhs.measure() - rhs.measure()).abs() < 1e-9);
        assert!(lhs.contains_set(&rhs) && rhs.contains_set(&lhs));
    }

    #[test]
    fn expansion_grows_small_arcs_to_coverage() {
        let cfg = EmanationConfig::new(2.4).unwrap();
        let seed = ArcSet::centered(0.6, 1.0f64.to_radians());
        let mut prev = seed.measure();
        let mut cur = seed.clone();
        for _ in 0..3 {
            cur = ifs_step(&cur, &cfg);
            assert!(cur.measure() > prev);
            prev = cur.measure();
        }
        let steps = steps_to_full_coverage(&seed, &cfg, 50, 1e-9).expect("must cover");
        assert!(steps > 0 && steps < 30, "steps = {steps}");
    }
}
