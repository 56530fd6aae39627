//! Closed arc sets on the unit circle. Arcs are stored as non-wrapping
//! segments of `[0, 2pi]`, sorted and merged; an arc crossing zero is kept as
//! two seam segments, which every operation treats as circularly adjacent.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::KasnerError;

fn normalize(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t == TAU {
        0.0
    } else {
        t
    }
}

/// Circular distance between two angles, in `[0, pi]`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (normalize(a) - normalize(b)).abs();
    d.min(TAU - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Segment {
    lo: f64,
    hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSet {
    segments: Vec<Segment>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { segments: vec![] }
    }

    pub fn full() -> Self {
        ArcSet {
            segments: vec![Segment { lo: 0.0, hi: TAU }],
        }
    }

    pub fn point(theta: f64) -> Self {
        let t = normalize(theta);
        ArcSet {
            segments: vec![Segment { lo: t, hi: t }],
        }
    }

    /// Counterclockwise arc from `from` to `to` (equal endpoints make a point,
    /// not a full circle).
    pub fn arc(from: f64, to: f64) -> Self {
        let lo = normalize(from);
        let sweep = normalize(to - from);
        let mut set = ArcSet::empty();
        if lo + sweep <= TAU {
            set.segments.push(Segment { lo, hi: lo + sweep });
        } else {
            set.segments.push(Segment { lo, hi: TAU });
            set.segments.push(Segment {
                lo: 0.0,
                hi: lo + sweep - TAU,
            });
        }
        set.normalize();
        set
    }

    /// Arc of the given width centered at `center`.
    pub fn centered(center: f64, width: f64) -> Self {
        if width >= TAU {
            return ArcSet::full();
        }
        ArcSet::arc(center - width / 2.0, center + width / 2.0)
    }

    fn normalize(&mut self) {
        self.segments.retain(|s| s.hi >= s.lo);
        self.segments
            .sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut merged: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for s in self.segments.drain(..) {
            match merged.last_mut() {
                Some(last) if s.lo <= last.hi => last.hi = last.hi.max(s.hi),
                _ => merged.push(s),
            }
        }
        self.segments = merged;
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        let mut out = ArcSet {
            segments: self
                .segments
                .iter()
                .chain(other.segments.iter())
                .copied()
                .collect(),
        };
        out.normalize();
        out
    }

    pub fn intersect(&self, other: &ArcSet) -> ArcSet {
        let mut out = ArcSet::empty();
        for a in &self.segments {
            for b in &other.segments {
                let lo = a.lo.max(b.lo);
                let hi = a.hi.min(b.hi);
                if hi >= lo {
                    out.segments.push(Segment { lo, hi });
                }
            }
        }
        out.normalize();
        out
    }

    pub fn complement(&self) -> ArcSet {
        if self.segments.is_empty() {
            return ArcSet::full();
        }
        let mut out = ArcSet::empty();
        let mut cursor = 0.0;
        for s in &self.segments {
            if s.lo > cursor {
                out.segments.push(Segment {
                    lo: cursor,
                    hi: s.lo,
                });
            }
            cursor = cursor.max(s.hi);
        }
        if cursor < TAU {
            out.segments.push(Segment {
                lo: cursor,
                hi: TAU,
            });
        }
        out.normalize();
        out
    }

    pub fn rotate(&self, delta: f64) -> ArcSet {
        let mut out = ArcSet::empty();
        for s in &self.segments {
            out = out.union(&ArcSet::arc(s.lo + delta, s.hi + delta));
            if s.lo == s.hi {
                out = out.union(&ArcSet::point(s.lo + delta));
            }
        }
        out
    }

    pub fn measure(&self) -> f64 {
        self.segments.iter().map(|s| s.hi - s.lo).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn contains(&self, theta: f64) -> bool {
        let t = normalize(theta);
        self.segments
            .iter()
            .any(|s| (s.lo <= t && t <= s.hi) || (s.hi == TAU && t == 0.0))
    }

    pub fn contains_set(&self, other: &ArcSet) -> bool {
        (other.measure() - self.intersect(other).measure()).abs() < 1e-12
    }

    /// `(lo, hi)` pairs of the stored non-wrapping segments.
    pub fn segments(&self) -> Vec<(f64, f64)> {
        self.segments.iter().map(|s| (s.lo, s.hi)).collect()
    }

    /// Maximal circular gaps `(start, sweep)` of the set.
    fn circular_gaps(&self) -> Vec<(f64, f64)> {
        if self.segments.is_empty() || self.measure() >= TAU {
            return vec![];
        }
        let k = self.segments.len();
        let mut gaps = Vec::new();
        for i in 0..k {
            let end = self.segments[i].hi;
            let next_start = if i + 1 < k {
                self.segments[i + 1].lo
            } else {
                self.segments[0].lo + TAU
            };
            let sweep = next_start - end;
            if sweep > 0.0 {
                gaps.push((normalize(end), sweep));
            }
        }
        gaps
    }

    /// Circular distance from a point to the set.
    pub fn distance_to(&self, theta: f64) -> f64 {
        if self.contains(theta) {
            return 0.0;
        }
        self.segments
            .iter()
            .flat_map(|s| [s.lo, s.hi])
            .map(|e| circle_distance(theta, e))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Hausdorff distance between nonempty arc sets in the circular arc-length
/// metric. The supremum of the distance-to-set function is attained at set
/// endpoints or at gap midpoints of the other set, so the computation is
/// exact.
pub fn hausdorff_distance(a: &ArcSet, b: &ArcSet) -> Result<f64, KasnerError> {
    if a.is_empty() || b.is_empty() {
        return Err(KasnerError::EmptyInput);
    }
    let directed = |from: &ArcSet, to: &ArcSet| -> f64 {
        let mut best = 0.0f64;
        for (lo, hi) in from.segments() {
            best = best.max(to.distance_to(lo)).max(to.distance_to(hi));
        }
        for (start, sweep) in to.circular_gaps() {
            let mid = normalize(start + sweep / 2.0);
            if from.contains(mid) {
                best = best.max(to.distance_to(mid));
            }
        }
        best
    };
    Ok(directed(a, b).max(directed(b, a)))
}
