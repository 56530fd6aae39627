//! The chord map on the Kasner circle: heteroclinic transitions project to
//! straight lines through three emanation points at distance `d` from the
//! center, one per expanding arc. `d = 2` is the relativistic case where the
//! circle is inscribed in the emanation triangle; `d < 2` opens stable gaps
//! between the expanding arcs and `d > 2` makes them overlap.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arcs::ArcSet;
use crate::KasnerError;

/// Angular tolerance for recognizing a tangency point.
pub const TANGENCY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmanationConfig {
    d: f64,
}

impl EmanationConfig {
    /// General relativity: emanation points at distance 2, tangent to the
    /// circle at the Taub points.
    pub const GR_DISTANCE: f64 = 2.0;

    pub fn new(d: f64) -> Result<Self, KasnerError> {
        if d <= 1.0 || !d.is_finite() {
            return Err(KasnerError::InvalidDistance(d));
        }
        Ok(EmanationConfig { d })
    }

    pub fn gr() -> Self {
        EmanationConfig {
            d: Self::GR_DISTANCE,
        }
    }

    pub fn distance(&self) -> f64 {
        self.d
    }

    pub const CORNER_ANGLES: [f64; 3] = [0.0, TAU / 3.0, 2.0 * TAU / 3.0];

    pub fn corner_angle(&self, corner: usize) -> f64 {
        Self::CORNER_ANGLES[corner]
    }

    pub fn corner_point(&self, corner: usize) -> (f64, f64) {
        let phi = self.corner_angle(corner);
        (self.d * phi.cos(), self.d * phi.sin())
    }

    /// Half-width of each expanding arc: the tangent lines from an emanation
    /// point touch the circle at `arccos(1/d)` to either side.
    pub fn half_width(&self) -> f64 {
        (1.0 / self.d).acos()
    }
}

/// The three degenerate Kasner points, `(Sigma_+ + i Sigma_-)^3 = -1`.
pub fn taub_points() -> [f64; 3] {
    [TAU / 6.0, TAU / 2.0, 5.0 * TAU / 6.0]
}

/// Expanding arc of one emanation corner.
pub fn near_arc(cfg: &EmanationConfig, corner: usize) -> ArcSet {
    ArcSet::centered(cfg.corner_angle(corner), 2.0 * cfg.half_width())
}

pub fn near_arcs(cfg: &EmanationConfig) -> [ArcSet; 3] {
    [near_arc(cfg, 0), near_arc(cfg, 1), near_arc(cfg, 2)]
}

pub fn near_arc_union(cfg: &EmanationConfig) -> ArcSet {
    near_arcs(cfg)
        .iter()
        .fold(ArcSet::empty(), |acc, a| acc.union(a))
}

/// Arcs of stable fixed points where no transition leaves: the complement of
/// the expanding arcs. Empty exactly when `d >= 2`.
pub fn stable_arcs(cfg: &EmanationConfig) -> ArcSet {
    near_arc_union(cfg).complement()
}

/// Signed offset of `theta` from the corner axis, in `(-pi, pi]`.
fn corner_offset(cfg: &EmanationConfig, corner: usize, theta: f64) -> f64 {
    let raw = (theta - cfg.corner_angle(corner)).rem_euclid(TAU);
    if raw > TAU / 2.0 {
        raw - TAU
    } else {
        raw
    }
}

/// Second intersection of the line through the corner and `e^{i theta}` with
/// the unit circle. Total as a formula; at a tangency it returns `theta`.
pub fn chord_point(cfg: &EmanationConfig, corner: usize, theta: f64) -> f64 {
    let p = (theta.cos(), theta.sin());
    let q = cfg.corner_point(corner);
    let v = (q.0 - p.0, q.1 - p.1);
    let s = -2.0 * (p.0 * v.0 + p.1 * v.1) / (v.0 * v.0 + v.1 * v.1);
    let x = (p.0 + s * v.0, p.1 + s * v.1);
    x.1.atan2(x.0).rem_euclid(TAU)
}

/// All chord images of `theta`: one per expanding arc containing it
/// strictly. 0, 1 or 2 images depending on gaps and overlaps.
pub fn kasner_images(theta: f64, cfg: &EmanationConfig) -> Result<Vec<(f64, usize)>, KasnerError> {
    let w = cfg.half_width();
    let mut out = Vec::new();
    for corner in 0..3 {
        let offset = corner_offset(cfg, corner, theta);
        if (offset.abs() - w).abs() <= TANGENCY_EPS {
            return Err(KasnerError::TangencyPoint { theta });
        }
        if offset.abs() < w {
            out.push((chord_point(cfg, corner, theta), corner));
        }
    }
    Ok(out)
}

/// Image of a counterclockwise sub-arc `[from, to]` of one expanding arc.
/// The chord map reverses orientation, so the image runs from the image of
/// `to` to the image of `from`.
pub fn arc_image(cfg: &EmanationConfig, corner: usize, from: f64, to: f64) -> ArcSet {
    let a = chord_point(cfg, corner, from);
    let b = chord_point(cfg, corner, to);
    if from == to {
        return ArcSet::point(a);
    }
    ArcSet::arc(b, a)
}

/// Multi-image resolution for `iterate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Policy {
    /// Refuse to choose: any overlap hit is an error.
    Error,
    /// Deterministic choice of the smallest corner index.
    Lexicographic,
    /// Uniform choice from a seeded stream.
    SeededRandom(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub theta: f64,
    /// Corner used to reach this angle; `None` on the initial point.
    pub corner: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    MaxIterations,
    /// The angle has no expanding arc over it; the chain ends here.
    StableArc,
    /// The angle hit an arc endpoint where the map is undefined.
    TangencyHit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Itinerary {
    pub steps: Vec<Step>,
    pub termination: Termination,
}

impl Itinerary {
    pub fn corners(&self) -> Vec<usize> {
        self.steps.iter().filter_map(|s| s.corner).collect()
    }

    pub fn terminated_in_stable_arc(&self) -> bool {
        self.termination == Termination::StableArc
    }
}

pub fn iterate(
    theta0: f64,
    n: usize,
    cfg: &EmanationConfig,
    policy: Policy,
) -> Result<Itinerary, KasnerError> {
    let mut rng = match policy {
        Policy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut steps = vec![Step {
        theta: theta0.rem_euclid(TAU),
        corner: None,
    }];
    let mut termination = Termination::MaxIterations;
    for _ in 0..n {
        let theta = steps.last().unwrap().theta;
        let images = match kasner_images(theta, cfg) {
            Ok(images) => images,
            Err(KasnerError::TangencyPoint { .. }) => {
                termination = Termination::TangencyHit;
                break;
            }
            Err(e) => return Err(e),
        };
        let chosen = match images.len() {
            0 => {
                termination = Termination::StableArc;
                break;
            }
            1 => images[0],
            _ => match (&policy, rng.as_mut()) {
                (Policy::Error, _) => {
                    return Err(KasnerError::MultiValued {
                        theta,
                        count: images.len(),
                    })
                }
                (Policy::Lexicographic, _) => images[0],
                (Policy::SeededRandom(_), Some(rng)) => images[rng.random_range(0..images.len())],
                (Policy::SeededRandom(_), None) => unreachable!(),
            },
        };
        steps.push(Step {
            theta: chosen.0,
            corner: Some(chosen.1),
        });
    }
    Ok(Itinerary { steps, termination })
}

/// An era: maximal run of transitions using only two expanding arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Era {
    /// Index into the transition (corner) sequence.
    pub start: usize,
    pub len: usize,
    pub corners: (usize, usize),
}

pub fn eras(itinerary: &Itinerary) -> Vec<Era> {
    eras_of_corners(&itinerary.corners())
}

pub fn eras_of_corners(corners: &[usize]) -> Vec<Era> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < corners.len() {
        let a = corners[start];
        if start + 1 >= corners.len() {
            out.push(Era {
                start,
                len: 1,
                corners: (a, a),
            });
            break;
        }
        let b = corners[start + 1];
        let mut len = 2;
        while start + len < corners.len() {
            let expected = if len % 2 == 0 { a } else { b };
            if corners[start + len] != expected {
                break;
            }
            len += 1;
        }
        out.push(Era {
            start,
            len,
            corners: (a.min(b), a.max(b)),
        });
        start += len;
    }
    out
}
