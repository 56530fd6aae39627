//! Shooting for the Neumann equilibrium problem `v'' + f(v) = 0` on the unit
//! interval: propagate the horizontal axis `{v_x = 0}` from `x = 0` to
//! `x = 1`, locate the equilibria as axis crossings, and read off the
//! boundary-order permutation.

use dopri::{integrate, Options, StepError};
use meander::{is_sturm, Permutation};
use thiserror::Error;

pub const DEFAULT_ESCAPE_BOUND: f64 = 1e6;
pub const DEFAULT_GRID: usize = 2048;
pub const DEFAULT_TOL: f64 = 1e-10;
const BISECTION_HALVINGS: usize = 60;
const HYPERBOLICITY_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShootError {
    #[error("shot from a = {a} escaped before x = 1")]
    Escaped { a: f64 },
    #[error("integration failed at a = {a}: {source}")]
    Integrator { a: f64, source: StepError },
    #[error("root grid needs at least 2 points, got {0}")]
    InvalidGrid(usize),
    #[error("window [{lo}, {hi}] is empty")]
    EmptyWindow { lo: f64, hi: f64 },
    #[error("equilibrium near a = {a} looks non-hyperbolic (|dv_x(1)/da| = {slope:.3e})")]
    NonHyperbolicSuspected { a: f64, slope: f64 },
    #[error("no equilibria found in the window")]
    NoEquilibria,
    #[error("boundary values at x = 1 tie within resolution: {v1a} vs {v1b}")]
    TieAtBoundary { v1a: f64, v1b: f64 },
    #[error("numeric permutation {sigma} violates the Sturm property")]
    SturmViolation { sigma: String },
}

/// Scalar nonlinearity with an optional derivative and a human tag.
pub struct Nonlinearity {
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    derivative: Option<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
    description: String,
}

impl Nonlinearity {
    pub fn from_fn(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        description: impl Into<String>,
    ) -> Self {
        Nonlinearity {
            f: Box::new(f),
            derivative: None,
            description: description.into(),
        }
    }

    /// `f(v) = sum coeffs[k] v^k`.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let description = format!(
            "poly[{}]",
            coeffs
                .iter()
                .map(|c| format!("{c}"))
                .collect::<Vec<_>>()
                .join(",")
        );
        let dcoeffs: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        let horner = |cs: Vec<f64>| move |v: f64| cs.iter().rev().fold(0.0, |acc, c| acc * v + c);
        Nonlinearity {
            f: Box::new(horner(coeffs)),
            derivative: Some(Box::new(horner(dcoeffs))),
            description,
        }
    }

    /// Symmetric cubic `f(v) = lambda (v - v^3)`.
    pub fn cubic(lambda: f64) -> Self {
        let mut n = Nonlinearity::polynomial(vec![0.0, lambda, 0.0, -lambda]);
        n.description = format!("cubic[{lambda}]");
        n
    }

    /// `f(v) = b v`.
    pub fn linear(b: f64) -> Self {
        let mut n = Nonlinearity::polynomial(vec![0.0, b]);
        n.description = format!("linear[{b}]");
        n
    }

    pub fn eval(&self, v: f64) -> f64 {
        (self.f)(v)
    }

    pub fn derivative(&self, v: f64) -> Option<f64> {
        self.derivative.as_ref().map(|d| d(v))
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

/// End state of one shot: initial value and the propagated pair at `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootOutcome {
    pub a: f64,
    pub v1: f64,
    pub w1: f64,
}

/// Integrates one shot with `v(0) = a`, `v'(0) = 0`.
pub fn shoot(f: &Nonlinearity, a: f64, tol: f64) -> Result<ShootOutcome, ShootError> {
    shoot_bounded(f, a, tol, DEFAULT_ESCAPE_BOUND)
}

pub fn shoot_bounded(
    f: &Nonlinearity,
    a: f64,
    tol: f64,
    escape_bound: f64,
) -> Result<ShootOutcome, ShootError> {
    match probe(f, a, tol, escape_bound)? {
        Probe {
            outcome: Some(out), ..
        } => Ok(out),
        _ => Err(ShootError::Escaped { a }),
    }
}

/// One shot, keeping escaped runs as a blow-up sign instead of an error so
/// roots on the boundary of the escape region stay detectable.
#[derive(Debug, Clone, Copy)]
struct Probe {
    a: f64,
    /// Present when the shot reached x = 1.
    outcome: Option<ShootOutcome>,
    /// sign of v_x(1) for finite shots, blow-up direction otherwise
    sign: f64,
}

fn probe(f: &Nonlinearity, a: f64, tol: f64, escape_bound: f64) -> Result<Probe, ShootError> {
    let opts = Options {
        rel_tol: tol,
        abs_tol: tol * 1e-2,
        ..Options::default()
    };
    let out = integrate(
        |_x, y: &[f64; 2]| [y[1], -f.eval(y[0])],
        0.0,
        1.0,
        [a, 0.0],
        &opts,
        |_x, y| y[0].abs() + y[1].abs() <= escape_bound,
    )
    .map_err(|source| ShootError::Integrator { a, source })?;
    if out.stopped {
        let sign = if out.y[1] != 0.0 { out.y[1] } else { out.y[0] }.signum();
        return Ok(Probe {
            a,
            outcome: None,
            sign,
        });
    }
    Ok(Probe {
        a,
        outcome: Some(ShootOutcome {
            a,
            v1: out.y[0],
            w1: out.y[1],
        }),
        sign: out.y[1].signum(),
    })
}

/// Root scan of `a -> v_x(1; a)` over the window.
#[derive(Debug, Clone)]
pub struct EquilibriumScan {
    /// Equilibria sorted by `a`, i.e. by boundary order at `x = 0`.
    pub roots: Vec<ShootOutcome>,
    /// Grid values whose shots escaped.
    pub escaped: Vec<f64>,
}

pub fn find_equilibria(
    f: &Nonlinearity,
    window: (f64, f64),
    grid: usize,
    tol: f64,
) -> Result<EquilibriumScan, ShootError> {
    if grid < 2 {
        return Err(ShootError::InvalidGrid(grid));
    }
    let (lo, hi) = window;
    if lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(ShootError::EmptyWindow { lo, hi });
    }
    let mut escaped = Vec::new();
    let mut samples: Vec<Probe> = Vec::with_capacity(grid);
    let step = (hi - lo) / (grid - 1) as f64;
    for k in 0..grid {
        let a = lo + k as f64 * step;
        let p = probe(f, a, tol, DEFAULT_ESCAPE_BOUND)?;
        if p.outcome.is_none() {
            escaped.push(a);
        }
        samples.push(p);
    }

    let mut roots: Vec<ShootOutcome> = Vec::new();
    let push_root = |out: ShootOutcome, roots: &mut Vec<ShootOutcome>| {
        let min_gap = step * 1e-6;
        if roots.last().is_none_or(|r| (out.a - r.a).abs() > min_gap) {
            roots.push(out);
        }
    };
    for k in 0..grid {
        let s = samples[k];
        if let Some(out) = s.outcome {
            if out.w1 == 0.0 {
                push_root(out, &mut roots);
                continue;
            }
        }
        if k + 1 >= grid {
            break;
        }
        let t = samples[k + 1];
        // a bracket needs opposite blow-up/boundary signs and a finite side
        if s.sign == t.sign || s.sign == 0.0 || t.sign == 0.0 {
            continue;
        }
        if s.outcome.is_none() && t.outcome.is_none() {
            continue;
        }
        if let Some(root) = bisect(f, s, t, tol)? {
            push_root(root, &mut roots);
        }
    }
    if roots.is_empty() {
        return Ok(EquilibriumScan { roots, escaped });
    }

    // transversality of the shooting curve at each axis crossing
    for root in &roots {
        let h = step * 1e-3;
        let left = shoot(f, root.a - h, tol).ok();
        let right = shoot(f, root.a + h, tol).ok();
        let slope = match (left, right) {
            (Some(l), Some(r)) => Some((r.w1 - l.w1) / (2.0 * h)),
            (Some(l), None) => Some((root.w1 - l.w1) / h),
            (None, Some(r)) => Some((r.w1 - root.w1) / h),
            (None, None) => None,
        };
        if let Some(slope) = slope {
            if slope.abs() < HYPERBOLICITY_THRESHOLD {
                return Err(ShootError::NonHyperbolicSuspected { a: root.a, slope });
            }
        }
    }
    Ok(EquilibriumScan { roots, escaped })
}

fn bisect(
    f: &Nonlinearity,
    mut neg: Probe,
    mut pos: Probe,
    tol: f64,
) -> Result<Option<ShootOutcome>, ShootError> {
    if neg.sign > 0.0 {
        std::mem::swap(&mut neg, &mut pos);
    }
    let mut best: Option<ShootOutcome> = [neg, pos]
        .iter()
        .filter_map(|p| p.outcome)
        .min_by(|a, b| a.w1.abs().total_cmp(&b.w1.abs()));
    for _ in 0..BISECTION_HALVINGS {
        if let Some(b) = best {
            if b.w1.abs() <= tol {
                break;
            }
        }
        let mid = probe(f, 0.5 * (neg.a + pos.a), tol, DEFAULT_ESCAPE_BOUND)?;
        if let Some(out) = mid.outcome {
            if best.is_none_or(|b| out.w1.abs() < b.w1.abs()) {
                best = Some(out);
            }
        }
        if mid.sign <= 0.0 {
            neg = mid;
        } else {
            pos = mid;
        }
    }
    Ok(best)
}

/// Boundary-order permutation of the equilibria: labels sorted by `v(0)`,
/// image read in increasing `v(1)` order.
pub fn sturm_permutation_numeric(
    f: &Nonlinearity,
    window: (f64, f64),
    grid: usize,
    tol: f64,
) -> Result<(Permutation, EquilibriumScan), ShootError> {
    let scan = find_equilibria(f, window, grid, tol)?;
    if scan.roots.is_empty() {
        return Err(ShootError::NoEquilibria);
    }
    let n = scan.roots.len();
    let mut by_v1: Vec<usize> = (0..n).collect();
    by_v1.sort_by(|&i, &j| scan.roots[i].v1.total_cmp(&scan.roots[j].v1));

    let resolution = (tol * 10.0).max(1e-12);
    for pair in by_v1.windows(2) {
        let (x, y) = (scan.roots[pair[0]].v1, scan.roots[pair[1]].v1);
        if (y - x).abs() < resolution {
            return Err(ShootError::TieAtBoundary { v1a: x, v1b: y });
        }
    }

    let image: Vec<usize> = by_v1.iter().map(|&i| i + 1).collect();
    let sigma = Permutation::from_image(image).expect("ranking is a bijection");
    if !is_sturm(&sigma) {
        return Err(ShootError::SturmViolation {
            sigma: sigma.to_string(),
        });
    }
    Ok((sigma, scan))
}

/// Sampled image of the Neumann axis at `x = 1`; `None` marks escaped shots.
#[derive(Debug, Clone)]
pub struct ShootingCurve {
    pub points: Vec<(f64, Option<(f64, f64)>)>,
}

pub fn shooting_curve(f: &Nonlinearity, a_grid: &[f64], tol: f64) -> ShootingCurve {
    let points = a_grid
        .iter()
        .map(|&a| match shoot(f, a, tol) {
            Ok(out) => (a, Some((out.v1, out.w1))),
            Err(_) => (a, None),
        })
        .collect();
    ShootingCurve { points }
}

impl ShootingCurve {
    /// CSV rows `a,v1,w1,escaped`, empty fields for escaped shots.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,v1,w1,escaped\n");
        for &(a, p) in &self.points {
            match p {
                Some((v1, w1)) => s.push_str(&format!("{a},{v1},{w1},false\n")),
                None => s.push_str(&format!("{a},,,true\n")),
            }
        }
        s
    }

    /// Deterministic SVG of the curve in the `(v, v_x)` plane at `x = 1`,
    /// with the road axis `v_x = 0` drawn horizontally.
    pub fn to_svg(&self) -> String {
        let finite: Vec<(f64, f64)> = self.points.iter().filter_map(|&(_, p)| p).collect();
        let (mut vmin, mut vmax, mut wmin, mut wmax) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
        for &(v, w) in &finite {
            vmin = vmin.min(v);
            vmax = vmax.max(v);
            wmin = wmin.min(w);
            wmax = wmax.max(w);
        }
        let (width, height) = (640.0, 480.0);
        let pad = 20.0;
        let fx = |v: f64| pad + (v - vmin) / (vmax - vmin) * (width - 2.0 * pad);
        let fy = |w: f64| height - pad - (w - wmin) / (wmax - wmin) * (height - 2.0 * pad);
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
        );
        s.push_str(&format!(
            "  <line x1=\"0\" y1=\"{0:.2}\" x2=\"{width:.2}\" y2=\"{0:.2}\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
            fy(0.0)
        ));
        // split the polyline at escapes
        let mut runs: Vec<Vec<String>> = vec![Vec::new()];
        for &(_, p) in &self.points {
            match p {
                Some((v, w)) => runs
                    .last_mut()
                    .unwrap()
                    .push(format!("{:.2},{:.2}", fx(v), fy(w))),
                None => {
                    if !runs.last().unwrap().is_empty() {
                        runs.push(Vec::new());
                    }
                }
            }
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            s.push_str(&format!(
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n",
                run.join(" ")
            ));
        }
        s.push_str("</svg>\n");
        s
    }
}
