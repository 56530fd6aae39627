//! Adaptive Dormand–Prince 5(4) integrator for small fixed-size ODE systems.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum StepError {
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    #[error("non-finite state encountered at t = {t}")]
    NonFinite { t: f64 },
    #[error("step budget of {max_steps} exhausted at t = {t}")]
    StepBudgetExhausted { t: f64, max_steps: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on |h|. Zero or negative disables the bound.
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_step: 0.0,
            max_steps: 50_000_000,
        }
    }
}

/// Outcome of an integration run.
#[derive(Debug, Clone, Copy)]
pub struct Outcome<const D: usize> {
    pub t: f64,
    pub y: [f64; D],
    /// True if the observer requested an early stop.
    pub stopped: bool,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

// Dormand-Prince 5(4) tableau (FSAL).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th-order solution weights coincide with the last tableau row (FSAL).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `y' = f(t, y)` from `t0` to `t_end` (either direction).
///
/// `observe` is called once at `t0` and after every accepted step; returning
/// `false` stops the run early with `stopped = true`.
pub fn integrate<const D: usize, F, O>(
    mut f: F,
    t0: f64,
    t_end: f64,
    y0: [f64; D],
    opts: &Options,
    mut observe: O,
) -> Result<Outcome<D>, StepError>
where
    F: FnMut(f64, &[f64; D]) -> [f64; D],
    O: FnMut(f64, &[f64; D]) -> bool,
{
    let span = t_end - t0;
    if span == 0.0 {
        observe(t0, &y0);
        return Ok(Outcome {
            t: t0,
            y: y0,
            stopped: false,
            steps_accepted: 0,
            steps_rejected: 0,
        });
    }
    let dir = span.signum();
    let mut t = t0;
    let mut y = y0;
    let mut k0 = f(t, &y);

    let mut h = initial_step(span, opts);
    let h_min = span.abs() * f64::EPSILON * 16.0;
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    if !observe(t, &y) {
        return Ok(Outcome {
            t,
            y,
            stopped: true,
            steps_accepted: 0,
            steps_rejected: 0,
        });
    }

    while (t_end - t) * dir > 0.0 {
        if accepted + rejected >= opts.max_steps {
            return Err(StepError::StepBudgetExhausted {
                t,
                max_steps: opts.max_steps,
            });
        }
        if h.abs() < h_min {
            return Err(StepError::StepSizeUnderflow { t });
        }
        // Land exactly on t_end.
        if (t + h - t_end) * dir > 0.0 {
            h = t_end - t;
        }

        let mut k = [[0.0; D]; 7];
        k[0] = k0;
        for stage in 1..7 {
            let mut ys = y;
            for (col, ks) in k.iter().enumerate().take(stage) {
                let a = A[stage][col];
                if a != 0.0 {
                    for i in 0..D {
                        ys[i] += h * a * ks[i];
                    }
                }
            }
            k[stage] = f(t + C[stage] * h, &ys);
        }

        let mut y5 = y;
        let mut err = [0.0; D];
        for (stage, ks) in k.iter().enumerate() {
            let db = B5[stage] - B4[stage];
            for i in 0..D {
                if B5[stage] != 0.0 {
                    y5[i] += h * B5[stage] * ks[i];
                }
                if db != 0.0 {
                    err[i] += h * db * ks[i];
                }
            }
        }

        let mut err_norm = 0.0;
        let mut finite = true;
        for i in 0..D {
            if !y5[i].is_finite() {
                finite = false;
                break;
            }
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            let e = err[i] / scale;
            err_norm += e * e;
        }
        err_norm = (err_norm / D as f64).sqrt();

        if !finite {
            // Retry with a smaller step before giving up.
            h *= 0.25;
            rejected += 1;
            if h.abs() < h_min {
                return Err(StepError::NonFinite { t });
            }
            continue;
        }

        if err_norm <= 1.0 {
            t += h;
            y = y5;
            k0 = k[6]; // FSAL
            accepted += 1;
            if !observe(t, &y) {
                return Ok(Outcome {
                    t,
                    y,
                    stopped: true,
                    steps_accepted: accepted,
                    steps_rejected: rejected,
                });
            }
        } else {
            rejected += 1;
        }

        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if opts.max_step > 0.0 && h.abs() > opts.max_step {
            h = opts.max_step * dir;
        }
    }

    Ok(Outcome {
        t,
        y,
        stopped: false,
        steps_accepted: accepted,
        steps_rejected: rejected,
    })
}

fn initial_step(span: f64, opts: &Options) -> f64 {
    let mut h = span.abs() * 1e-4;
    if opts.max_step > 0.0 {
        h = h.min(opts.max_step);
    }
    h.max(1e-10) * span.signum()
}
