use clap::{Args, Subcommand};
use serde::Serialize;

use shooting::{
    shooting_curve, sturm_permutation_numeric, Nonlinearity, DEFAULT_GRID, DEFAULT_TOL,
};

use crate::{to_json, CmdError, Ctx, OutputFormat};

#[derive(Subcommand, Debug)]
pub enum ShootCmd {
    /// Locate the equilibria and emit the boundary-order permutation
    Sigma {
        #[command(flatten)]
        problem: Problem,
    },
    /// Sample the image of the Neumann axis at x = 1
    Curve {
        #[command(flatten)]
        problem: Problem,
        /// sample count over the window
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct Problem {
    /// symmetric cubic lambda (v - v^3)
    #[arg(long, conflicts_with_all = ["linear", "poly"], allow_hyphen_values = true)]
    cubic: Option<f64>,
    /// linear b v
    #[arg(long, conflicts_with = "poly", allow_hyphen_values = true)]
    linear: Option<f64>,
    /// polynomial coefficients c0,c1,... (f = sum ck v^k)
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// shooting window `lo,hi` for the initial value
    #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
    window: String,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

impl Problem {
    fn nonlinearity(&self) -> Result<Nonlinearity, CmdError> {
        if let Some(lambda) = self.cubic {
            return Ok(Nonlinearity::cubic(lambda));
        }
        if let Some(b) = self.linear {
            return Ok(Nonlinearity::linear(b));
        }
        if let Some(poly) = &self.poly {
            let coeffs = poly
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CmdError::Validation(format!("bad --poly: {e}")))?;
            if coeffs.is_empty() {
                return Err(CmdError::Validation("--poly needs coefficients".into()));
            }
            return Ok(Nonlinearity::polynomial(coeffs));
        }
        Err(CmdError::Validation(
            "pick a nonlinearity: --cubic, --linear or --poly".into(),
        ))
    }

    fn window(&self) -> Result<(f64, f64), CmdError> {
        let parts: Vec<&str> = self.window.split(',').collect();
        if parts.len() != 2 {
            return Err(CmdError::Validation("--window expects `lo,hi`".into()));
        }
        let lo = parts[0]
            .trim()
            .parse::<f64>()
            .map_err(CmdError::validation)?;
        let hi = parts[1]
            .trim()
            .parse::<f64>()
            .map_err(CmdError::validation)?;
        Ok((lo, hi))
    }

    fn grid(&self, ctx: &Ctx) -> Result<usize, CmdError> {
        ctx.config.resolve(self.grid, "shoot.grid", DEFAULT_GRID)
    }

    fn tol(&self, ctx: &Ctx) -> Result<f64, CmdError> {
        ctx.config.resolve(self.tol, "shoot.tol", DEFAULT_TOL)
    }
}

pub fn run(cmd: ShootCmd, ctx: &Ctx) -> Result<String, CmdError> {
    match cmd {
        ShootCmd::Sigma { problem } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Csv])?;
            let f = problem.nonlinearity()?;
            let (sigma, scan) = sturm_permutation_numeric(
                &f,
                problem.window()?,
                problem.grid(ctx)?,
                problem.tol(ctx)?,
            )
            .map_err(CmdError::runtime)?;
            Ok(match format {
                OutputFormat::Csv => {
                    let mut s = String::from("a,v1,w1\n");
                    for r in &scan.roots {
                        s.push_str(&format!("{},{},{}\n", r.a, r.v1, r.w1));
                    }
                    s
                }
                _ => {
                    #[derive(Serialize)]
                    struct Equilibrium {
                        a: f64,
                        v1: f64,
                        w1: f64,
                    }
                    #[derive(Serialize)]
                    struct Report {
                        nonlinearity: String,
                        sigma: String,
                        morse: Vec<i64>,
                        sturm: bool,
                        equilibria: Vec<Equilibrium>,
                        escaped_shots: usize,
                    }
                    to_json(&Report {
                        nonlinearity: f.description().to_string(),
                        sigma: sigma.to_string(),
                        morse: sigma.morse_vector().indices().to_vec(),
                        sturm: meander::is_sturm(&sigma),
                        equilibria: scan
                            .roots
                            .iter()
                            .map(|r| Equilibrium {
                                a: r.a,
                                v1: r.v1,
                                w1: r.w1,
                            })
                            .collect(),
                        escaped_shots: scan.escaped.len(),
                    })
                }
            })
        }
        ShootCmd::Curve { problem, samples } => {
            let format =
                ctx.require_format(&[OutputFormat::Json, OutputFormat::Csv, OutputFormat::Svg])?;
            let f = problem.nonlinearity()?;
            let (lo, hi) = problem.window()?;
            let count = ctx.config.resolve(samples, "shoot.samples", 512usize)?;
            if count < 2 {
                return Err(CmdError::Validation("--samples must be at least 2".into()));
            }
            let grid: Vec<f64> = (0..count)
                .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
                .collect();
            let curve = shooting_curve(&f, &grid, problem.tol(ctx)?);
            Ok(match format {
                OutputFormat::Svg => curve.to_svg(),
                OutputFormat::Csv => curve.to_csv(),
                _ => {
                    #[derive(Serialize)]
                    struct Report {
                        nonlinearity: String,
                        points: Vec<(f64, Option<(f64, f64)>)>,
                    }
                    to_json(&Report {
                        nonlinearity: f.description().to_string(),
                        points: curve.points.clone(),
                    })
                }
            })
        }
    }
}
