use clap::{Args, Subcommand};
use serde::Serialize;

use bianchi::{
    classify_type, integrate, kasner_angle, mixmaster_integrals, trajectory_csv, BianchiState,
    Direction, FluidParameter, IntegrationConfig, Trajectory,
};

use crate::{to_json, CmdError, Ctx, OutputFormat};

#[derive(Subcommand, Debug)]
pub enum BianchiCmd {
    /// Integrate the expansion-reduced system
    Integrate {
        #[command(flatten)]
        setup: Setup,
    },
    /// Running Mixmaster integrals along a trajectory
    Integrals {
        #[command(flatten)]
        setup: Setup,
    },
}

#[derive(Args, Debug)]
pub struct Setup {
    /// initial state `N1,N2,N3,Sigma+,Sigma-`
    #[arg(long, allow_hyphen_values = true)]
    state: String,
    /// perfect-fluid coefficient, accepts `4/3` style fractions
    #[arg(long, default_value = "4/3")]
    gamma: String,
    /// integrate toward the big-bang limit
    #[arg(long)]
    backward: bool,
    #[arg(long, default_value_t = 50.0)]
    tspan: f64,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    max_step: Option<f64>,
}

fn parse_fraction(text: &str) -> Result<f64, CmdError> {
    match text.split_once('/') {
        Some((a, b)) => {
            let num = a.trim().parse::<f64>().map_err(CmdError::validation)?;
            let den = b.trim().parse::<f64>().map_err(CmdError::validation)?;
            if den == 0.0 {
                return Err(CmdError::Validation("zero denominator".into()));
            }
            Ok(num / den)
        }
        None => text.trim().parse::<f64>().map_err(CmdError::validation),
    }
}

impl Setup {
    fn trajectory(&self, ctx: &Ctx) -> Result<Trajectory, CmdError> {
        let values = self
            .state
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| CmdError::Validation(format!("bad --state: {e}")))?;
        if values.len() != 5 {
            return Err(CmdError::Validation(
                "--state expects 5 values N1,N2,N3,Sigma+,Sigma-".into(),
            ));
        }
        let s0 = BianchiState::new(values[0], values[1], values[2], values[3], values[4]);
        let fluid =
            FluidParameter::new(parse_fraction(&self.gamma)?).map_err(CmdError::validation)?;
        let defaults = IntegrationConfig::default();
        let cfg = IntegrationConfig {
            rel_tol: ctx
                .config
                .resolve(self.rel_tol, "bianchi.rel_tol", defaults.rel_tol)?,
            abs_tol: ctx
                .config
                .resolve(self.abs_tol, "bianchi.abs_tol", defaults.abs_tol)?,
            max_step: ctx
                .config
                .resolve(self.max_step, "bianchi.max_step", defaults.max_step)?,
            max_steps: defaults.max_steps,
        };
        let direction = if self.backward {
            Direction::Backward
        } else {
            Direction::Forward
        };
        integrate(s0, fluid, direction, self.tspan, &cfg).map_err(CmdError::runtime)
    }
}

pub fn run(cmd: BianchiCmd, ctx: &Ctx) -> Result<String, CmdError> {
    match cmd {
        BianchiCmd::Integrate { setup } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Csv])?;
            let traj = setup.trajectory(ctx)?;
            Ok(match format {
                OutputFormat::Csv => trajectory_csv(&traj),
                _ => {
                    let last = traj.samples.last().expect("nonempty trajectory");
                    let (theta, distance) = kasner_angle(&last.state);
                    #[derive(Serialize)]
                    struct Report {
                        class: String,
                        samples: usize,
                        sign_violations: usize,
                        final_t: f64,
                        final_state: BianchiState,
                        final_omega: f64,
                        final_kasner_angle_deg: f64,
                        final_kasner_distance: f64,
                    }
                    to_json(&Report {
                        class: classify_type(&traj.samples[0].state).to_string(),
                        samples: traj.samples.len(),
                        sign_violations: traj.sign_violations,
                        final_t: last.t,
                        final_state: last.state,
                        final_omega: last.derived.omega,
                        final_kasner_angle_deg: theta.to_degrees(),
                        final_kasner_distance: distance,
                    })
                }
            })
        }
        BianchiCmd::Integrals { setup } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Csv])?;
            let traj = setup.trajectory(ctx)?;
            let series = mixmaster_integrals(&traj);
            Ok(match format {
                OutputFormat::Csv => {
                    let mut s = String::from("t,I_partial,J_partial\n");
                    for (t, i, j) in &series.partials {
                        s.push_str(&format!("{t},{i},{j}\n"));
                    }
                    s
                }
                _ => {
                    #[derive(Serialize)]
                    struct Report {
                        class: String,
                        total_i: f64,
                        total_j: f64,
                        samples: usize,
                    }
                    to_json(&Report {
                        class: classify_type(&traj.samples[0].state).to_string(),
                        total_i: series.total_i(),
                        total_j: series.total_j(),
                        samples: traj.samples.len(),
                    })
                }
            })
        }
    }
}
