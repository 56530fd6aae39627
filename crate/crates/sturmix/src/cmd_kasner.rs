use clap::{Args, Subcommand};
use serde::Serialize;

use kasner::{
    eras, ifs_iterate, iterate, scene_svg, termination_stats_jobs, ArcSet, EmanationConfig,
    Itinerary, Policy, Termination,
};

use crate::{to_json, CmdError, Ctx, OutputFormat};

#[derive(Subcommand, Debug)]
pub enum KasnerCmd {
    /// Iterate the chord map from an initial angle (degrees)
    Iterate {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        geometry: Geometry,
        /// multivalued-step resolution: error, lex or random
        #[arg(long, default_value = "error")]
        policy: PolicyArg,
    },
    /// Iterate the set-valued map on arcs `lo:hi,lo:hi` (degrees)
    Ifs {
        #[arg(long)]
        arcs: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        geometry: Geometry,
    },
    /// Monte Carlo fraction of chains ending in a stable arc
    Stats {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[command(flatten)]
        geometry: Geometry,
    },
}

#[derive(Args, Debug)]
pub struct Geometry {
    /// emanation distance; 2 is the relativistic case
    #[arg(long, default_value_t = EmanationConfig::GR_DISTANCE)]
    d: f64,
}

impl Geometry {
    fn config(&self) -> Result<EmanationConfig, CmdError> {
        EmanationConfig::new(self.d).map_err(CmdError::validation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolicyArg {
    Error,
    Lex,
    Random,
}

fn termination_label(t: Termination) -> &'static str {
    match t {
        Termination::MaxIterations => "max-iterations",
        Termination::StableArc => "stable-arc",
        Termination::TangencyHit => "tangency-hit",
    }
}

fn itinerary_csv(it: &Itinerary) -> String {
    let mut s = String::from("step,theta_deg,corner\n");
    for (k, step) in it.steps.iter().enumerate() {
        let corner = step.corner.map(|c| c.to_string()).unwrap_or_default();
        s.push_str(&format!("{k},{},{corner}\n", step.theta.to_degrees()));
    }
    s
}

fn parse_arcs_degrees(text: &str) -> Result<ArcSet, CmdError> {
    let mut set = ArcSet::empty();
    for part in text.split(',') {
        let part = part.trim();
        let Some((lo, hi)) = part.split_once(':') else {
            return Err(CmdError::Validation(format!(
                "bad arc `{part}`; expected `lo:hi` in degrees"
            )));
        };
        let lo = lo.trim().parse::<f64>().map_err(CmdError::validation)?;
        let hi = hi.trim().parse::<f64>().map_err(CmdError::validation)?;
        if hi - lo >= 360.0 {
            set = ArcSet::full();
        } else {
            set = set.union(&ArcSet::arc(lo.to_radians(), hi.to_radians()));
        }
    }
    Ok(set)
}

fn arcs_degrees(set: &ArcSet) -> Vec<[f64; 2]> {
    set.segments()
        .iter()
        .map(|&(lo, hi)| [lo.to_degrees(), hi.to_degrees()])
        .collect()
}

pub fn run(cmd: KasnerCmd, ctx: &Ctx) -> Result<String, CmdError> {
    match cmd {
        KasnerCmd::Iterate {
            theta,
            n,
            geometry,
            policy,
        } => {
            let format =
                ctx.require_format(&[OutputFormat::Json, OutputFormat::Csv, OutputFormat::Svg])?;
            let cfg = geometry.config()?;
            let policy = match policy {
                PolicyArg::Error => Policy::Error,
                PolicyArg::Lex => Policy::Lexicographic,
                PolicyArg::Random => Policy::SeededRandom(ctx.seed),
            };
            let it = iterate(theta.to_radians(), n, &cfg, policy).map_err(CmdError::runtime)?;
            Ok(match format {
                OutputFormat::Csv => itinerary_csv(&it),
                OutputFormat::Svg => scene_svg(&cfg, Some(&it)),
                _ => {
                    #[derive(Serialize)]
                    struct StepOut {
                        theta_deg: f64,
                        corner: Option<usize>,
                    }
                    #[derive(Serialize)]
                    struct EraOut {
                        start: usize,
                        len: usize,
                        corners: (usize, usize),
                    }
                    #[derive(Serialize)]
                    struct Report {
                        d: f64,
                        termination: String,
                        steps: Vec<StepOut>,
                        eras: Vec<EraOut>,
                    }
                    to_json(&Report {
                        d: cfg.distance(),
                        termination: termination_label(it.termination).to_string(),
                        steps: it
                            .steps
                            .iter()
                            .map(|s| StepOut {
                                theta_deg: s.theta.to_degrees(),
                                corner: s.corner,
                            })
                            .collect(),
                        eras: eras(&it)
                            .into_iter()
                            .map(|e| EraOut {
                                start: e.start,
                                len: e.len,
                                corners: e.corners,
                            })
                            .collect(),
                    })
                }
            })
        }
        KasnerCmd::Ifs { arcs, n, geometry } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Svg])?;
            let cfg = geometry.config()?;
            let start = parse_arcs_degrees(&arcs)?;
            let image = ifs_iterate(&start, n, &cfg);
            Ok(match format {
                OutputFormat::Svg => scene_svg(&cfg, None),
                _ => {
                    #[derive(Serialize)]
                    struct Report {
                        d: f64,
                        iterations: usize,
                        measure_deg: f64,
                        arcs_deg: Vec<[f64; 2]>,
                    }
                    to_json(&Report {
                        d: cfg.distance(),
                        iterations: n,
                        measure_deg: image.measure().to_degrees(),
                        arcs_deg: arcs_degrees(&image),
                    })
                }
            })
        }
        KasnerCmd::Stats {
            samples,
            max_iter,
            geometry,
        } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Csv])?;
            let cfg = geometry.config()?;
            let stats = termination_stats_jobs(samples, max_iter, &cfg, ctx.seed, ctx.jobs);
            Ok(match format {
                OutputFormat::Csv => format!(
                    "samples,terminated,fraction\n{},{},{}\n",
                    stats.samples, stats.terminated, stats.fraction
                ),
                _ => {
                    #[derive(Serialize)]
                    struct Report {
                        d: f64,
                        samples: usize,
                        terminated: usize,
                        fraction: f64,
                        degenerate: bool,
                    }
                    to_json(&Report {
                        d: cfg.distance(),
                        samples: stats.samples,
                        terminated: stats.terminated,
                        fraction: stats.fraction,
                        degenerate: stats.degenerate,
                    })
                }
            })
        }
    }
}
