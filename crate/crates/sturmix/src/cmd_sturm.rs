use clap::Subcommand;
use serde::Serialize;

use meander::{
    enumerate_sturm, enumerate_sturm_brute_force_bounded, is_meander, is_sturm, Permutation,
    BRUTE_FORCE_BOUND,
};

use crate::{to_json, CmdError, Ctx, OutputFormat};

#[derive(Subcommand, Debug)]
pub enum SturmCmd {
    /// Check the Sturm predicate and report the Morse vector
    Check { permutation: String },
    /// List all Sturm permutations of the given odd order
    Enumerate {
        n: usize,
        /// arch-assembly generator (default) or the factorial reference scan
        #[arg(long, default_value = "arches")]
        method: Method,
        /// reduce the list to canonical orbit representatives
        #[arg(long)]
        canonical: bool,
    },
    /// Orbit under inversion and reversal conjugation
    Orbit { permutation: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Arches,
    Brute,
}

#[derive(Serialize)]
struct CheckReport {
    sturm: bool,
    meander: bool,
    dissipative: bool,
    morse: Vec<i64>,
}

pub fn run(cmd: SturmCmd, ctx: &Ctx) -> Result<String, CmdError> {
    match cmd {
        SturmCmd::Check { permutation } => {
            ctx.require_format(&[OutputFormat::Json])?;
            let sigma: Permutation = permutation.parse().map_err(CmdError::validation)?;
            Ok(to_json(&CheckReport {
                sturm: is_sturm(&sigma),
                meander: is_meander(&sigma),
                dissipative: sigma.is_dissipative(),
                morse: sigma.morse_vector().indices().to_vec(),
            }))
        }
        SturmCmd::Enumerate {
            n,
            method,
            canonical,
        } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Csv])?;
            let bound = ctx
                .config
                .resolve(None, "sturm.brute_force_bound", BRUTE_FORCE_BOUND)?;
            let mut list = match method {
                Method::Arches => enumerate_sturm(n),
                Method::Brute => enumerate_sturm_brute_force_bounded(n, bound, ctx.jobs),
            }
            .map_err(CmdError::validation)?;
            if canonical {
                let mut seen = std::collections::BTreeSet::new();
                list.retain(|p| seen.insert(p.canonical()));
            }
            Ok(match format {
                OutputFormat::Json => {
                    #[derive(Serialize)]
                    struct Report {
                        n: usize,
                        count: usize,
                        permutations: Vec<String>,
                    }
                    to_json(&Report {
                        n,
                        count: list.len(),
                        permutations: list.iter().map(|p| p.to_string()).collect(),
                    })
                }
                _ => {
                    let mut s = String::from("sigma\n");
                    for p in &list {
                        s.push_str(&format!("\"{p}\"\n"));
                    }
                    s
                }
            })
        }
        SturmCmd::Orbit { permutation } => {
            ctx.require_format(&[OutputFormat::Json])?;
            let sigma: Permutation = permutation.parse().map_err(CmdError::validation)?;
            let orbit = sigma.symmetry_orbit();
            #[derive(Serialize)]
            struct Report {
                canonical: String,
                orbit: Vec<String>,
            }
            Ok(to_json(&Report {
                canonical: orbit[0].to_string(),
                orbit: orbit.iter().map(|p| p.to_string()).collect(),
            }))
        }
    }
}
