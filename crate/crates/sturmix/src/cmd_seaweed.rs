use clap::Subcommand;
use serde::Serialize;

use seaweed::{billiard_from_seaweed, birainbow_formula, seaweed_meander, SeaweedComposition};

use crate::{to_json, CmdError, Ctx, OutputFormat};

#[derive(Subcommand, Debug)]
pub enum SeaweedCmd {
    /// Component count of a seaweed meander, e.g. `2,2|1,3` (or `2,4` as a bi-rainbow)
    Components { composition: String },
    /// The equivalent Cartesian billiard: cells and traced flight paths
    Billiard { composition: String },
}

pub fn run(cmd: SeaweedCmd, ctx: &Ctx) -> Result<String, CmdError> {
    match cmd {
        SeaweedCmd::Components { composition } => {
            ctx.require_format(&[OutputFormat::Json])?;
            let sc: SeaweedComposition = composition.parse().map_err(CmdError::validation)?;
            let meander = seaweed_meander(&sc);
            let components = meander.count_components();
            // the closed forms exist only for small bi-rainbows
            let formula = if sc.beta().len() == 1 && sc.alpha().len() <= 3 {
                Some(birainbow_formula(sc.alpha()).map_err(CmdError::runtime)?)
            } else {
                None
            };
            if let Some(f) = formula {
                if f != components {
                    return Err(CmdError::Runtime(format!(
                        "gcd formula ({f}) disagrees with the path trace ({components}) on {sc}"
                    )));
                }
            }
            #[derive(Serialize)]
            struct Report {
                composition: String,
                vertices: usize,
                components: usize,
            }
            Ok(to_json(&Report {
                composition: sc.to_string(),
                vertices: meander.n(),
                components,
            }))
        }
        SeaweedCmd::Billiard { composition } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Svg])?;
            let sc: SeaweedComposition = composition.parse().map_err(CmdError::validation)?;
            let billiard = billiard_from_seaweed(&sc);
            Ok(match format {
                OutputFormat::Svg => billiard.to_svg().map_err(CmdError::runtime)?,
                _ => to_json(&billiard.to_dump().map_err(CmdError::runtime)?),
            })
        }
    }
}
