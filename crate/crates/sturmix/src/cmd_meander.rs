use clap::Subcommand;
use serde::Serialize;

use meander::svg::closed_meander_svg;
use meander::{close_open_meander, open_meander_arches, open_to_rainbow, Permutation};

use crate::{to_json, CmdError, Ctx, InputArg, OutputFormat};

#[derive(Subcommand, Debug)]
pub enum MeanderCmd {
    /// Count the closed curves of a meander
    Components {
        #[command(flatten)]
        input: InputArg,
    },
    /// Double onto a lower rainbow meander with twice the vertices
    Double {
        #[command(flatten)]
        input: InputArg,
    },
    /// Close the open meander of a dissipative permutation
    Close { permutation: String },
    /// Render the arch diagram of a meander document or a permutation
    Svg {
        #[command(flatten)]
        input: InputArg,
        /// draw the open meander of this permutation instead of reading JSON
        #[arg(long)]
        perm: Option<String>,
    },
}

pub fn run(cmd: MeanderCmd, ctx: &Ctx) -> Result<String, CmdError> {
    match cmd {
        MeanderCmd::Components { input } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Dot])?;
            let m = input.load_meander()?;
            match format {
                OutputFormat::Dot => Ok(to_dot(&m)),
                _ => {
                    #[derive(Serialize)]
                    struct Report {
                        n: usize,
                        components: usize,
                    }
                    Ok(to_json(&Report {
                        n: m.n(),
                        components: m.count_components(),
                    }))
                }
            }
        }
        MeanderCmd::Double { input } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Svg])?;
            let doubled = open_to_rainbow(&input.load_meander()?);
            Ok(match format {
                OutputFormat::Svg => closed_meander_svg(&doubled),
                _ => to_json(&doubled),
            })
        }
        MeanderCmd::Close { permutation } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Svg])?;
            let sigma: Permutation = permutation.parse().map_err(CmdError::validation)?;
            let open = open_meander_arches(&sigma).map_err(CmdError::validation)?;
            let closed = close_open_meander(&open).map_err(CmdError::validation)?;
            Ok(match format {
                OutputFormat::Svg => closed_meander_svg(&closed),
                _ => to_json(&closed),
            })
        }
        MeanderCmd::Svg { input, perm } => {
            ctx.require_format(&[OutputFormat::Json, OutputFormat::Svg])?;
            match perm {
                Some(text) => {
                    let sigma: Permutation = text.parse().map_err(CmdError::validation)?;
                    let open = open_meander_arches(&sigma).map_err(CmdError::validation)?;
                    Ok(meander::svg::open_meander_svg(&open))
                }
                None => Ok(closed_meander_svg(&input.load_meander()?)),
            }
        }
    }
}

/// Undirected graph of the arch structure: vertices along the axis, one edge
/// per arch, labelled by family.
fn to_dot(m: &meander::ClosedMeander) -> String {
    let mut s = String::from("graph meander {\n");
    for v in 1..=m.n() {
        s.push_str(&format!("  {v};\n"));
    }
    for &(a, b) in m.upper() {
        s.push_str(&format!("  {a} -- {b} [label=\"u\"];\n"));
    }
    for &(a, b) in m.lower() {
        s.push_str(&format!("  {a} -- {b} [label=\"l\"];\n"));
    }
    s.push_str("}\n");
    s
}
