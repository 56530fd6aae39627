use clap::Subcommand;
use serde::Serialize;

use meander::svg::closed_meander_svg;
use temperley::{eval_word, markov_trace_exponent, word_to_meander, TLWord};

use crate::{to_json, CmdError, Ctx, OutputFormat};

#[derive(Subcommand, Debug)]
pub enum TlCmd {
    /// Evaluate a word like `N=4: 2 1 3` to its diagram
    Eval { word: String },
    /// Markov trace exponent of a word
    Trace { word: String },
    /// Translate a word to its lower rainbow meander
    Meander { word: String },
}

fn parse_word(text: &str) -> Result<TLWord, CmdError> {
    text.parse().map_err(CmdError::validation)
}

pub fn run(cmd: TlCmd, ctx: &Ctx) -> Result<String, CmdError> {
    match cmd {
        TlCmd::Eval { word } => {
            ctx.require_format(&[OutputFormat::Json])?;
            let d = eval_word(&parse_word(&word)?).map_err(CmdError::runtime)?;
            Ok(to_json(&d.to_dump()))
        }
        TlCmd::Trace { word } => {
            ctx.require_format(&[OutputFormat::Json])?;
            let w = parse_word(&word)?;
            let exponent = markov_trace_exponent(&w).map_err(CmdError::runtime)?;
            #[derive(Serialize)]
            struct Report {
                word: String,
                trace_exponent: usize,
            }
            Ok(to_json(&Report {
                word: w.to_string(),
                trace_exponent: exponent,
            }))
        }
        TlCmd::Meander { word } => {
            let format = ctx.require_format(&[OutputFormat::Json, OutputFormat::Svg])?;
            let t = word_to_meander(&parse_word(&word)?).map_err(CmdError::runtime)?;
            Ok(match format {
                OutputFormat::Svg => closed_meander_svg(&t.meander),
                _ => {
                    #[derive(Serialize)]
                    struct Report {
                        meander: meander::ClosedMeander,
                        interior_loops: usize,
                        components: usize,
                    }
                    to_json(&Report {
                        components: t.meander.count_components(),
                        meander: t.meander,
                        interior_loops: t.interior_loops,
                    })
                }
            })
        }
    }
}
