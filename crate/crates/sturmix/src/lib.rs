//! Command-line front end for the meander/Sturm combinatorics and the
//! Bianchi/Kasner dynamics crates. Every command writes a single
//! deterministic document (JSON, CSV, DOT or SVG) to standard output.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cmd_bianchi;
mod cmd_kasner;
mod cmd_meander;
mod cmd_seaweed;
mod cmd_shoot;
mod cmd_sturm;
mod cmd_tl;
mod config;

pub use config::Config;

#[derive(Debug)]
pub enum CmdError {
    /// Bad input: exit code 2.
    Validation(String),
    /// Failure while computing: exit code 1.
    Runtime(String),
}

impl CmdError {
    pub fn validation(e: impl std::fmt::Display) -> Self {
        CmdError::Validation(e.to_string())
    }

    pub fn runtime(e: impl std::fmt::Display) -> Self {
        CmdError::Runtime(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
    Svg,
}

#[derive(Parser, Debug)]
#[command(
    name = "sturmix",
    about = "Meander permutations, Sturm attractor combinatorics, seaweed billiards, \
             Temperley-Lieb traces, and Bianchi/Kasner dynamics",
    version
)]
pub struct Cli {
    /// Output format; commands reject formats they cannot emit
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Seed for stochastic commands
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker count for enumeration and Monte Carlo
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// key=value config file overriding built-in defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sturm permutation predicates and enumeration
    Sturm {
        #[command(subcommand)]
        cmd: cmd_sturm::SturmCmd,
    },
    /// Closed meander calculus
    Meander {
        #[command(subcommand)]
        cmd: cmd_meander::MeanderCmd,
    },
    /// Seaweed compositions and Cartesian billiards
    Seaweed {
        #[command(subcommand)]
        cmd: cmd_seaweed::SeaweedCmd,
    },
    /// Temperley-Lieb words, traces and meander translations
    Tl {
        #[command(subcommand)]
        cmd: cmd_tl::TlCmd,
    },
    /// ODE shooting for boundary-order permutations
    Shoot {
        #[command(subcommand)]
        cmd: cmd_shoot::ShootCmd,
    },
    /// Wainwright-Hsu integration and Mixmaster integrals
    Bianchi {
        #[command(subcommand)]
        cmd: cmd_bianchi::BianchiCmd,
    },
    /// Kasner chord map, IFS and termination statistics
    Kasner {
        #[command(subcommand)]
        cmd: cmd_kasner::KasnerCmd,
    },
}

/// Shared run context: resolved global flags plus the config file.
pub struct Ctx {
    pub format: OutputFormat,
    pub seed: u64,
    pub jobs: usize,
    pub config: Config,
}

impl Ctx {
    pub fn require_format(&self, supported: &[OutputFormat]) -> Result<OutputFormat, CmdError> {
        if supported.contains(&self.format) {
            Ok(self.format)
        } else {
            Err(CmdError::Validation(format!(
                "unsupported --format; this command supports {supported:?}"
            )))
        }
    }
}

/// Parses `argv` (including the program name) and executes it, writing the
/// result document to `out` and diagnostics to `err`. Returns the exit code:
/// 0 success, 2 validation/usage error, 1 runtime error.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
        }
    };
    match execute(cli) {
        Ok(doc) => {
            let _ = out.write_all(doc.as_bytes());
            0
        }
        Err(CmdError::Validation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CmdError::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<String, CmdError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let ctx = Ctx {
        format: match cli.format {
            Some(f) => f,
            None => match config.get("format") {
                Some("json") | None => OutputFormat::Json,
                Some("csv") => OutputFormat::Csv,
                Some("dot") => OutputFormat::Dot,
                Some("svg") => OutputFormat::Svg,
                Some(other) => {
                    return Err(CmdError::Validation(format!(
                        "config key format: unknown value `{other}`"
                    )))
                }
            },
        },
        seed: config.resolve(cli.seed, "seed", 0)?,
        jobs: config.resolve(cli.jobs, "jobs", 1)?,
        config,
    };
    match cli.command {
        Command::Sturm { cmd } => cmd_sturm::run(cmd, &ctx),
        Command::Meander { cmd } => cmd_meander::run(cmd, &ctx),
        Command::Seaweed { cmd } => cmd_seaweed::run(cmd, &ctx),
        Command::Tl { cmd } => cmd_tl::run(cmd, &ctx),
        Command::Shoot { cmd } => cmd_shoot::run(cmd, &ctx),
        Command::Bianchi { cmd } => cmd_bianchi::run(cmd, &ctx),
        Command::Kasner { cmd } => cmd_kasner::run(cmd, &ctx),
    }
}

/// Compact JSON plus trailing newline; serialization of our own types never fails.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Reads a document from a path, `-` meaning standard input.
pub fn read_input(path: &str) -> Result<String, CmdError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(CmdError::validation)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CmdError::Validation(format!("cannot read {path}: {e}")))
    }
}

/// Common argument bundle for commands taking a meander JSON document.
#[derive(Args, Debug)]
pub struct InputArg {
    /// Path to a closed-meander JSON document, or `-` for stdin
    #[arg(long, default_value = "-")]
    input: String,
}

impl InputArg {
    pub fn load_meander(&self) -> Result<meander::ClosedMeander, CmdError> {
        let text = read_input(&self.input)?;
        serde_json::from_str(&text).map_err(CmdError::validation)
    }
}
