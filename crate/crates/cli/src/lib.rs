//! Command-line front end: reads fan and strata files, runs the computations
//! and renders a [`Report`] as text, JSON or LaTeX.

pub mod checks;
pub mod commands;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use stringy_core::error::Error;
use stringy_core::io::{parse_fan, parse_strata, MAX_INPUT_BYTES};
use stringy_core::toricfan::DEFAULT_BOX_CAP;

use checks::{cmd_check, Check, ALL_CHECKS};
use commands::{cmd_arc, cmd_resolution, cmd_toric, exit_code};
pub use report::{Format, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "stringy", version, about = "Exact stringy E-functions and stringy Euler numbers")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: OutputArg,
    /// Largest Box enumeration allowed for a single cone.
    #[arg(long, global = true, default_value_t = DEFAULT_BOX_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub box_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stringy E-function of a toric variety given by a fan file.
    Toric { fan: PathBuf },
    /// Stringy E-function from a strata file of a log resolution.
    Resolution { strata: PathBuf },
    /// Arc-space integral of a strata file, compared with the stringy E-function.
    Arc {
        strata: PathBuf,
        #[arg(long)]
        dim: Option<u32>,
    },
    /// Run the verification suite over the built-in fixtures.
    Check {
        /// Comma-separated subset of: duality, euler, polynomial, gorenstein, shed, virasoro, arc-identity.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
    },
}

/// Output text and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, Error> {
    let meta = std::fs::metadata(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if meta.len() > MAX_INPUT_BYTES as u64 {
        return Err(Error::Parse(format!("{}: larger than {MAX_INPUT_BYTES} bytes", path.display())));
    }
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> Outcome {
    let format = match cli.output {
        OutputArg::Text => Format::Text,
        OutputArg::Json => Format::Json,
        OutputArg::Latex => Format::Latex,
    };
    let result = match &cli.command {
        Command::Toric { fan } => read(fan).and_then(|t| parse_fan(&t)).and_then(|f| cmd_toric(&f, cli.box_cap)),
        Command::Resolution { strata } => read(strata).and_then(|t| parse_strata(&t)).and_then(|d| cmd_resolution(&d)),
        Command::Arc { strata, dim } => read(strata).and_then(|t| parse_strata(&t)).and_then(|d| cmd_arc(&d, *dim)),
        Command::Check { checks } => {
            let list = if checks.is_empty() { ALL_CHECKS } else { checks.as_slice() };
            Ok(cmd_check(list, cli.box_cap))
        }
    };
    match result {
        Ok(report) => Outcome {
            stdout: report.render(format),
            stderr: String::new(),
            code: i32::from(report.failed()),
        },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}
