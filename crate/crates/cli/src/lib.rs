//! Command-line front end for the integrality engine.

pub mod input;
pub mod render;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use cohint::bps::{BpsEngine, EngineOptions};
use cohint::poset::build_poset;

use input::InputDescriptor;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cohint", version, about = "Cohomological integrality for symmetric representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize the group and representation.
    Describe {
        #[arg(long)]
        input: PathBuf,
    },
    /// List partition classes, orbits and the covering relation.
    Poset {
        #[arg(long)]
        input: PathBuf,
        /// Write the Hasse diagram as a DOT graph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the integrality identity degree by degree.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cutoff: Option<i64>,
        /// Write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_kernel: bool,
    },
    /// Compare a rank-1 torus BPS space with its closed form.
    Rank1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cutoff: Option<i64>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Engine(#[from] cohint::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use cohint::Error as E;
        match self {
            CliError::Invalid(_) | CliError::Io { .. } => EXIT_INVALID,
            CliError::Engine(
                E::RankMismatch { .. }
                | E::FormNotAvoidable(_)
                | E::GroupTooLarge { .. }
                | E::NonInvertibleGenerator(_)
                | E::NotASubgroup(_)
                | E::UnknownFamily(_)
                | E::NotSymmetric
                | E::InvalidGroup(_)
                | E::InvalidInput(_)
                | E::NotRankOne(_)
                | E::Overflow,
            ) => EXIT_INVALID,
            CliError::Engine(_) => EXIT_FAIL,
        }
    }
}

/// Text for stdout and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn read_input(path: &Path) -> Result<InputDescriptor, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    InputDescriptor::parse(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Describe { input } => {
            let pair = read_input(input)?.pair()?;
            Ok(Outcome { stdout: render::describe(&pair), code: EXIT_PASS })
        }
        Command::Poset { input, dot } => {
            let pair = read_input(input)?.pair()?;
            let pd = build_poset(&pair)?;
            if let Some(path) = dot {
                write_file(path, &render::dot(&pd))?;
            }
            Ok(Outcome { stdout: render::poset_table(&pd), code: EXIT_PASS })
        }
        Command::Verify { input, cutoff, json, corrupt_kernel } => {
            let desc = read_input(input)?;
            let pair = desc.pair()?;
            let cutoff = cutoff.unwrap_or(desc.options.cutoff);
            let engine = BpsEngine::new(EngineOptions { corrupt_kernel: *corrupt_kernel, ..Default::default() });
            let report = engine.verify_integrality(&pair, cutoff)?;
            if let Some(path) = json {
                write_file(path, &render::report_json(&report))?;
            }
            let code = if report.pass { EXIT_PASS } else { EXIT_FAIL };
            Ok(Outcome { stdout: render::verify_table(&report), code })
        }
        Command::Rank1 { input, cutoff } => {
            let desc = read_input(input)?;
            let group = desc.group()?;
            if group.rank != 1 || !group.roots.is_empty() {
                return Err(cohint::Error::NotRankOne(group.label).into());
            }
            let rep = desc.rep(1)?;
            let cutoff = cutoff.unwrap_or(desc.options.cutoff);
            let report = BpsEngine::default().rank1_conjecture_check(&rep, cutoff)?;
            let code = if report.matches { EXIT_PASS } else { EXIT_FAIL };
            Ok(Outcome { stdout: render::rank1_table(&report), code })
        }
    }
}
