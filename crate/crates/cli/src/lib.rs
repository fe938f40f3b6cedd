//! Command-line front end: configuration, subcommand dispatch, CSV and SVG
//! output. Exit codes are 0 on success, 2 for usage errors and 3 for
//! numeric failures.

pub mod commands;
pub mod config;
pub mod curve;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::commands::Output;
use crate::config::{parse_config, Flags};
use crate::curve::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(#[from] bcsreps_core::Error),
    #[error("check failed: {}", failures.join("; "))]
    Check {
        report: Report,
        failures: Vec<String>,
    },
    #[error("render: {0}")]
    Render(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Check { .. } | CliError::Render(_) => EXIT_NUMERIC,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bcsreps",
    version,
    about = "Normal, standard BCS and thin-film superconducting states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Critical temperatures and zero-temperature gaps of both phases
    Tc(Flags),
    /// Reduced film spectrum η against τ
    GapCurve(Flags),
    /// Reduced critical fields of both phases against τ
    HcCurve(Flags),
    /// Reduced specific-heat anomaly of the film phase
    CvCurve(Flags),
    /// Free energies of both phases against T
    FreeEnergy(Flags),
    /// Which phase is stable at the configured temperature
    Phase(Flags),
    /// Exact Fock-space checks of the pair-mode algebra
    FockVerify(Flags),
    /// Shell mode count: closed form against lattice enumeration
    NuCount(Flags),
}

/// Parses `argv` (including the program name), runs one subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if let CliError::Check { report, .. } = &e {
                if let Ok(text) = report.to_csv() {
                    print!("{text}");
                }
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

type Handler = fn(&config::RunConfig) -> Result<Output, CliError>;

fn execute(command: Command) -> Result<(), CliError> {
    let (flags, f): (Flags, Handler) = match command {
        Command::Tc(fl) => (fl, commands::tc),
        Command::GapCurve(fl) => (fl, commands::gap_curve),
        Command::HcCurve(fl) => (fl, commands::hc_curve),
        Command::CvCurve(fl) => (fl, commands::cv_curve),
        Command::FreeEnergy(fl) => (fl, commands::free_energy),
        Command::Phase(fl) => (fl, commands::phase),
        Command::FockVerify(fl) => (fl, commands::fock_verify),
        Command::NuCount(fl) => (fl, commands::nu_count_cmd),
    };
    let cfg = parse_config(&flags)?;
    let output = f(&cfg)?;
    let csv = output.to_csv()?;
    let svg = match (&cfg.svg, &output) {
        (None, _) => None,
        (Some(path), Output::Curve(curve)) => {
            Some((path, svg::render_svg(curve, &svg::Style::default())?))
        }
        (Some(_), Output::Report(_)) => {
            return Err(CliError::Usage(
                "--svg applies to curve subcommands only".into(),
            ))
        }
    };
    match &cfg.out {
        Some(path) => write_file(path, &csv)?,
        None => std::io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    if let Some((path, text)) = svg {
        write_file(path, &text)?;
    }
    Ok(())
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
