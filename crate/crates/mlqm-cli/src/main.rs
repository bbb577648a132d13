//! Command-line front end for the deformed-oscillator library.
//!
//! Exit codes: 0 success, 1 computational failure, 2 usage or configuration
//! error, 3 verification-threshold breach.

mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{ddim_spectrum, oracle, spectrum, tables, verify, wavefn};
use output::{Format, Sink};

#[derive(Debug)]
pub enum CliError {
    Lib(mlqm::Error),
    Config(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Lib(mlqm::Error::Computation(_)) => 1,
            CliError::Lib(_) => 2,
            CliError::Config(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl From<mlqm::Error> for CliError {
    fn from(e: mlqm::Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Parser)]
#[command(
    name = "mlqm",
    version,
    about = "Deformed-oscillator spectra, ladder-algebra checks, and finite-difference oracles"
)]
struct Cli {
    /// Output format (default: json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// TOML config mirroring the flags; explicit flags win.
    /// Falls back to $MLQM_DEFAULT_CONFIG when omitted
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Significant digits in CSV output (default: 12)
    #[arg(long, global = true)]
    precision: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form levels next to the square-root recursion, with an
    /// optional finite-difference cross-check
    Spectrum(spectrum::SpectrumArgs),
    /// Radial levels in D dimensions with a route-equality column
    DdimSpectrum(ddim_spectrum::DdimSpectrumArgs),
    /// Eigenfunction tables or their Gram matrix
    Wavefn(wavefn::WavefnArgs),
    /// Operator-identity residuals against configured thresholds
    Verify(verify::VerifyArgs),
    /// Finite-difference eigenvalues against the closed forms
    Oracle(oracle::OracleArgs),
    /// Recompute the pinned reference values with their methods
    PaperTables,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = config::load(cli.config.as_deref())?;
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.format.as_deref() {
            Some(name) => Format::from_name(name)?,
            None => Format::Json,
        },
    };
    let precision = cli.precision.or(cfg.precision).unwrap_or(12);
    if precision == 0 || precision > 17 {
        return Err(CliError::Config(format!(
            "precision {precision} out of range (1..=17)"
        )));
    }
    let sink = Sink::new(cli.output.clone().or_else(|| cfg.output.clone()));

    let (body, breached) = match &cli.command {
        Command::Spectrum(args) => (spectrum::run(args, &cfg, format, precision)?, false),
        Command::DdimSpectrum(args) => (ddim_spectrum::run(args, &cfg, format, precision)?, false),
        Command::Wavefn(args) => (wavefn::run(args, &cfg, format, precision)?, false),
        Command::Verify(args) => verify::run(args, &cfg, format, precision)?,
        Command::Oracle(args) => (oracle::run(args, &cfg, format, precision)?, false),
        Command::PaperTables => (tables::run(format, precision)?, false),
    };
    sink.write(&body)?;
    Ok(breached)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => {}
        Ok(true) => {
            eprintln!("verification thresholds breached; see the report");
            std::process::exit(3);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.code());
        }
    }
}
