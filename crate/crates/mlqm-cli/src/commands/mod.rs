//! One module per subcommand; each resolves flags against the config file,
//! runs the library routines, and renders the result in the chosen format.

pub mod ddim_spectrum;
pub mod oracle;
pub mod spectrum;
pub mod tables;
pub mod verify;
pub mod wavefn;

use crate::CliError;

/// Which eigenfunction/energy family a command works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Model {
    /// The symmetric well itself (energies `(alpha^2/2)(n + nu)^2`).
    Spt,
    /// The physical oscillator (well energies shifted down by `1/(2 beta)`).
    Oscillator,
}

impl Model {
    pub fn from_name(name: &str) -> Result<Model, CliError> {
        match name {
            "spt" => Ok(Model::Spt),
            "oscillator" => Ok(Model::Oscillator),
            other => Err(CliError::Config(format!(
                "unknown model {other:?} (expected \"spt\" or \"oscillator\")"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Spt => "spt",
            Model::Oscillator => "oscillator",
        }
    }
}

/// Relative gap between two routes to the same number, guarded at zero.
pub fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = b.abs().max(1e-300);
    (a - b).abs() / scale
}
