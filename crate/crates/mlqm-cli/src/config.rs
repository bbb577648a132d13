//! Optional TOML configuration mirroring the command-line flags.
//!
//! Resolution order for every setting: explicit flag, then config file,
//! then the built-in default. The file comes from `--config PATH`, or from
//! `MLQM_DEFAULT_CONFIG` when the flag is absent. Unknown keys are rejected
//! so a typo cannot silently fall back to a default.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct FileConfig {
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub precision: Option<usize>,
    pub spectrum: Option<SpectrumSection>,
    pub ddim_spectrum: Option<DdimSpectrumSection>,
    pub wavefn: Option<WavefnSection>,
    pub verify: Option<VerifySection>,
    pub oracle: Option<OracleSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct SpectrumSection {
    pub model: Option<String>,
    pub beta: Option<f64>,
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub n_max: Option<usize>,
    pub oracle_grid: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct DdimSpectrumSection {
    pub dim: Option<usize>,
    pub l: Option<usize>,
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub beta: Option<f64>,
    pub beta_prime: Option<f64>,
    pub gamma: Option<f64>,
    pub n_max: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct WavefnSection {
    pub n: Option<usize>,
    pub model: Option<String>,
    pub beta: Option<f64>,
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub samples: Option<usize>,
    pub gram: Option<bool>,
    pub n_max: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct VerifySection {
    pub suite: Option<String>,
    pub beta: Option<f64>,
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub dim: Option<usize>,
    pub interior: Option<usize>,
    pub alpha: Option<f64>,
    pub nu: Option<f64>,
    pub mu: Option<f64>,
    pub p_max: Option<f64>,
    pub grid: Option<usize>,
    pub thresholds: Option<PathBuf>,
    pub sweep: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct OracleSection {
    pub beta: Option<f64>,
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub grid: Option<usize>,
    pub levels: Option<usize>,
    pub convergence: Option<bool>,
    pub grids: Option<Vec<usize>>,
    pub ddim: Option<bool>,
    pub dim: Option<usize>,
    pub l: Option<usize>,
    pub mass: Option<f64>,
    pub beta_prime: Option<f64>,
}

pub const ENV_DEFAULT_CONFIG: &str = "MLQM_DEFAULT_CONFIG";

pub fn load(explicit: Option<&Path>) -> Result<FileConfig, CliError> {
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => env::var_os(ENV_DEFAULT_CONFIG)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from),
    };
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Config(format!("reading config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
}
