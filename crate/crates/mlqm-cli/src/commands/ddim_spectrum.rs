//! `mlqm ddim-spectrum`: radial levels in D dimensions, with the closed form
//! and the well route printed side by side and the magnetic multiplicity.

use clap::Args;
use serde::Serialize;

use mlqm::ddim::{
    ddim_derive, ddim_energy_closed, ddim_energy_pt, ddim_energy_route_well, magnetic_degeneracy,
};

use super::rel_dev;
use crate::config::FileConfig;
use crate::output::{to_json, Cell, Csv, Format};
use crate::CliError;

#[derive(Debug, Args)]
pub struct DdimSpectrumArgs {
    /// Spatial dimension (default: 3)
    #[arg(long)]
    pub dim: Option<usize>,
    /// Orbital quantum number (default: 0)
    #[arg(long)]
    pub l: Option<usize>,
    /// Particle mass (default: 1)
    #[arg(long)]
    pub mass: Option<f64>,
    /// Oscillator frequency (default: 1)
    #[arg(long)]
    pub omega: Option<f64>,
    /// Component-wise deformation strength (default: 0.2)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Cross-component deformation strength (default: 0)
    #[arg(long)]
    pub beta_prime: Option<f64>,
    /// Measure exponent (default: 0)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Highest principal quantum number; rows run over n = l, l+2, ...
    /// (default: 8)
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Serialize)]
struct Row {
    n_r: usize,
    n: usize,
    e_well: f64,
    e_full: f64,
    route_dev: f64,
    multiplicity: u64,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    dim: usize,
    l: usize,
    mass: f64,
    omega: f64,
    beta: f64,
    beta_prime: f64,
    gamma: f64,
    alpha: f64,
    nu: f64,
    mu: f64,
    n_max: usize,
    rows: Vec<Row>,
}

pub fn run(
    args: &DdimSpectrumArgs,
    cfg: &FileConfig,
    format: Format,
    precision: usize,
) -> Result<String, CliError> {
    let sec = cfg.ddim_spectrum.as_ref();
    let dim = args.dim.or(sec.and_then(|s| s.dim)).unwrap_or(3);
    let l = args.l.or(sec.and_then(|s| s.l)).unwrap_or(0);
    let mass = args.mass.or(sec.and_then(|s| s.mass)).unwrap_or(1.0);
    let omega = args.omega.or(sec.and_then(|s| s.omega)).unwrap_or(1.0);
    let beta = args.beta.or(sec.and_then(|s| s.beta)).unwrap_or(0.2);
    let beta_prime = args
        .beta_prime
        .or(sec.and_then(|s| s.beta_prime))
        .unwrap_or(0.0);
    let gamma = args.gamma.or(sec.and_then(|s| s.gamma)).unwrap_or(0.0);
    let n_max = args.n_max.or(sec.and_then(|s| s.n_max)).unwrap_or(8);

    if n_max < l {
        return Err(CliError::Config(format!(
            "n-max {n_max} lies below l {l}; no levels to list"
        )));
    }

    let dp = ddim_derive(dim, l, mass, omega, beta, beta_prime, gamma)?;
    let multiplicity = magnetic_degeneracy(dim, l)?;

    let mut rows = Vec::new();
    let mut n = l;
    while n <= n_max {
        let n_r = (n - l) / 2;
        let e_well = ddim_energy_pt(n_r, &dp);
        let e_full = ddim_energy_closed(n, l, &dp)?;
        let route = ddim_energy_route_well(n, l, &dp)?;
        rows.push(Row {
            n_r,
            n,
            e_well,
            e_full,
            route_dev: rel_dev(e_full, route),
            multiplicity,
        });
        n += 2;
    }

    let report = Report {
        command: "ddim-spectrum",
        dim,
        l,
        mass,
        omega,
        beta,
        beta_prime,
        gamma,
        alpha: dp.alpha,
        nu: dp.nu,
        mu: dp.mu,
        n_max,
        rows,
    };

    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut table = Csv::new(
                &["n_r", "n", "e_well", "e_full", "route_dev", "multiplicity"],
                precision,
            );
            for row in &report.rows {
                table.push(vec![
                    Cell::Uint(row.n_r as u64),
                    Cell::Uint(row.n as u64),
                    Cell::Float(row.e_well),
                    Cell::Float(row.e_full),
                    Cell::Float(row.route_dev),
                    Cell::Uint(row.multiplicity),
                ]);
            }
            table.render()
        }
    })
}
