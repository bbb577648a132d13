//! `mlqm spectrum`: closed-form levels next to the square-root recursion,
//! optionally cross-checked against the finite-difference oracle.

use clap::Args;
use serde::Serialize;

use mlqm::oracle::solve_oscillator_fd;
use mlqm::params::derive_params;
use mlqm::spectrum::{spectrum_by_recursion, spectrum_osc, spectrum_spt};

use super::{rel_dev, Model};
use crate::config::FileConfig;
use crate::output::{to_json, Cell, Csv, Format};
use crate::CliError;

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Energy family to list (default: oscillator)
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Deformation strength (default: 0.2)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Oscillator frequency (default: 1)
    #[arg(long)]
    pub omega: Option<f64>,
    /// Measure exponent of the momentum representation (default: 0)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Highest level index; rows run from 0 to this value (default: 10)
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Grid size for an additional finite-difference column with
    /// absolute and relative deviations
    #[arg(long)]
    pub oracle_grid: Option<usize>,
}

#[derive(Serialize)]
struct Row {
    n: usize,
    e_closed: f64,
    e_recursion: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_dev: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    model: &'static str,
    beta: f64,
    omega: f64,
    gamma: f64,
    nu: f64,
    alpha: f64,
    n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_grid: Option<usize>,
    rows: Vec<Row>,
}

pub fn run(
    args: &SpectrumArgs,
    cfg: &FileConfig,
    format: Format,
    precision: usize,
) -> Result<String, CliError> {
    let sec = cfg.spectrum.as_ref();
    let model = match args.model {
        Some(m) => m,
        None => match sec.and_then(|s| s.model.as_deref()) {
            Some(name) => Model::from_name(name)?,
            None => Model::Oscillator,
        },
    };
    let beta = args.beta.or(sec.and_then(|s| s.beta)).unwrap_or(0.2);
    let omega = args.omega.or(sec.and_then(|s| s.omega)).unwrap_or(1.0);
    let gamma = args.gamma.or(sec.and_then(|s| s.gamma)).unwrap_or(0.0);
    let n_max = args.n_max.or(sec.and_then(|s| s.n_max)).unwrap_or(10);
    let oracle_grid = args.oracle_grid.or(sec.and_then(|s| s.oracle_grid));

    let p = derive_params(beta, omega, gamma)?;
    let shift = match model {
        Model::Spt => 0.0,
        Model::Oscillator => 1.0 / (2.0 * beta),
    };
    let closed = match model {
        Model::Spt => spectrum_spt(n_max, &p),
        Model::Oscillator => spectrum_osc(n_max, &p),
    };
    // The recursion runs on well levels; the oscillator family is the same
    // ladder shifted down by a constant.
    let recursion = spectrum_by_recursion(n_max, &p)?;
    let oracle = match oracle_grid {
        Some(grid) => {
            let fd = solve_oscillator_fd(&p, grid, n_max + 1)?;
            Some(fd)
        }
        None => None,
    };

    let rows: Vec<Row> = (0..=n_max)
        .map(|n| {
            let e_closed = closed.energy(n).expect("level in range");
            let e_recursion = recursion.energy(n).expect("level in range") - shift;
            let e_oracle = oracle
                .as_ref()
                .and_then(|fd| fd.energy(n))
                .map(|e| e + (1.0 / (2.0 * beta) - shift));
            let abs_dev = e_oracle.map(|e| (e - e_closed).abs());
            let rel_dev = e_oracle.map(|e| rel_dev(e, e_closed));
            Row {
                n,
                e_closed,
                e_recursion,
                e_oracle,
                abs_dev,
                rel_dev,
            }
        })
        .collect();

    let report = Report {
        command: "spectrum",
        model: model.name(),
        beta,
        omega,
        gamma,
        nu: p.nu,
        alpha: p.alpha,
        n_max,
        oracle_grid,
        rows,
    };

    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let with_oracle = report.oracle_grid.is_some();
            let header: &[&str] = if with_oracle {
                &["n", "e_closed", "e_recursion", "e_oracle", "abs_dev", "rel_dev"]
            } else {
                &["n", "e_closed", "e_recursion"]
            };
            let mut table = Csv::new(header, precision);
            for row in &report.rows {
                let mut cells = vec![
                    Cell::Uint(row.n as u64),
                    Cell::Float(row.e_closed),
                    Cell::Float(row.e_recursion),
                ];
                if with_oracle {
                    cells.push(Cell::Float(row.e_oracle.expect("oracle column")));
                    cells.push(Cell::Float(row.abs_dev.expect("oracle column")));
                    cells.push(Cell::Float(row.rel_dev.expect("oracle column")));
                }
                table.push(cells);
            }
            table.render()
        }
    })
}
