//! `mlqm oracle`: finite-difference eigenvalues against the closed forms,
//! with an optional measured convergence order across several grids.

use clap::Args;
use serde::Serialize;

use mlqm::ddim::{ddim_derive, ddim_energy_pt};
use mlqm::oracle::{convergence_order, solve_oscillator_fd, solve_radial_well_fd};
use mlqm::params::derive_params;
use mlqm::spectrum::energy_osc;
use mlqm::{DdimParams, ModelParams1D};

use super::rel_dev;
use crate::config::FileConfig;
use crate::output::{to_json, Cell, Csv, Format};
use crate::CliError;

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Deformation strength (default: 0.2)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Oscillator frequency (default: 1)
    #[arg(long)]
    pub omega: Option<f64>,
    /// Measure exponent (default: 0)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Grid size of the staggered finite-difference mesh (default: 2000)
    #[arg(long)]
    pub grid: Option<usize>,
    /// Number of levels to solve for (default: 10)
    #[arg(long)]
    pub levels: Option<usize>,
    /// Also measure the convergence order across --grids
    #[arg(long)]
    pub convergence: bool,
    /// Comma-separated grid sizes for the order fit
    /// (default: 1000,2000,4000)
    #[arg(long, value_delimiter = ',')]
    pub grids: Option<Vec<usize>>,
    /// Solve the D-dimensional radial well instead of the 1D oscillator
    #[arg(long)]
    pub ddim: bool,
    /// Spatial dimension for --ddim (default: 3)
    #[arg(long)]
    pub dim: Option<usize>,
    /// Orbital quantum number for --ddim (default: 0)
    #[arg(long)]
    pub l: Option<usize>,
    /// Particle mass for --ddim (default: 1)
    #[arg(long)]
    pub mass: Option<f64>,
    /// Cross-component deformation for --ddim (default: 0)
    #[arg(long)]
    pub beta_prime: Option<f64>,
}

#[derive(Serialize)]
struct Row {
    n: usize,
    e_closed: f64,
    e_fd: f64,
    abs_err: f64,
    rel_err: f64,
}

#[derive(Serialize)]
struct Convergence {
    grids: Vec<usize>,
    steps: Vec<f64>,
    worst_rel_errs: Vec<f64>,
    order: f64,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    problem: &'static str,
    beta: f64,
    omega: f64,
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mass: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_prime: Option<f64>,
    grid: usize,
    levels: usize,
    rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    convergence: Option<Convergence>,
}

/// Closed-form target and finite-difference solve for one grid size.
enum Problem {
    Oscillator(ModelParams1D),
    Radial(DdimParams),
}

impl Problem {
    fn width(&self) -> f64 {
        match self {
            Problem::Oscillator(p) => std::f64::consts::PI / p.beta.sqrt(),
            Problem::Radial(dp) => std::f64::consts::FRAC_PI_2 / dp.alpha,
        }
    }

    fn closed(&self, n: usize) -> f64 {
        match self {
            Problem::Oscillator(p) => energy_osc(n, p),
            Problem::Radial(dp) => ddim_energy_pt(n, dp),
        }
    }

    fn solve(&self, grid: usize, levels: usize) -> Result<Vec<f64>, CliError> {
        let spectrum = match self {
            Problem::Oscillator(p) => solve_oscillator_fd(p, grid, levels)?,
            Problem::Radial(dp) => solve_radial_well_fd(dp, grid, levels)?,
        };
        Ok(spectrum.entries.into_iter().map(|(_, e)| e).collect())
    }

    fn rows(&self, grid: usize, levels: usize) -> Result<Vec<Row>, CliError> {
        Ok(self
            .solve(grid, levels)?
            .into_iter()
            .enumerate()
            .map(|(n, e_fd)| {
                let e_closed = self.closed(n);
                Row {
                    n,
                    e_closed,
                    e_fd,
                    abs_err: (e_fd - e_closed).abs(),
                    rel_err: rel_dev(e_fd, e_closed),
                }
            })
            .collect())
    }
}

pub fn run(
    args: &OracleArgs,
    cfg: &FileConfig,
    format: Format,
    precision: usize,
) -> Result<String, CliError> {
    let sec = cfg.oracle.as_ref();
    let beta = args.beta.or(sec.and_then(|s| s.beta)).unwrap_or(0.2);
    let omega = args.omega.or(sec.and_then(|s| s.omega)).unwrap_or(1.0);
    let gamma = args.gamma.or(sec.and_then(|s| s.gamma)).unwrap_or(0.0);
    let grid = args.grid.or(sec.and_then(|s| s.grid)).unwrap_or(2000);
    let levels = args.levels.or(sec.and_then(|s| s.levels)).unwrap_or(10);
    let convergence = args.convergence || sec.and_then(|s| s.convergence).unwrap_or(false);
    let grids = args
        .grids
        .clone()
        .or_else(|| sec.and_then(|s| s.grids.clone()))
        .unwrap_or_else(|| vec![1000, 2000, 4000]);
    let ddim = args.ddim || sec.and_then(|s| s.ddim).unwrap_or(false);
    let dim = args.dim.or(sec.and_then(|s| s.dim)).unwrap_or(3);
    let l = args.l.or(sec.and_then(|s| s.l)).unwrap_or(0);
    let mass = args.mass.or(sec.and_then(|s| s.mass)).unwrap_or(1.0);
    let beta_prime = args
        .beta_prime
        .or(sec.and_then(|s| s.beta_prime))
        .unwrap_or(0.0);

    let problem = if ddim {
        Problem::Radial(ddim_derive(dim, l, mass, omega, beta, beta_prime, gamma)?)
    } else {
        Problem::Oscillator(derive_params(beta, omega, gamma)?)
    };

    let rows = problem.rows(grid, levels)?;

    let conv = if convergence {
        if grids.len() < 2 {
            return Err(CliError::Config(
                "--convergence needs at least two grid sizes in --grids".into(),
            ));
        }
        let mut steps = Vec::new();
        let mut worsts = Vec::new();
        for &g in &grids {
            let worst = problem
                .rows(g, levels)?
                .iter()
                .map(|r| r.rel_err)
                .fold(0.0f64, f64::max);
            steps.push(problem.width() / g as f64);
            worsts.push(worst);
        }
        let pairs: Vec<(f64, f64)> = steps.iter().copied().zip(worsts.iter().copied()).collect();
        let order = convergence_order(&pairs)?;
        Some(Convergence {
            grids: grids.clone(),
            steps,
            worst_rel_errs: worsts,
            order,
        })
    } else {
        None
    };

    let report = Report {
        command: "oracle",
        problem: if ddim { "radial-well" } else { "oscillator" },
        beta,
        omega,
        gamma,
        dim: ddim.then_some(dim),
        l: ddim.then_some(l),
        mass: ddim.then_some(mass),
        beta_prime: ddim.then_some(beta_prime),
        grid,
        levels,
        rows,
        convergence: conv,
    };

    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => match &report.convergence {
            // The order fit is the flat table in CSV mode; the constant
            // `order` column keeps every row self-describing.
            Some(conv) => {
                let mut table = Csv::new(&["grid", "step", "worst_rel_err", "order"], precision);
                for ((&g, &h), &err) in conv
                    .grids
                    .iter()
                    .zip(&conv.steps)
                    .zip(&conv.worst_rel_errs)
                {
                    table.push(vec![
                        Cell::Uint(g as u64),
                        Cell::Float(h),
                        Cell::Float(err),
                        Cell::Float(conv.order),
                    ]);
                }
                table.render()
            }
            None => {
                let mut table =
                    Csv::new(&["n", "e_closed", "e_fd", "abs_err", "rel_err"], precision);
                for row in &report.rows {
                    table.push(vec![
                        Cell::Uint(row.n as u64),
                        Cell::Float(row.e_closed),
                        Cell::Float(row.e_fd),
                        Cell::Float(row.abs_err),
                        Cell::Float(row.rel_err),
                    ]);
                }
                table.render()
            }
        },
    })
}
