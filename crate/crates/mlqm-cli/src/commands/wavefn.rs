//! `mlqm wavefn`: eigenfunction tables in the natural coordinate, or the
//! Gram matrix of the first levels under Gauss-Jacobi quadrature.

use clap::Args;
use serde::Serialize;

use mlqm::params::derive_params;
use mlqm::wavefn::{gram_matrix, sample, WaveModel};

use super::Model;
use crate::config::FileConfig;
use crate::output::{to_json, Cell, Csv, Format};
use crate::CliError;

#[derive(Debug, Args)]
pub struct WavefnArgs {
    /// Level to tabulate (default: 0)
    #[arg(long)]
    pub n: Option<usize>,
    /// Eigenfunction family (default: spt)
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Deformation strength (default: 0.2)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Oscillator frequency (default: 1)
    #[arg(long)]
    pub omega: Option<f64>,
    /// Measure exponent (default: 0)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Number of sample points across (-1, 1) (default: 101)
    #[arg(long)]
    pub samples: Option<usize>,
    /// Emit the Gram matrix of levels 0..=n-max instead of a table
    #[arg(long)]
    pub gram: bool,
    /// Highest level in the Gram matrix (default: 12)
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Serialize)]
struct SampleRow {
    y: f64,
    psi: f64,
}

#[derive(Serialize)]
struct SampleReport {
    command: &'static str,
    model: &'static str,
    n: usize,
    beta: f64,
    omega: f64,
    gamma: f64,
    samples: usize,
    rows: Vec<SampleRow>,
}

#[derive(Serialize)]
struct GramReport {
    command: &'static str,
    beta: f64,
    omega: f64,
    gamma: f64,
    n_max: usize,
    max_offdiag: f64,
    max_diag_dev: f64,
    matrix: Vec<Vec<f64>>,
}

pub fn run(
    args: &WavefnArgs,
    cfg: &FileConfig,
    format: Format,
    precision: usize,
) -> Result<String, CliError> {
    let sec = cfg.wavefn.as_ref();
    let n = args.n.or(sec.and_then(|s| s.n)).unwrap_or(0);
    let model = match args.model {
        Some(m) => m,
        None => match sec.and_then(|s| s.model.as_deref()) {
            Some(name) => Model::from_name(name)?,
            None => Model::Spt,
        },
    };
    let beta = args.beta.or(sec.and_then(|s| s.beta)).unwrap_or(0.2);
    let omega = args.omega.or(sec.and_then(|s| s.omega)).unwrap_or(1.0);
    let gamma = args.gamma.or(sec.and_then(|s| s.gamma)).unwrap_or(0.0);
    let samples = args.samples.or(sec.and_then(|s| s.samples)).unwrap_or(101);
    let gram = args.gram || sec.and_then(|s| s.gram).unwrap_or(false);
    let n_max = args.n_max.or(sec.and_then(|s| s.n_max)).unwrap_or(12);

    let p = derive_params(beta, omega, gamma)?;

    if gram {
        if model == Model::Oscillator {
            return Err(CliError::Config(
                "the Gram matrix is defined for the well eigenfunctions; drop --model oscillator"
                    .into(),
            ));
        }
        let g = gram_matrix(n_max, &p)?;
        let mut max_offdiag = 0.0f64;
        let mut max_diag_dev = 0.0f64;
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    max_diag_dev = max_diag_dev.max((v - 1.0).abs());
                } else {
                    max_offdiag = max_offdiag.max(v.abs());
                }
            }
        }
        let report = GramReport {
            command: "wavefn-gram",
            beta,
            omega,
            gamma,
            n_max,
            max_offdiag,
            max_diag_dev,
            matrix: g,
        };
        return Ok(match format {
            Format::Json => to_json(&report),
            Format::Csv => {
                let header: Vec<String> =
                    (0..=n_max).map(|j| format!("g_{j}")).collect();
                let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
                let mut table = Csv::new(&header_refs, precision);
                for row in &report.matrix {
                    table.push(row.iter().map(|&v| Cell::Float(v)).collect());
                }
                table.render()
            }
        });
    }

    let wave_model = match model {
        Model::Spt => WaveModel::Spt,
        Model::Oscillator => WaveModel::Oscillator,
    };
    let s = sample(n, &p, samples, wave_model)?;
    let rows: Vec<SampleRow> = s
        .nodes
        .iter()
        .zip(&s.values)
        .map(|(&y, &psi)| SampleRow { y, psi })
        .collect();
    let report = SampleReport {
        command: "wavefn",
        model: model.name(),
        n,
        beta,
        omega,
        gamma,
        samples,
        rows,
    };

    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut table = Csv::new(&["y", "psi"], precision);
            for row in &report.rows {
                table.push(vec![Cell::Float(row.y), Cell::Float(row.psi)]);
            }
            table.render()
        }
    })
}
