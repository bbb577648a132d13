//! `mlqm verify`: every operator identity measured and compared against the
//! shipped residual thresholds. The process exits 0 only if all thresholded
//! residuals hold; a breach exits 3 so scripts can tell it from a crash.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mlqm::algebra::{
    anticommutator_structure, bose_map_check, build_operator_set, check_algebra, f_structure,
    finite_rep_condition, kappa, number_operator_map, phi, phi_factorized,
};
use mlqm::ddim::{build_ddim_ladder, check_ddim_algebra};
use mlqm::oracle::momentum_grid_commutator_check;
use mlqm::params::derive_params;

use crate::config::FileConfig;
use crate::output::{to_json, Cell, Csv, Format};
use crate::CliError;

/// Default thresholds, versioned with the repository so a bare `mlqm verify`
/// is reproducible. `--thresholds PATH` swaps in another file.
const EMBEDDED_THRESHOLDS: &str = include_str!("../../../../fixtures/verify-thresholds.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Commutators and reconstructions of the 1D ladder set
    Algebra,
    /// Number-operator, boson-map, and finite-representation conditions
    Maps,
    /// Scalar identities tying kappa, phi, and the structure function
    Coefficients,
    /// Deformed commutator realised on a uniform momentum grid
    MomentumGrid,
    /// Commutators and reconstructions of the two-wall radial ladder set
    Ddim,
    /// Everything above at the shared defaults
    All,
}

impl Suite {
    fn from_name(name: &str) -> Result<Suite, CliError> {
        match name {
            "algebra" => Ok(Suite::Algebra),
            "maps" => Ok(Suite::Maps),
            "coefficients" => Ok(Suite::Coefficients),
            "momentum-grid" => Ok(Suite::MomentumGrid),
            "ddim" => Ok(Suite::Ddim),
            "all" => Ok(Suite::All),
            other => Err(CliError::Config(format!("unknown suite {other:?}"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Maps => "maps",
            Suite::Coefficients => "coefficients",
            Suite::MomentumGrid => "momentum-grid",
            Suite::Ddim => "ddim",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity suite to run (default: algebra)
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Deformation strength for the 1D suites (default: 0.2)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Oscillator frequency (default: 1)
    #[arg(long)]
    pub omega: Option<f64>,
    /// Measure exponent (default: 0)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Truncation dimension of the matrix realisations (default: 64)
    #[arg(long)]
    pub dim: Option<usize>,
    /// Rows of the truncation that count as interior (default: 40)
    #[arg(long)]
    pub interior: Option<usize>,
    /// Angular scale of the radial suite (default: 0.8)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Outer-wall index of the radial suite (default: 4.7)
    #[arg(long)]
    pub nu: Option<f64>,
    /// Centrifugal-wall index of the radial suite (default: 2.3)
    #[arg(long)]
    pub mu: Option<f64>,
    /// Momentum cutoff of the grid suite (default: 10)
    #[arg(long)]
    pub p_max: Option<f64>,
    /// Points of the momentum grid (default: 2048)
    #[arg(long)]
    pub grid: Option<usize>,
    /// Threshold file overriding the embedded defaults
    #[arg(long)]
    pub thresholds: Option<PathBuf>,
    /// Test hook: scale the ladder matrix elements by (1 + EPS) before
    /// checking, to prove the identities actually bite
    #[arg(long, value_name = "EPS")]
    pub perturb_kappa: Option<f64>,
    /// Re-run the suite at N deformation strengths sampled log-uniformly
    /// from [0.02, 2], sorted by beta
    #[arg(long, value_name = "N")]
    pub sweep: Option<usize>,
    /// Seed for the sweep sampler (default: 42)
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct Thresholds {
    algebra: BTreeMap<String, f64>,
    ddim: BTreeMap<String, f64>,
    maps: BTreeMap<String, f64>,
    coefficients: BTreeMap<String, f64>,
    momentum_grid: BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct Check {
    value: f64,
    threshold: f64,
    pass: bool,
}

#[derive(Serialize)]
struct SuiteReport {
    suite: &'static str,
    params: Value,
    checks: BTreeMap<String, Check>,
    diagnostics: BTreeMap<String, f64>,
    pass: bool,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    suite: &'static str,
    thresholds: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    pass: bool,
    suites: Vec<SuiteReport>,
}

/// Compare each reported residual against its configured ceiling; a residual
/// with no configured ceiling is an error rather than a silent pass.
fn judge(
    suite: &str,
    residuals: &BTreeMap<String, f64>,
    table: &BTreeMap<String, f64>,
) -> Result<(BTreeMap<String, Check>, bool), CliError> {
    let mut checks = BTreeMap::new();
    let mut all_pass = true;
    for (name, &value) in residuals {
        let threshold = *table.get(name).ok_or_else(|| {
            CliError::Config(format!("no threshold configured for {suite}/{name}"))
        })?;
        let pass = value.is_finite() && value <= threshold;
        all_pass &= pass;
        checks.insert(
            name.clone(),
            Check {
                value,
                threshold,
                pass,
            },
        );
    }
    Ok((checks, all_pass))
}

struct Settings {
    beta: f64,
    omega: f64,
    gamma: f64,
    dim: usize,
    interior: usize,
    alpha: f64,
    nu: f64,
    mu: f64,
    p_max: f64,
    grid: usize,
    perturb: Option<f64>,
}

fn algebra_suite(s: &Settings, th: &Thresholds) -> Result<SuiteReport, CliError> {
    let p = derive_params(s.beta, s.omega, s.gamma)?;
    let mut ops = build_operator_set(s.dim, s.interior, &p)?;
    if let Some(eps) = s.perturb {
        ops.a = ops.a.scale_real(1.0 + eps);
        ops.a_dag = ops.a_dag.scale_real(1.0 + eps);
    }
    let report = check_algebra(&ops)?;
    let (checks, pass) = judge("algebra", &report.residuals, &th.algebra)?;
    let mut params = json!({
        "beta": s.beta,
        "omega": s.omega,
        "gamma": s.gamma,
        "dim": s.dim,
        "interior": s.interior,
        "nu": p.nu,
        "alpha": p.alpha,
    });
    if let Some(eps) = s.perturb {
        params["perturb_kappa"] = json!(eps);
    }
    Ok(SuiteReport {
        suite: "algebra",
        params,
        checks,
        diagnostics: report.diagnostics,
        pass,
    })
}

fn ddim_suite(s: &Settings, th: &Thresholds) -> Result<SuiteReport, CliError> {
    let set = build_ddim_ladder(s.dim, s.interior, s.alpha, s.nu, s.mu)?;
    let report = check_ddim_algebra(&set)?;
    let (checks, pass) = judge("ddim", &report.residuals, &th.ddim)?;
    Ok(SuiteReport {
        suite: "ddim",
        params: json!({
            "alpha": s.alpha,
            "nu": s.nu,
            "mu": s.mu,
            "dim": s.dim,
            "interior": s.interior,
            "offset": set.offset,
            "central": set.c_const,
        }),
        checks,
        diagnostics: report.diagnostics,
        pass,
    })
}

fn maps_suite(s: &Settings, th: &Thresholds) -> Result<SuiteReport, CliError> {
    const LADDER_N_MAX: usize = 100;
    const SPECTRUM_N_MAX: usize = 200;
    const FINITE_K: usize = 3;
    let p = derive_params(s.beta, s.omega, s.gamma)?;
    let map = number_operator_map(p.nu)?;
    let bose = bose_map_check(LADDER_N_MAX, p.nu)?;
    let rep = finite_rep_condition(FINITE_K, s.omega)?;
    let mut residuals = BTreeMap::new();
    residuals.insert(
        "number_spectrum".into(),
        map.spectrum_residual(&p, SPECTRUM_N_MAX),
    );
    residuals.insert("bose_route".into(), bose.bose_route);
    residuals.insert("k_raising_route".into(), bose.k_raising_route);
    residuals.insert("k_lowering_route".into(), bose.k_lowering_route);
    residuals.insert(
        "casimir_relative".into(),
        (bose.casimir / (p.nu * (p.nu - 1.0))).abs(),
    );
    residuals.insert("finite_rep_phi".into(), rep.phi_residual);
    let (checks, pass) = judge("maps", &residuals, &th.maps)?;
    Ok(SuiteReport {
        suite: "maps",
        params: json!({
            "beta": s.beta,
            "omega": s.omega,
            "gamma": s.gamma,
            "nu": p.nu,
            "ladder_n_max": LADDER_N_MAX,
            "spectrum_n_max": SPECTRUM_N_MAX,
            "selected_offset": map.selected,
            "number_rejection_c0": map.rejection_c0,
            "finite_rep_k": FINITE_K,
            "finite_rep_beta": rep.beta,
            "finite_rep_physical_branch": rep.physical_branch,
        }),
        checks,
        diagnostics: BTreeMap::new(),
        pass,
    })
}

fn coefficients_suite(s: &Settings, th: &Thresholds) -> Result<SuiteReport, CliError> {
    const N_MAX: usize = 64;
    let p = derive_params(s.beta, s.omega, s.gamma)?;
    let nu = p.nu;
    let rel = |num: f64, scale: f64| num.abs() / scale.abs().max(1.0);
    let mut kappa_sq = 0.0f64;
    let mut f_diff = 0.0f64;
    let mut anti_sum = 0.0f64;
    let mut route = 0.0f64;
    for n in 0..=N_MAX {
        let phi_n = phi(n, nu)?;
        let phi_up = phi(n + 1, nu)?;
        let k = kappa(n, nu)?;
        kappa_sq = kappa_sq.max(rel(k * k - phi_n, phi_n));
        f_diff = f_diff.max(rel(f_structure(n, nu)? - (phi_up - phi_n), phi_up - phi_n));
        anti_sum = anti_sum.max(rel(
            anticommutator_structure(n, nu)? - (phi_up + phi_n),
            phi_up + phi_n,
        ));
        route = route.max(rel(phi_factorized(n, nu)? - phi_n, phi_n));
    }
    let mut residuals = BTreeMap::new();
    residuals.insert("kappa_squared_vs_phi".into(), kappa_sq);
    residuals.insert("f_vs_phi_difference".into(), f_diff);
    residuals.insert("anticommutator_vs_phi_sum".into(), anti_sum);
    residuals.insert("phi_route_agreement".into(), route);
    let (checks, pass) = judge("coefficients", &residuals, &th.coefficients)?;
    Ok(SuiteReport {
        suite: "coefficients",
        params: json!({
            "beta": s.beta,
            "omega": s.omega,
            "gamma": s.gamma,
            "nu": nu,
            "n_max": N_MAX,
        }),
        checks,
        diagnostics: BTreeMap::new(),
        pass,
    })
}

fn momentum_suite(s: &Settings, th: &Thresholds) -> Result<SuiteReport, CliError> {
    let r = momentum_grid_commutator_check(s.beta, s.gamma, s.p_max, s.grid)?;
    let theory = s.beta * r.h * r.h / 2.0;
    let mut residuals = BTreeMap::new();
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("theory_h2".into(), theory);
    if s.beta == 0.0 {
        // Undeformed grid: the commutator is exact up to rounding.
        residuals.insert("interior_residual".into(), r.residual);
    } else {
        // Deformed grid: the residual itself is the known h^2 truncation,
        // so the check is its relative distance from that value.
        residuals.insert(
            "theory_deviation_rel".into(),
            (r.residual - theory).abs() / theory,
        );
        diagnostics.insert("interior_residual".into(), r.residual);
    }
    let (checks, pass) = judge("momentum-grid", &residuals, &th.momentum_grid)?;
    Ok(SuiteReport {
        suite: "momentum-grid",
        params: json!({
            "beta": s.beta,
            "gamma": s.gamma,
            "p_max": r.p_max,
            "grid": r.grid_size,
            "h": r.h,
        }),
        checks,
        diagnostics,
        pass,
    })
}

pub fn run(
    args: &VerifyArgs,
    cfg: &FileConfig,
    format: Format,
    precision: usize,
) -> Result<(String, bool), CliError> {
    let sec = cfg.verify.as_ref();
    let suite = match args.suite {
        Some(s) => s,
        None => match sec.and_then(|s| s.suite.as_deref()) {
            Some(name) => Suite::from_name(name)?,
            None => Suite::Algebra,
        },
    };
    let settings = Settings {
        beta: args.beta.or(sec.and_then(|s| s.beta)).unwrap_or(0.2),
        omega: args.omega.or(sec.and_then(|s| s.omega)).unwrap_or(1.0),
        gamma: args.gamma.or(sec.and_then(|s| s.gamma)).unwrap_or(0.0),
        dim: args.dim.or(sec.and_then(|s| s.dim)).unwrap_or(64),
        interior: args.interior.or(sec.and_then(|s| s.interior)).unwrap_or(40),
        alpha: args.alpha.or(sec.and_then(|s| s.alpha)).unwrap_or(0.8),
        nu: args.nu.or(sec.and_then(|s| s.nu)).unwrap_or(4.7),
        mu: args.mu.or(sec.and_then(|s| s.mu)).unwrap_or(2.3),
        p_max: args.p_max.or(sec.and_then(|s| s.p_max)).unwrap_or(10.0),
        grid: args.grid.or(sec.and_then(|s| s.grid)).unwrap_or(2048),
        perturb: args.perturb_kappa,
    };
    let sweep = args.sweep.or(sec.and_then(|s| s.sweep));
    let seed = args.seed.or(sec.and_then(|s| s.seed)).unwrap_or(42);

    if settings.perturb.is_some() && suite != Suite::Algebra {
        return Err(CliError::Config(
            "--perturb-kappa only applies to the algebra suite".into(),
        ));
    }
    if settings.perturb.is_some() && sweep.is_some() {
        return Err(CliError::Config(
            "--perturb-kappa and --sweep cannot be combined".into(),
        ));
    }

    let thresholds_path = args
        .thresholds
        .clone()
        .or_else(|| sec.and_then(|s| s.thresholds.clone()));
    let (thresholds_label, thresholds_text) = match &thresholds_path {
        Some(path) => (
            path.display().to_string(),
            fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("reading thresholds {}: {e}", path.display()))
            })?,
        ),
        None => ("embedded".to_string(), EMBEDDED_THRESHOLDS.to_string()),
    };
    let th: Thresholds = toml::from_str(&thresholds_text)
        .map_err(|e| CliError::Config(format!("thresholds {thresholds_label}: {e}")))?;

    let run_one = |s: &Settings, which: Suite| -> Result<Vec<SuiteReport>, CliError> {
        Ok(match which {
            Suite::Algebra => vec![algebra_suite(s, &th)?],
            Suite::Maps => vec![maps_suite(s, &th)?],
            Suite::Coefficients => vec![coefficients_suite(s, &th)?],
            Suite::MomentumGrid => vec![momentum_suite(s, &th)?],
            Suite::Ddim => vec![ddim_suite(s, &th)?],
            Suite::All => vec![
                algebra_suite(s, &th)?,
                coefficients_suite(s, &th)?,
                maps_suite(s, &th)?,
                momentum_suite(s, &th)?,
                ddim_suite(s, &th)?,
            ],
        })
    };

    let suites = match sweep {
        None => run_one(&settings, suite)?,
        Some(count) => {
            if !matches!(suite, Suite::Algebra | Suite::Maps | Suite::Coefficients) {
                return Err(CliError::Config(
                    "--sweep samples the deformation strength, so it needs a \
                     beta-dependent suite (algebra, maps, or coefficients)"
                        .into(),
                ));
            }
            if count == 0 {
                return Err(CliError::Config("--sweep needs at least one sample".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut betas: Vec<f64> = (0..count)
                .map(|_| 0.02 * 100.0f64.powf(rng.gen::<f64>()))
                .collect();
            betas.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
            let mut out = Vec::with_capacity(count);
            for beta in betas {
                let s = Settings { beta, ..settings };
                out.extend(run_one(&s, suite)?);
            }
            out
        }
    };

    let pass = suites.iter().all(|s| s.pass);
    let report = Report {
        command: "verify",
        suite: suite.name(),
        thresholds: thresholds_label,
        sweep,
        seed: sweep.map(|_| seed),
        pass,
        suites,
    };

    let body = match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut table = Csv::new(
                &["suite", "beta", "name", "kind", "value", "threshold", "pass"],
                precision,
            );
            for s in &report.suites {
                let beta = s.params.get("beta").and_then(Value::as_f64);
                let beta_cell = || beta.map_or(Cell::Empty, Cell::Float);
                for (name, check) in &s.checks {
                    table.push(vec![
                        Cell::Str(s.suite.into()),
                        beta_cell(),
                        Cell::Str(name.clone()),
                        Cell::Str("residual".into()),
                        Cell::Float(check.value),
                        Cell::Float(check.threshold),
                        Cell::Bool(check.pass),
                    ]);
                }
                for (name, &value) in &s.diagnostics {
                    table.push(vec![
                        Cell::Str(s.suite.into()),
                        beta_cell(),
                        Cell::Str(name.clone()),
                        Cell::Str("diagnostic".into()),
                        Cell::Float(value),
                        Cell::Empty,
                        Cell::Empty,
                    ]);
                }
            }
            table.render()
        }
    };
    Ok((body, !pass))
}
