mod common;

use common::{exit_code, run, run_json, run_ok, validate_schema};

#[test]
fn default_algebra_suite_passes_under_shipped_thresholds() {
    let doc = run_json(&["verify"]);
    validate_schema(&doc, "verify.schema.json");
    assert_eq!(doc["suite"], "algebra");
    assert_eq!(doc["pass"], true);
    let checks = doc["suites"][0]["checks"].as_object().unwrap();
    assert_eq!(checks.len(), 12, "twelve thresholded identities");
    for (name, check) in checks {
        assert_eq!(check["pass"], true, "{name}");
        assert!(check["value"].as_f64().unwrap() < 1e-10, "{name}");
    }
}

#[test]
fn every_suite_passes_at_the_defaults() {
    let doc = run_json(&["verify", "--suite", "all"]);
    validate_schema(&doc, "verify.schema.json");
    assert_eq!(doc["pass"], true);
    let suites = doc["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 5);
    // The radial diagnostics stay unthresholded: both printed-form variants
    // of the commutators sit far from zero at these wall indices.
    let ddim = suites.iter().find(|s| s["suite"] == "ddim").unwrap();
    for key in ["hk_commutator_printed_form", "ha_commutator_printed_form"] {
        assert!(ddim["diagnostics"][key].as_f64().unwrap() > 1e-2);
    }
}

#[test]
fn corrupted_ladder_elements_breach_and_exit_three() {
    let out = run(&["verify", "--perturb-kappa", "1e-6"]);
    assert_eq!(out.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], false);
    // The structure-function identity moves by the injected epsilon times
    // the scale of the coefficients, far past its ceiling.
    let check = &doc["suites"][0]["checks"]["aad_commutator"];
    assert_eq!(check["pass"], false);
    assert!(check["value"].as_f64().unwrap() > 1e-8);
}

#[test]
fn flat_momentum_grid_is_exact_to_rounding() {
    let doc = run_json(&["verify", "--suite", "momentum-grid", "--beta", "0", "--gamma", "0"]);
    let check = &doc["suites"][0]["checks"]["interior_residual"];
    assert!(check["value"].as_f64().unwrap() < 1e-10);
    assert_eq!(doc["pass"], true);
}

#[test]
fn deformed_momentum_grid_matches_the_h2_truncation() {
    let doc = run_json(&["verify", "--suite", "momentum-grid", "--beta", "0.2"]);
    assert_eq!(doc["pass"], true);
    let dev = doc["suites"][0]["checks"]["theory_deviation_rel"]["value"]
        .as_f64()
        .unwrap();
    assert!(dev < 1e-2, "relative distance from beta h^2 / 2: {dev}");
}

#[test]
fn sweep_is_deterministic_and_sorted() {
    let args = ["verify", "--suite", "coefficients", "--sweep", "5", "--seed", "7"];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(first, second, "same seed, same bytes");
    let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["seed"], 7);
    let betas: Vec<f64> = doc["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["params"]["beta"].as_f64().unwrap())
        .collect();
    assert_eq!(betas.len(), 5);
    assert!(betas.windows(2).all(|w| w[0] <= w[1]), "sorted: {betas:?}");
    assert!(betas.iter().all(|&b| (0.02..=2.0).contains(&b)));
}

#[test]
fn different_seeds_sample_different_strengths() {
    let a = run_json(&["verify", "--suite", "coefficients", "--sweep", "3", "--seed", "1"]);
    let b = run_json(&["verify", "--suite", "coefficients", "--sweep", "3", "--seed", "2"]);
    assert_ne!(
        a["suites"][0]["params"]["beta"],
        b["suites"][0]["params"]["beta"]
    );
}

#[test]
fn misuse_is_a_usage_error() {
    assert_eq!(exit_code(&["verify", "--suite", "nonsense"]), 2);
    assert_eq!(exit_code(&["verify", "--suite", "ddim", "--perturb-kappa", "1e-6"]), 2);
    assert_eq!(exit_code(&["verify", "--suite", "momentum-grid", "--sweep", "3"]), 2);
    assert_eq!(exit_code(&["verify", "--sweep", "0"]), 2);
}
