mod common;

use common::{column, parse_csv, run_json, run_ok, validate_schema};

#[test]
fn ground_state_table_is_even() {
    let body = run_ok(&[
        "wavefn", "--n", "0", "--beta", "0.2", "--omega", "1", "--samples", "101",
        "--format", "csv",
    ]);
    let (header, rows) = parse_csv(&body);
    assert_eq!(header, ["y", "psi"]);
    assert_eq!(rows.len(), 101);
    let psi = column(&body, "psi");
    for i in 0..psi.len() {
        let mirrored = psi[psi.len() - 1 - i];
        assert!(
            (psi[i] - mirrored).abs() < 1e-12,
            "even symmetry at index {i}"
        );
    }
    assert!(psi.iter().all(|&v| v > 0.0), "nodeless ground state");
}

#[test]
fn fifth_level_changes_sign_five_times() {
    let body = run_ok(&["wavefn", "--n", "5", "--beta", "0.2", "--samples", "501", "--format", "csv"]);
    let psi = column(&body, "psi");
    let sign_changes = psi
        .windows(2)
        .filter(|w| w[0].signum() != w[1].signum())
        .count();
    assert_eq!(sign_changes, 5);
}

#[test]
fn sample_report_validates() {
    let doc = run_json(&["wavefn", "--n", "2", "--model", "oscillator", "--samples", "11"]);
    validate_schema(&doc, "wavefn.schema.json");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn gram_matrix_is_numerically_orthonormal() {
    let doc = run_json(&["wavefn", "--gram", "--n-max", "12"]);
    validate_schema(&doc, "wavefn-gram.schema.json");
    assert!(doc["max_offdiag"].as_f64().unwrap() < 1e-10);
    assert!(doc["max_diag_dev"].as_f64().unwrap() < 1e-10);
    assert_eq!(doc["matrix"].as_array().unwrap().len(), 13);
}

#[test]
fn gram_rejects_the_oscillator_family() {
    assert_eq!(common::exit_code(&["wavefn", "--gram", "--model", "oscillator"]), 2);
}
