mod common;

use common::{column, run_json, run_ok, validate_schema};

#[test]
fn route_equality_holds_on_every_row() {
    let body = run_ok(&[
        "ddim-spectrum", "--dim", "3", "--l", "2", "--beta", "0.05", "--beta-prime", "0.02",
        "--mass", "1", "--omega", "1", "--n-max", "8", "--format", "csv",
    ]);
    let devs = column(&body, "route_dev");
    assert_eq!(devs.len(), 4, "n = 2, 4, 6, 8");
    assert!(devs.iter().all(|&d| d < 1e-10), "route gaps {devs:?}");
}

#[test]
fn report_carries_wall_indices_and_multiplicity() {
    let doc = run_json(&[
        "ddim-spectrum", "--dim", "3", "--l", "2", "--beta", "0.05", "--beta-prime", "0.02",
        "--n-max", "8",
    ]);
    validate_schema(&doc, "ddim-spectrum.schema.json");
    // l = 2 in three dimensions: mu = l + 1 and 2l + 1 magnetic states.
    assert!((doc["mu"].as_f64().unwrap() - 3.0).abs() < 1e-14);
    for row in doc["rows"].as_array().unwrap() {
        assert_eq!(row["multiplicity"], 5);
        let n = row["n"].as_u64().unwrap();
        let n_r = row["n_r"].as_u64().unwrap();
        assert_eq!(n, 2 * n_r + 2);
    }
}

#[test]
fn one_dimensional_limit_matches_the_oscillator_listing() {
    let radial = run_json(&["ddim-spectrum", "--dim", "1", "--l", "0", "--beta", "0.2", "--n-max", "6"]);
    let line = run_json(&["spectrum", "--beta", "0.2", "--n-max", "6"]);
    // Even principal levels of the 1D oscillator are the l = 0 radial tower.
    for row in radial["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap() as usize;
        let e_radial = row["e_full"].as_f64().unwrap();
        let e_line = line["rows"][n]["e_closed"].as_f64().unwrap();
        assert!(
            (e_radial - e_line).abs() < 1e-11 * e_line.abs().max(1.0),
            "n={n}: {e_radial} vs {e_line}"
        );
    }
}

#[test]
fn levels_below_l_are_rejected() {
    assert_eq!(
        common::exit_code(&["ddim-spectrum", "--dim", "3", "--l", "4", "--n-max", "2"]),
        2
    );
}
