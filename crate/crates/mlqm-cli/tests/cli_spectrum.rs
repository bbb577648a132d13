mod common;

use common::{column, parse_csv, run_json, run_ok, validate_schema};

#[test]
fn csv_lists_eleven_monotone_levels() {
    let body = run_ok(&[
        "spectrum", "--beta", "0.2", "--omega", "1", "--n-max", "10", "--format", "csv",
    ]);
    let (header, rows) = parse_csv(&body);
    assert_eq!(header, ["n", "e_closed", "e_recursion"]);
    assert_eq!(rows.len(), 11);
    let energies = column(&body, "e_closed");
    assert!(energies.windows(2).all(|w| w[0] < w[1]), "monotone levels");
}

#[test]
fn tiny_deformation_recovers_the_plain_oscillator() {
    let doc = run_json(&["spectrum", "--beta", "1e-8", "--omega", "1", "--n-max", "3"]);
    validate_schema(&doc, "spectrum.schema.json");
    for (n, want) in [0.5, 1.5, 2.5, 3.5].iter().enumerate() {
        let row = &doc["rows"][n];
        assert_eq!(row["n"], n);
        for key in ["e_closed", "e_recursion"] {
            let got = row[key].as_f64().unwrap();
            assert!(
                (got - want).abs() < 1e-7,
                "level {n} {key}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn recursion_route_tracks_the_closed_form() {
    let body = run_ok(&["spectrum", "--n-max", "20", "--format", "csv"]);
    let closed = column(&body, "e_closed");
    let recursion = column(&body, "e_recursion");
    for (c, r) in closed.iter().zip(&recursion) {
        assert!((c - r).abs() <= 1e-11 * c.abs(), "{c} vs {r}");
    }
}

#[test]
fn oracle_columns_appear_on_request_and_stay_close() {
    let doc = run_json(&[
        "spectrum", "--beta", "0.2", "--n-max", "5", "--oracle-grid", "2000",
    ]);
    validate_schema(&doc, "spectrum.schema.json");
    for row in doc["rows"].as_array().unwrap() {
        let rel = row["rel_dev"].as_f64().unwrap();
        assert!(rel < 5e-4, "oracle deviation {rel}");
        let abs = row["abs_dev"].as_f64().unwrap();
        let e = row["e_closed"].as_f64().unwrap();
        assert!((abs - (row["e_oracle"].as_f64().unwrap() - e).abs()) < 1e-15);
    }
}

#[test]
fn well_family_sits_one_shift_above_the_oscillator() {
    let osc = run_json(&["spectrum", "--beta", "0.2", "--n-max", "4"]);
    let spt = run_json(&["spectrum", "--model", "spt", "--beta", "0.2", "--n-max", "4"]);
    let shift = 1.0 / (2.0 * 0.2);
    for n in 0..=4 {
        let a = osc["rows"][n]["e_closed"].as_f64().unwrap();
        let b = spt["rows"][n]["e_closed"].as_f64().unwrap();
        assert!((b - a - shift).abs() < 1e-12, "n={n}: {b} vs {a}+{shift}");
    }
}
