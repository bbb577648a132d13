//! `mlqm paper-tables`: recompute the pinned reference values that anchor
//! the test suite, each tagged with the method that produced it. The output
//! is the living ledger of what the closed forms, recursions, identities,
//! and oracles are expected to say.

use serde::Serialize;

use mlqm::algebra::{
    build_operator_set, check_algebra, f_structure, finite_rep_condition, kappa,
    number_operator_map, phi,
};
use mlqm::ddim::{
    ddim_derive, ddim_energy_closed, ddim_energy_printed_form, ddim_energy_route_well, ddim_phi,
    magnetic_degeneracy,
};
use mlqm::oracle::{convergence_order, momentum_grid_commutator_check, solve_oscillator_fd};
use mlqm::params::{derive_params, min_position_uncertainty};
use mlqm::spectrum::{energy_osc, energy_spt, spectrum_by_recursion};
use mlqm::wavefn::{gram_defect, gram_matrix, node_count, psi_ground};

use crate::output::{to_json, Cell, Csv, Format};
use crate::CliError;

#[derive(Serialize)]
struct Row {
    table: &'static str,
    quantity: &'static str,
    value: f64,
    method: &'static str,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    rows: Vec<Row>,
}

pub fn run(format: Format, precision: usize) -> Result<String, CliError> {
    let mut rows = Vec::new();
    let mut push = |table, quantity, value, method| {
        rows.push(Row {
            table,
            quantity,
            value,
            method,
        })
    };

    let p = derive_params(0.2, 1.0, 0.0)?;
    push("parameters", "nu at beta 0.2 omega 1", p.nu, "closed-form");
    push(
        "parameters",
        "alpha at beta 0.2 omega 1",
        p.alpha,
        "closed-form",
    );
    push(
        "parameters",
        "minimal position uncertainty at beta 0.2",
        min_position_uncertainty(0.2)?,
        "closed-form",
    );

    push("levels-1d", "well ground level", energy_spt(0, &p), "closed-form");
    push(
        "levels-1d",
        "oscillator ground level",
        energy_osc(0, &p),
        "closed-form",
    );
    push(
        "levels-1d",
        "oscillator level 10",
        energy_osc(10, &p),
        "closed-form",
    );
    let recursion = spectrum_by_recursion(20, &p)?;
    let recursion_gap = (0..=20)
        .map(|n| {
            let a = recursion.energy(n).expect("level in range");
            let b = energy_spt(n, &p);
            (a - b).abs() / b
        })
        .fold(0.0f64, f64::max);
    push(
        "levels-1d",
        "recursion route max relative gap for n up to 20",
        recursion_gap,
        "recursion",
    );

    push("ladder-1d", "phi(1)", phi(1, p.nu)?, "closed-form");
    push("ladder-1d", "kappa(1)", kappa(1, p.nu)?, "closed-form");
    push(
        "ladder-1d",
        "f(0) minus phi(1) residual",
        f_structure(0, p.nu)? - (phi(1, p.nu)? - phi(0, p.nu)?),
        "identity",
    );
    let ops = build_operator_set(64, 40, &p)?;
    push(
        "ladder-1d",
        "worst interior residual of the operator identities",
        check_algebra(&ops)?.max_residual(),
        "identity",
    );
    push(
        "ladder-1d",
        "selected number-operator offset",
        number_operator_map(p.nu)?.selected,
        "identity",
    );
    push(
        "ladder-1d",
        "finite ladder deformation strength at k 3",
        finite_rep_condition(3, 1.0)?.beta,
        "closed-form",
    );

    push(
        "wavefunctions",
        "ground-state value at the origin",
        psi_ground(0.0, &p)?,
        "closed-form",
    );
    push(
        "wavefunctions",
        "gram defect for levels up to 12",
        gram_defect(&gram_matrix(12, &p)?),
        "quadrature",
    );
    push(
        "wavefunctions",
        "node count of level 5",
        node_count(5, &p, 4001)? as f64,
        "sampling",
    );

    let fd_ground = |grid: usize| -> Result<f64, CliError> {
        let fd = solve_oscillator_fd(&p, grid, 1)?;
        let e = fd.energy(0).expect("ground level");
        Ok((e - energy_osc(0, &p)).abs() / energy_osc(0, &p))
    };
    push(
        "oracle",
        "finite-difference relative error of the ground level at grid 2000",
        fd_ground(2000)?,
        "finite-difference",
    );
    let width = std::f64::consts::PI / p.beta.sqrt();
    let pairs: Vec<(f64, f64)> = [500usize, 1000, 2000]
        .iter()
        .map(|&g| Ok((width / g as f64, fd_ground(g)?)))
        .collect::<Result<_, CliError>>()?;
    push(
        "oracle",
        "measured convergence order at grids 500 1000 2000",
        convergence_order(&pairs)?,
        "finite-difference",
    );

    let dp = ddim_derive(3, 2, 1.0, 1.0, 0.05, 0.02, 0.0)?;
    push("radial-ddim", "outer wall index nu", dp.nu, "closed-form");
    push(
        "radial-ddim",
        "centrifugal wall index mu",
        dp.mu,
        "closed-form",
    );
    push(
        "radial-ddim",
        "physical level at n 2",
        ddim_energy_closed(2, 2, &dp)?,
        "closed-form",
    );
    let route_gap = {
        let a = ddim_energy_closed(8, 2, &dp)?;
        let b = ddim_energy_route_well(8, 2, &dp)?;
        (a - b).abs() / b.abs()
    };
    push("radial-ddim", "route gap at n 8", route_gap, "identity");
    push(
        "radial-ddim",
        "phi(1) at nu 3 mu 2",
        ddim_phi(1, 3.0, 2.0)?,
        "closed-form",
    );
    let display_gap = {
        let dp5 = ddim_derive(5, 0, 1.0, 1.0, 0.2, 0.0, 0.0)?;
        ddim_energy_closed(4, 0, &dp5)? - ddim_energy_printed_form(4, 0, &dp5)?
    };
    push(
        "radial-ddim",
        "display-form deficit at dim 5 beta 0.2 n 4",
        display_gap,
        "identity",
    );
    push(
        "radial-ddim",
        "magnetic multiplicity at dim 4 l 3",
        magnetic_degeneracy(4, 3)? as f64,
        "closed-form",
    );

    let grid_report = momentum_grid_commutator_check(0.2f64, 0.0, 10.0, 2048)?;
    let theory = 0.2 * grid_report.h * grid_report.h / 2.0;
    push(
        "momentum-grid",
        "interior residual minus h2 truncation at beta 0.2 grid 2048",
        (grid_report.residual - theory).abs(),
        "finite-difference",
    );
    push(
        "momentum-grid",
        "interior residual at beta 0",
        momentum_grid_commutator_check(0.0f64, 0.0, 10.0, 2048)?.residual,
        "finite-difference",
    );

    let report = Report {
        command: "paper-tables",
        rows,
    };

    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut table = Csv::new(&["table", "quantity", "value", "method"], precision);
            for row in &report.rows {
                table.push(vec![
                    Cell::Str(row.table.into()),
                    Cell::Str(row.quantity.into()),
                    Cell::Float(row.value),
                    Cell::Str(row.method.into()),
                ]);
            }
            table.render()
        }
    })
}
