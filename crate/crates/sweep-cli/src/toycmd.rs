//! The `toy` subcommand: run the exactly solvable CNOT circuits and report
//! each against its predicted Bell-pair outcome.

use anyhow::{bail, Result};
use nogo_lab::ToyCircuit;

use crate::output::{Cell, Summary, Table};

/// Fidelity / negativity tolerance for declaring a circuit reproduced.
pub const TOY_TOL: f64 = 1e-10;

/// Runs the named circuit, or all four when `name` is `None`. Returns the
/// result table and whether every run matched its prediction.
pub fn run_toys(name: Option<&str>) -> Result<(Table, Summary, bool)> {
    let circuits: Vec<ToyCircuit> = match name {
        Some(n) => match ToyCircuit::from_name(n) {
            Some(c) => vec![c],
            None => {
                let known: Vec<&str> = ToyCircuit::ALL.iter().map(|c| c.name()).collect();
                bail!("unknown toy circuit {n:?}; known: {}", known.join(", "));
            }
        },
        None => ToyCircuit::ALL.to_vec(),
    };
    let mut rows = Vec::new();
    let mut all_ok = true;
    for circuit in &circuits {
        let outcome = circuit.run()?;
        let ok = outcome.fidelity >= 1.0 - TOY_TOL && (outcome.negativity - 0.5).abs() <= TOY_TOL;
        all_ok &= ok;
        rows.push(vec![
            Cell::Text(circuit.name().to_string()),
            Cell::Num(outcome.fidelity),
            Cell::Num(outcome.negativity),
            Cell::Text(if ok { "pass" } else { "fail" }.to_string()),
        ]);
    }
    let table = Table {
        columns: vec!["circuit", "fidelity", "negativity", "status"],
        rows,
    };
    let summary: Summary = vec![(
        "all_circuits",
        Cell::Text(if all_ok { "pass" } else { "fail" }.to_string()),
    )];
    Ok((table, summary, all_ok))
}
