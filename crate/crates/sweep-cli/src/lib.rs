//! `harvest-lab`: a command-line front end over the delta-coupled detector
//! engine and the finite-dimensional no-go lab. It emits sweep artifacts
//! (gap sweeps, strength sweeps, and a time-plane region map), runs
//! randomized verification suites for the separability theorems, replays
//! the exactly solvable toy circuits, and self-tests the installation.
//!
//! Artifacts are deterministic: the same command line and seed produce
//! byte-identical files, with sweep points evaluated concurrently but
//! written in input order.

pub mod cli;
pub mod output;
pub mod params;
pub mod selftest;
pub mod sweeps;
pub mod toycmd;
pub mod verify;

use std::f64::consts::PI;

use anyhow::Result;

use cli::{Cli, Command, FormatArg};
use output::Metadata;

/// Executes a parsed command line and returns the process exit code:
/// 0 on success, 1 when a verification-style command found a violation.
/// Setup problems (bad flags, config, ranges, paths) surface as errors,
/// which the binary maps to exit code 2.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::SweepGap {
            common,
            min,
            max,
            steps,
        } => {
            let p = params::resolve(&common)?;
            let schedule = params::build_schedule(&p)?;
            let (table, summary) = sweeps::sweep_gap(
                &p,
                &schedule,
                min.unwrap_or(0.0),
                max.unwrap_or(8.0 * PI),
                steps.unwrap_or(257),
            )?;
            emit(&p, &table, &summary)?;
            Ok(0)
        }
        Command::SweepLambda {
            common,
            min,
            max,
            steps,
        } => {
            let p = params::resolve(&common)?;
            let (table, summary) = sweeps::sweep_lambda(
                &p,
                min.unwrap_or(1e-3),
                max.unwrap_or(20.0),
                steps.unwrap_or(120),
            )?;
            emit(&p, &table, &summary)?;
            Ok(0)
        }
        Command::RegionMap {
            common,
            ta1_min,
            ta1_max,
            ta1_steps,
            ta2_min,
            ta2_max,
            ta2_steps,
            omega_samples,
        } => {
            let mut common = common;
            // The map sweeps A's times itself; only strength, B's time, and
            // B's gap matter. A light strength keeps the map perturbative.
            if common.lambda.is_none() {
                common.lambda = Some(0.01);
            }
            let p = params::resolve(&common)?;
            let (table, summary) = sweeps::region_map(
                &p,
                (
                    ta1_min.unwrap_or(0.05),
                    ta1_max.unwrap_or(2.0),
                    ta1_steps.unwrap_or(40),
                ),
                (
                    ta2_min.unwrap_or(0.01),
                    ta2_max.unwrap_or(2.0575),
                    ta2_steps.unwrap_or(40),
                ),
                omega_samples.unwrap_or(64),
            )?;
            emit(&p, &table, &summary)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            trials,
            common,
        } => {
            let p = params::resolve(&common)?;
            let report = verify::run_verify(suite, trials, p.seed, p.jobs)?;
            output::write_artifact(p.out.as_deref(), &verify::render_report(&report))?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Toy { circuit, common } => {
            let p = params::resolve(&common)?;
            let (table, summary, all_ok) = toycmd::run_toys(circuit.as_deref())?;
            emit(&p, &table, &summary)?;
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Selftest { common } => {
            let p = params::resolve(&common)?;
            Ok(if selftest::run_selftest(p.seed)? { 0 } else { 1 })
        }
    }
}

fn emit(p: &params::Resolved, table: &output::Table, summary: &output::Summary) -> Result<()> {
    let meta = Metadata::capture(p.seed);
    let content = match p.format {
        FormatArg::Csv => output::render_csv(&meta, table, summary),
        FormatArg::Json => output::render_json(&meta, table, summary),
    };
    output::write_artifact(p.out.as_deref(), &content)
}
