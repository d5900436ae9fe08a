//! Acceptance checks for the whole workspace, one test per criterion.
//!
//! Each test prints exactly one `acceptance NN PASS/FAIL` line naming the
//! behaviour, the measured value, the pinned tolerance, and the elapsed
//! time (run with `--nocapture` to see the lines for passing tests).

use std::time::Instant;

use fock_oracle::quadrature::{i_c_numeric, i_s_numeric};
use fock_oracle::{brute_h, match_amplitudes_for_context};
use nogo_lab::{eb_coupling_suite, two_commutator_suite, twoqubit_source_suite, ToyCircuit};
use num_complex::Complex64;
use qmat::{herm_eigvalsh, partial_transpose_raw, ComplexMatrix, HermitianOp};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sweep_cli::cli::{CommonArgs, SuiteArg};
use sweep_cli::output::Cell;
use sweep_cli::params::resolve;
use sweep_cli::sweeps::{detect_period, region_map, sweep_lambda};
use sweep_cli::verify::run_verify;
use udw_core::{
    h_function, i_c, i_s, AssembledSchedule, DeltaSchedule, KContext, SignPattern, XState,
};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

/// Runs one criterion, prints its single report line, and enforces the
/// optional wall-clock budget.
fn check(
    number: u8,
    name: &str,
    budget_secs: Option<f64>,
    body: impl FnOnce() -> Result<String, String>,
) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("acceptance {number:02} PASS {name} — {detail} [{elapsed:.2} s]");
            if let Some(budget) = budget_secs {
                assert!(
                    elapsed <= budget,
                    "acceptance {number:02} exceeded its {budget} s budget ({elapsed:.2} s)"
                );
            }
        }
        Err(reason) => {
            let line = format!("acceptance {number:02} FAIL {name} — {reason} [{elapsed:.2} s]");
            println!("{line}");
            panic!("{line}");
        }
    }
}

fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn summary_num(summary: &[(&'static str, Cell)], key: &str) -> Option<f64> {
    summary.iter().find(|(k, _)| *k == key).and_then(|(_, c)| match c {
        Cell::Num(v) => Some(*v),
        Cell::Text(_) => None,
    })
}

fn cell_num(cell: &Cell) -> f64 {
    match cell {
        Cell::Num(v) => *v,
        Cell::Text(t) => panic!("expected numeric cell, found {t:?}"),
    }
}

#[test]
fn criterion_01_toy_circuits_recover_the_bell_pair() {
    check(1, "toy gate sequences end in the Bell pair", Some(1.0), || {
        let tol = 1e-10;
        let mut worst_infidelity = 0.0f64;
        let mut worst_negativity_gap = 0.0f64;
        for circuit in ToyCircuit::ALL {
            let outcome = circuit
                .run()
                .map_err(|e| format!("{} failed to run: {e}", circuit.name()))?;
            worst_infidelity = worst_infidelity.max(1.0 - outcome.fidelity);
            worst_negativity_gap = worst_negativity_gap.max((outcome.negativity - 0.5).abs());
        }
        if worst_infidelity > tol || worst_negativity_gap > tol {
            return Err(format!(
                "worst infidelity {worst_infidelity:.3e}, worst |N - 1/2| \
                 {worst_negativity_gap:.3e} exceed tol {tol:.0e}"
            ));
        }
        Ok(format!(
            "4 circuits, worst infidelity {worst_infidelity:.3e}, \
             worst |N - 1/2| {worst_negativity_gap:.3e}, tol {tol:.0e}"
        ))
    });
}

#[test]
fn criterion_02_measured_couplings_break_entanglement() {
    check(2, "measure-and-reprepare channels never entangle", Some(60.0), || {
        let report = eb_coupling_suite(500, 0xACC0_0002).map_err(|e| e.to_string())?;
        if report.max_violation > 1e-10 {
            return Err(format!(
                "max separability violation {:.3e} > 1e-10 (worst trial {:?})",
                report.max_violation, report.worst_trial
            ));
        }
        Ok(format!(
            "500 random channel trials, max violation {:.3e}, tol 1e-10",
            report.max_violation
        ))
    });
}

#[test]
fn criterion_03_two_vanishing_commutators_kill_negativity() {
    check(3, "two vanishing commutator pairs force zero negativity", Some(120.0), || {
        let report = two_commutator_suite(500, 0xACC0_0003).map_err(|e| e.to_string())?;
        if report.max_violation > 1e-10 {
            return Err(format!(
                "max negativity {:.3e} > 1e-10 (worst trial {:?})",
                report.max_violation, report.worst_trial
            ));
        }
        Ok(format!(
            "500 random schedule trials, max negativity {:.3e}, tol 1e-10",
            report.max_violation
        ))
    });
}

#[test]
fn criterion_04_two_qubit_sources_stay_separable() {
    check(4, "two-qubit-source states with a measured qubit stay separable", Some(60.0), || {
        let report = twoqubit_source_suite(200, 0xACC0_0004).map_err(|e| e.to_string())?;
        if report.max_violation > 1e-10 {
            return Err(format!(
                "max separability violation {:.3e} > 1e-10 (worst trial {:?})",
                report.max_violation, report.worst_trial
            ));
        }
        Ok(format!(
            "200 random source trials, max violation {:.3e}, tol 1e-10",
            report.max_violation
        ))
    });
}

#[test]
fn criterion_05_single_late_coupling_grid_never_entangles() {
    check(5, "B-last delta schedules stay separable on a parameter grid", Some(300.0), || {
        let report =
            run_verify(SuiteArg::NogoAab, None, 0xACC0_0005, Some(1)).map_err(|e| e.to_string())?;
        if !report.passed {
            return Err(format!(
                "max negativity {:.3e} > {:.0e} over {} grid points ({:?})",
                report.max_violation, report.tolerance, report.trials, report.failing_instance
            ));
        }
        Ok(format!(
            "{} grid points (10x10 times x 10 gaps x 4 strengths), \
             max negativity {:.3e}, tol {:.0e}",
            report.trials, report.max_violation, report.tolerance
        ))
    });
}

/// Negativity of the B-first schedule `(0, ta1, ta2)` at detector gaps
/// `(omega_a, omega_b)`.
fn b_first(ta2: f64) -> AssembledSchedule {
    let schedule = DeltaSchedule::three_event(0.5, ta2, 0.0, 0.1, 0.0, 0.0).unwrap();
    assert_eq!(schedule.pattern().name(), "BAA");
    AssembledSchedule::new(&schedule)
}

#[test]
fn criterion_06_gap_dependence_is_periodic_with_resonant_zeros() {
    check(6, "negativity vs gap: periodic, resonant zeros, B-gap independent", Some(120.0), || {
        let zero_tol = 1e-12;

        // (a) A strictly positive harvesting peak exists.
        let assembled = b_first(1.0);
        let peak = (0..512)
            .map(|i| assembled.negativity_at(4.0 * PI * i as f64 / 512.0, 0.7).unwrap())
            .fold(0.0f64, f64::max);
        if peak <= 1e-6 {
            return Err(format!("no harvesting peak: max negativity {peak:.3e}"));
        }

        // (b) The period in the gap equals 2*pi over the coupling
        // separation, at the grid resolution of a 257-point sweep.
        let step = 8.0 * PI / 256.0;
        let mut period_details = Vec::new();
        for (ta2, separation) in [(1.0, 0.5), (1.5, 1.0)] {
            let assembled = b_first(ta2);
            let series: Vec<f64> = (0..257)
                .map(|i| assembled.negativity_at(step * i as f64, 0.7).unwrap())
                .collect();
            let expected = TAU / separation;
            let measured = detect_period(&series, step)
                .ok_or_else(|| format!("no period detected for ta2={ta2}"))?;
            if (measured - expected).abs() > 2.0 * step {
                return Err(format!(
                    "ta2={ta2}: period {measured:.4} vs expected {expected:.4} \
                     (resolution {step:.4})"
                ));
            }
            period_details.push(format!("{measured:.3}~{expected:.3}"));
        }
        // The same sweep at a separation of two is identically zero, so
        // no period exists there at all.
        let assembled = b_first(2.0);
        let flat = (0..512)
            .map(|i| assembled.negativity_at(4.0 * PI * i as f64 / 512.0, 0.7).unwrap())
            .fold(0.0f64, f64::max);
        if flat > zero_tol {
            return Err(format!("separation-2 sweep not flat: {flat:.3e}"));
        }

        // (c) Exact zeros whenever gap x separation is a multiple of 2*pi.
        let mut worst_resonance = 0.0f64;
        for (ta2, separation) in [(1.0, 0.5), (1.5, 1.0)] {
            let assembled = b_first(ta2);
            for k in 0..4 {
                let omega = TAU * k as f64 / separation;
                worst_resonance =
                    worst_resonance.max(assembled.negativity_at(omega, 0.7).unwrap());
            }
        }
        if worst_resonance > zero_tol {
            return Err(format!("resonant zero violated: {worst_resonance:.3e}"));
        }

        // (d) The gap of the single-coupling detector drops out.
        let assembled = b_first(1.0);
        let mut worst_shift = 0.0f64;
        for i in 0..16 {
            let omega = 4.0 * PI * i as f64 / 16.0;
            let base = assembled.negativity_at(omega, 0.0).unwrap();
            for omega_b in [1.0, 5.0, 20.0] {
                let shifted = assembled.negativity_at(omega, omega_b).unwrap();
                worst_shift = worst_shift.max((shifted - base).abs());
            }
        }
        if worst_shift > zero_tol {
            return Err(format!("B-gap dependence detected: {worst_shift:.3e}"));
        }

        Ok(format!(
            "peak {peak:.3e}; periods {} (grid step {step:.3}); \
             worst resonance {worst_resonance:.1e} and B-gap shift {worst_shift:.1e}, \
             tol {zero_tol:.0e}",
            period_details.join(", ")
        ))
    });
}

#[test]
fn criterion_07_coupling_strength_response_has_three_regimes() {
    check(7, "quadratic weak coupling, finite best strength, strong shutoff", Some(120.0), || {
        let p = resolve(&CommonArgs { jobs: Some(1), ..CommonArgs::default() })
            .map_err(|e| e.to_string())?;
        let (table, summary) = sweep_lambda(&p, 1e-3, 20.0, 120).map_err(|e| e.to_string())?;

        let slope = summary_num(&summary, "slope_smallest_decade")
            .ok_or("no slope in the sweep summary")?;
        if (slope - 2.0).abs() > 0.05 {
            return Err(format!("log-log slope {slope:.4} outside 2.00 +/- 0.05"));
        }

        let rows: Vec<(f64, f64)> = table
            .rows
            .iter()
            .map(|r| (cell_num(&r[0]), cell_num(&r[1])))
            .collect();
        let (argmax, peak) = rows
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty sweep");
        if peak <= 1e-2 || argmax <= 1e-3 || argmax >= 20.0 {
            return Err(format!(
                "no interior maximum: peak {peak:.3e} at lambda {argmax:.3}"
            ));
        }

        let shutoff = summary_num(&summary, "first_zero_after_max")
            .ok_or("no shutoff strength in the sweep summary")?;
        let worst_beyond = rows
            .iter()
            .filter(|(l, _)| *l >= shutoff)
            .map(|(_, n)| *n)
            .fold(0.0f64, f64::max);
        if worst_beyond > 1e-12 {
            return Err(format!(
                "negativity {worst_beyond:.3e} survives beyond lambda {shutoff:.3}"
            ));
        }

        Ok(format!(
            "slope {slope:.4} (tol 0.05), peak {peak:.3e} at lambda {argmax:.3}, \
             zero beyond lambda {shutoff:.3} (tol 1e-12)"
        ))
    });
}

#[test]
fn criterion_08_region_map_boundary_and_interior_structure() {
    check(8, "harvesting region map: boundary zeros, interior sliver", Some(600.0), || {
        let zero_tol = 1e-12;
        let p = resolve(&CommonArgs {
            lambda: Some(0.01),
            jobs: Some(1),
            ..CommonArgs::default()
        })
        .map_err(|e| e.to_string())?;
        let (table, _) =
            region_map(&p, (0.05, 2.0, 40), (0.01, 2.0575, 40), 64).map_err(|e| e.to_string())?;

        let rows: Vec<(f64, f64, f64, String)> = table
            .rows
            .iter()
            .map(|r| {
                let flags = match &r[3] {
                    Cell::Text(t) => t.clone(),
                    Cell::Num(v) => panic!("flags column held a number {v}"),
                };
                (cell_num(&r[0]), cell_num(&r[1]), cell_num(&r[2]), flags)
            })
            .collect();

        // A point with all three separations below two, but tuned so the
        // best gap still yields nothing.
        let dead = rows
            .iter()
            .find(|(a1, a2, _, _)| (a1 - 0.2).abs() < 1e-6 && (a2 - 1.9).abs() < 1e-6)
            .ok_or("grid misses the (0.2, 1.9) point")?;
        if dead.2 > zero_tol {
            return Err(format!("max negativity at (0.2, 1.9) is {:.3e}", dead.2));
        }

        // Harvesting survives somewhere past a separation of two.
        let sliver: Vec<&(f64, f64, f64, String)> =
            rows.iter().filter(|(_, a2, n, _)| *a2 > 2.0 && *n > 1e-8).collect();
        if sliver.is_empty() {
            return Err("no grid point with t_a2 > 2 harvests above 1e-8".into());
        }

        // Two or more vanishing commutator pairs always mean zero.
        let mut doubly_vanishing = 0usize;
        let mut worst = 0.0f64;
        for (_, _, n, flags) in &rows {
            if flags.chars().filter(|c| *c == '0').count() >= 2 {
                doubly_vanishing += 1;
                worst = worst.max(*n);
            }
        }
        if worst > zero_tol {
            return Err(format!(
                "doubly-vanishing point harvests {worst:.3e} > {zero_tol:.0e}"
            ));
        }

        Ok(format!(
            "40x40 grid: (0.2, 1.9) max {:.1e}; {} sliver points past \
             separation 2 (best {:.2e}); {} doubly-vanishing points all \
             below {zero_tol:.0e}",
            dead.2,
            sliver.len(),
            sliver.iter().map(|r| r.2).fold(0.0f64, f64::max),
            doubly_vanishing
        ))
    });
}

#[test]
fn criterion_09_kernel_integrals_match_quadrature_and_exact_values() {
    check(9, "closed kernel integrals vs adaptive quadrature", None, || {
        let tol = 1e-8;
        let mut worst = 0.0f64;
        for k in 0..25 {
            let x = -3.0 + 6.0 * k as f64 / 24.0;
            worst = worst.max((i_s(x) - i_s_numeric(x)).abs());
            worst = worst.max((i_c(x) - i_c_numeric(x)).abs());
        }
        if worst > tol {
            return Err(format!("worst quadrature mismatch {worst:.3e} > {tol:.0e}"));
        }

        let at_zero = (i_c(0.0) - 0.25).abs();
        let at_two = (i_c(2.0) - (5.0 - 8.0 * std::f64::consts::LN_2) / 12.0).abs();
        if at_zero > 1e-15 || at_two > 1e-15 {
            return Err(format!(
                "exact values missed: |i_c(0) - 1/4| = {at_zero:.3e}, \
                 |i_c(2) - (5 - 8 ln 2)/12| = {at_two:.3e}"
            ));
        }

        Ok(format!(
            "25 sample points, worst mismatch {worst:.3e} (tol {tol:.0e}); \
             exact checks at 0 and 2 within 1e-15"
        ))
    });
}

fn random_xstate<R: Rng>(rng: &mut R) -> XState {
    let raw: [f64; 4] = std::array::from_fn(|_| -rng.random::<f64>().max(1e-12).ln());
    let sum: f64 = raw.iter().sum();
    let d = raw.map(|x| x / sum);
    let r14 = Complex64::from_polar(
        (d[0] * d[3]).sqrt() * rng.random::<f64>(),
        rng.random_range(0.0..TAU),
    );
    let r23 = Complex64::from_polar(
        (d[1] * d[2]).sqrt() * rng.random::<f64>(),
        rng.random_range(0.0..TAU),
    );
    XState::new(d[0], d[1], d[2], d[3], r14, r23).unwrap()
}

fn numeric_pt_spectrum(x: &XState) -> Vec<f64> {
    let rows: Vec<Vec<Complex64>> = x.dense().iter().map(|r| r.to_vec()).collect();
    let m = ComplexMatrix::from_rows(&rows).unwrap();
    let pt = partial_transpose_raw(&m, &[2, 2], 1).unwrap();
    herm_eigvalsh(&HermitianOp::new(pt).unwrap()).unwrap()
}

#[test]
fn criterion_10_independent_oracles_confirm_both_routes() {
    check(10, "vacuum matrix elements and transpose spectra vs oracles", None, || {
        // Closed-form vacuum matrix elements against the truncated
        // number-basis expansion on random coupling configurations.
        let mut rng = rng(0xACC0_0010);
        let mut worst_h = 0.0f64;
        for draw in 0..50 {
            let t = |rng: &mut ChaCha12Rng| rng.random_range(0.0..2.5);
            let ctx = if rng.random::<f64>() < 0.4 {
                let (ta, tb) = (t(&mut rng), t(&mut rng));
                KContext::new([ta, ta, tb, tb], rng.random_range(0.05..0.9)).unwrap()
            } else {
                let (mut ta1, mut ta2) = (t(&mut rng), t(&mut rng));
                if ta1 > ta2 {
                    std::mem::swap(&mut ta1, &mut ta2);
                }
                let tb = t(&mut rng);
                KContext::new([ta1, ta2, tb, tb], rng.random_range(0.05..0.9)).unwrap()
            };
            let cfg = match_amplitudes_for_context(&ctx, 18).map_err(|e| e.to_string())?;
            let labels = SignPattern::from_mask(rng.random::<u8>());
            let closed = h_function(&labels, &ctx);
            let brute = brute_h(&labels, &cfg).map_err(|e| e.to_string())?;
            let diff = (closed - brute).norm();
            if diff > 1e-6 {
                return Err(format!(
                    "draw {draw}: closed {closed} vs brute {brute} (diff {diff:.3e})"
                ));
            }
            worst_h = worst_h.max(diff);
        }

        // Closed partial-transpose spectrum against dense numerics.
        let mut worst_pt = 0.0f64;
        for _ in 0..1000 {
            let x = random_xstate(&mut rng);
            let mut closed = x.pt_eigenvalues().to_vec();
            closed.sort_by(f64::total_cmp);
            let numeric = numeric_pt_spectrum(&x);
            for (c, n) in closed.iter().zip(numeric.iter()) {
                worst_pt = worst_pt.max((c - n).abs());
            }
        }
        if worst_pt > 1e-10 {
            return Err(format!("transpose spectra diverge by {worst_pt:.3e} > 1e-10"));
        }

        Ok(format!(
            "50 matrix-element draws, worst diff {worst_h:.3e} (tol 1e-6); \
             1000 transpose spectra, worst diff {worst_pt:.3e} (tol 1e-10)"
        ))
    });
}
