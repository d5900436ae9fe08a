//! Sweep drivers. Every sweep point is an independent pure evaluation, so
//! points run concurrently and are collected back in input order, keeping
//! artifacts byte-identical for a given command line.

use std::f64::consts::TAU;

use anyhow::{bail, Result};
use rayon::prelude::*;
use udw_core::{AssembledSchedule, DeltaSchedule};

use crate::output::{Cell, Summary, Table};
use crate::params::{build_schedule_with_lambda, with_pool, Resolved};

/// Negativity below this is reported as an exact zero in summaries.
pub const ZERO_TOL: f64 = 1e-12;

fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn logspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| min * (max / min).powf(i as f64 / (steps - 1) as f64))
        .collect()
}

fn check_range(min: f64, max: f64, steps: usize) -> Result<()> {
    if !min.is_finite() || !max.is_finite() {
        bail!("sweep range must be finite");
    }
    if steps < 2 {
        bail!("sweep needs at least 2 steps, got {steps}");
    }
    if min >= max {
        bail!("sweep range needs min < max, got [{min}, {max}]");
    }
    Ok(())
}

/// Detected fundamental period of a uniformly sampled series: the lag
/// maximizing the autocorrelation beyond its first sign change. Returns
/// `None` for flat series, where no period is defined.
pub fn detect_period(series: &[f64], step: f64) -> Option<f64> {
    let n = series.len();
    if n < 4 {
        return None;
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let x: Vec<f64> = series.iter().map(|v| v - mean).collect();
    let r = |k: usize| -> f64 { (0..n - k).map(|i| x[i] * x[i + k]).sum() };
    if r(0) <= 0.0 {
        return None;
    }
    let first_negative = (1..=n / 2).find(|&k| r(k) < 0.0)?;
    let best = (first_negative..=n / 2)
        .map(|k| (k, r(k)))
        .max_by(|a, b| a.1.total_cmp(&b.1))?;
    Some(best.0 as f64 * step)
}

/// Sweeps detector A's gap over `[min, max]` for a fixed schedule.
pub fn sweep_gap(
    p: &Resolved,
    schedule: &DeltaSchedule,
    min: f64,
    max: f64,
    steps: usize,
) -> Result<(Table, Summary)> {
    check_range(min, max, steps)?;
    let assembled = AssembledSchedule::new(schedule);
    let omegas = linspace(min, max, steps);
    let points: Vec<(f64, [f64; 4])> = with_pool(p.jobs, || {
        omegas
            .par_iter()
            .map(|&oa| {
                let rho = assembled
                    .rho_at(oa, p.omega_b)
                    .expect("validated gap values");
                (rho.negativity(), rho.pt_eigenvalues())
            })
            .collect()
    })?;
    let rows = omegas
        .iter()
        .zip(&points)
        .map(|(&oa, (neg, eigs))| {
            let mut row = vec![Cell::Num(oa), Cell::Num(*neg)];
            row.extend(eigs.iter().map(|&e| Cell::Num(e)));
            row
        })
        .collect();
    let series: Vec<f64> = points.iter().map(|(neg, _)| *neg).collect();
    let step = (max - min) / (steps - 1) as f64;
    let period = match detect_period(&series, step) {
        Some(t) => Cell::Num(t),
        None => Cell::Text("none".into()),
    };
    let table = Table {
        columns: vec!["omega_a", "negativity", "e1", "e2", "e3", "e4"],
        rows,
    };
    Ok((table, vec![("period", period)]))
}

/// Sweeps the coupling strength over a logarithmic grid, recording the
/// negativity and its square root at fixed gaps.
pub fn sweep_lambda(p: &Resolved, min: f64, max: f64, steps: usize) -> Result<(Table, Summary)> {
    check_range(min, max, steps)?;
    if min <= 0.0 {
        bail!("strength sweep needs min > 0 (logarithmic grid), got {min}");
    }
    let lambdas = logspace(min, max, steps);
    let schedules: Result<Vec<DeltaSchedule>> = lambdas
        .iter()
        .map(|&l| build_schedule_with_lambda(p, l))
        .collect();
    let schedules = schedules?;
    let negs: Vec<f64> = with_pool(p.jobs, || {
        schedules
            .par_iter()
            .map(|s| {
                AssembledSchedule::new(s)
                    .negativity_at(p.omega_a, p.omega_b)
                    .expect("validated gap values")
            })
            .collect()
    })?;
    let rows = lambdas
        .iter()
        .zip(&negs)
        .map(|(&l, &n)| vec![Cell::Num(l), Cell::Num(n), Cell::Num(n.sqrt())])
        .collect();

    let mut summary: Summary = Vec::new();
    let decade: Vec<(f64, f64)> = lambdas
        .iter()
        .zip(&negs)
        .filter(|&(&l, &n)| l <= 10.0 * min * (1.0 + 1e-12) && n > 0.0)
        .map(|(&l, &n)| (l.ln(), n.ln()))
        .collect();
    summary.push((
        "slope_smallest_decade",
        match fit_slope(&decade) {
            Some(s) => Cell::Num(s),
            None => Cell::Text("none".into()),
        },
    ));
    let (argmax, peak) = lambdas
        .iter()
        .zip(&negs)
        .fold((f64::NAN, f64::MIN), |acc, (&l, &n)| {
            if n > acc.1 {
                (l, n)
            } else {
                acc
            }
        });
    if peak > ZERO_TOL {
        summary.push(("argmax_lambda", Cell::Num(argmax)));
        let first_zero = lambdas
            .iter()
            .zip(&negs)
            .find(|&(&l, &n)| l > argmax && n <= ZERO_TOL)
            .map(|(&l, _)| l);
        summary.push((
            "first_zero_after_max",
            match first_zero {
                Some(l) => Cell::Num(l),
                None => Cell::Text("none".into()),
            },
        ));
    } else {
        summary.push(("argmax_lambda", Cell::Text("none".into())));
        summary.push(("first_zero_after_max", Cell::Text("none".into())));
    }
    let table = Table {
        columns: vec!["lambda", "negativity", "sqrt_negativity"],
        rows,
    };
    Ok((table, summary))
}

fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Which of the three pairwise contact conditions hold for coupling times
/// `(ta1, ta2, tb)`: each pair can influence the other only when the times
/// differ by less than the detector diameter.
pub fn contact_flags(ta1: f64, ta2: f64, tb: f64) -> String {
    [(tb - ta1).abs(), (tb - ta2).abs(), (ta2 - ta1).abs()]
        .iter()
        .map(|d| if *d < 2.0 { '1' } else { '0' })
        .collect()
}

/// Maximum negativity over `samples` gap values spanning one period of the
/// assembled schedule (or two default periods when A's couplings coincide).
pub fn max_negativity_over_gap(
    assembled: &AssembledSchedule,
    delta: f64,
    samples: usize,
    omega_b: f64,
) -> f64 {
    let span = if delta.abs() > 1e-9 {
        TAU / delta.abs()
    } else {
        4.0 * std::f64::consts::PI
    };
    (0..samples)
        .map(|k| {
            assembled
                .negativity_at(span * k as f64 / samples as f64, omega_b)
                .expect("validated gap values")
        })
        .fold(0.0, f64::max)
}

/// Maps the `(t_A1, t_A2)` upper triangle: each row holds the maximum
/// negativity over the gap sample and the three contact flags.
#[allow(clippy::too_many_arguments)]
pub fn region_map(
    p: &Resolved,
    ta1_range: (f64, f64, usize),
    ta2_range: (f64, f64, usize),
    omega_samples: usize,
) -> Result<(Table, Summary)> {
    check_range(ta1_range.0, ta1_range.1, ta1_range.2)?;
    check_range(ta2_range.0, ta2_range.1, ta2_range.2)?;
    if omega_samples == 0 {
        bail!("need at least one gap sample per grid point");
    }
    let ta1s = linspace(ta1_range.0, ta1_range.1, ta1_range.2);
    let ta2s = linspace(ta2_range.0, ta2_range.1, ta2_range.2);
    let points: Vec<(f64, f64)> = ta1s
        .iter()
        .flat_map(|&a1| {
            ta2s.iter()
                .filter(move |&&a2| a2 >= a1 - 1e-12)
                .map(move |&a2| (a1, a2))
        })
        .collect();
    let results: Result<Vec<f64>> = with_pool(p.jobs, || {
        points
            .par_iter()
            .map(|&(a1, a2)| {
                let s = DeltaSchedule::three_event(a1, a2, p.tb1, p.lambda, 0.0, 0.0)
                    .map_err(|e| anyhow::anyhow!("grid point ({a1}, {a2}): {e}"))?;
                let assembled = AssembledSchedule::new(&s);
                Ok(max_negativity_over_gap(
                    &assembled,
                    a2 - a1,
                    omega_samples,
                    p.omega_b,
                ))
            })
            .collect()
    })?;
    let rows = points
        .iter()
        .zip(results?)
        .map(|(&(a1, a2), n)| {
            vec![
                Cell::Num(a1),
                Cell::Num(a2),
                Cell::Num(n),
                Cell::Text(contact_flags(a1, a2, p.tb1)),
            ]
        })
        .collect();
    let table = Table {
        columns: vec!["t_a1", "t_a2", "max_negativity", "commutator_flags"],
        rows,
    };
    Ok((table, Vec::new()))
}
