//! Parameter resolution: command-line flags override a JSON config file,
//! which overrides built-in defaults.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Deserialize;
use udw_core::DeltaSchedule;

use crate::cli::{CommonArgs, FormatArg, PatternArg};

/// Environment variable consulted for the worker-thread count when
/// neither the flag nor the config file sets one.
pub const JOBS_ENV: &str = "HARVEST_LAB_JOBS";

/// Config-file schema: any subset of the common flags, same names.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub lambda: Option<f64>,
    pub omega_a: Option<f64>,
    pub omega_b: Option<f64>,
    pub tb1: Option<f64>,
    pub tb2: Option<f64>,
    pub ta1: Option<f64>,
    pub ta2: Option<f64>,
    pub pattern: Option<String>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Fully resolved common parameters.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub lambda: f64,
    pub omega_a: f64,
    pub omega_b: f64,
    pub tb1: f64,
    pub tb2: Option<f64>,
    pub ta1: f64,
    pub ta2: f64,
    pub pattern: PatternArg,
    pub format: FormatArg,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("invalid config file {}", path.display()))
}

fn parse_enum<T: ValueEnum>(value: &str, what: &str) -> Result<T> {
    T::from_str(value, true).map_err(|_| anyhow::anyhow!("invalid {what} {value:?} in config file"))
}

/// Applies the precedence flag > config > default to the common arguments.
pub fn resolve(common: &CommonArgs) -> Result<Resolved> {
    let cfg = match &common.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let pattern = match (common.pattern, &cfg.pattern) {
        (Some(p), _) => p,
        (None, Some(s)) => parse_enum(s, "pattern")?,
        (None, None) => PatternArg::Baa,
    };
    let format = match (common.format, &cfg.format) {
        (Some(f), _) => f,
        (None, Some(s)) => parse_enum(s, "format")?,
        (None, None) => FormatArg::Csv,
    };
    let jobs = common
        .jobs
        .or(cfg.jobs)
        .or_else(|| std::env::var(JOBS_ENV).ok().and_then(|v| v.parse().ok()));
    if jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    Ok(Resolved {
        lambda: common.lambda.or(cfg.lambda).unwrap_or(0.1),
        omega_a: common.omega_a.or(cfg.omega_a).unwrap_or(3.0),
        omega_b: common.omega_b.or(cfg.omega_b).unwrap_or(0.7),
        tb1: common.tb1.or(cfg.tb1).unwrap_or(0.0),
        tb2: common.tb2.or(cfg.tb2),
        ta1: common.ta1.or(cfg.ta1).unwrap_or(0.5),
        ta2: common.ta2.or(cfg.ta2).unwrap_or(1.0),
        pattern,
        format,
        jobs,
        seed: common.seed.or(cfg.seed).unwrap_or(0),
        out: common.out.clone().or(cfg.out),
    })
}

/// Builds the coupling schedule described by the resolved parameters,
/// checking that the supplied times actually realize the requested pattern.
pub fn build_schedule(p: &Resolved) -> Result<DeltaSchedule> {
    build_schedule_with_lambda(p, p.lambda)
}

/// Same as [`build_schedule`] with the coupling strength overridden, for
/// strength sweeps.
pub fn build_schedule_with_lambda(p: &Resolved, lambda: f64) -> Result<DeltaSchedule> {
    let schedule = if p.pattern.needs_tb2() {
        let tb2 = p.tb2.with_context(|| {
            format!("pattern {} needs --tb2", p.pattern.canonical())
        })?;
        DeltaSchedule::four_event(p.ta1, p.ta2, p.tb1, tb2, lambda, p.omega_a, p.omega_b)
    } else {
        DeltaSchedule::three_event(p.ta1, p.ta2, p.tb1, lambda, p.omega_a, p.omega_b)
    }
    .map_err(|e| anyhow::anyhow!("invalid schedule: {e}"))?;
    let derived = schedule.pattern().name();
    if derived != p.pattern.canonical() {
        bail!(
            "times ta1={} ta2={} tb1={}{} realize pattern {derived}, not the requested {}",
            p.ta1,
            p.ta2,
            p.tb1,
            p.tb2.map(|t| format!(" tb2={t}")).unwrap_or_default(),
            p.pattern.canonical()
        );
    }
    Ok(schedule)
}

/// Runs `body` on a dedicated thread pool of `jobs` workers, or on the
/// global pool when no bound was requested.
pub fn with_pool<T: Send>(jobs: Option<usize>, body: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("cannot build worker pool")?;
            Ok(pool.install(body))
        }
        None => Ok(body()),
    }
}
