//! Command-line surface of `harvest-lab`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Sweeps, no-go verification suites, toy circuits, and a self-test for
/// delta-coupled detector pairs on a massless scalar field.
#[derive(Debug, Parser)]
#[command(name = "harvest-lab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep detector A's energy gap; rows hold the negativity and the four
    /// partial-transpose eigenvalues, plus a detected-period summary.
    SweepGap {
        #[command(flatten)]
        common: CommonArgs,
        /// Smallest swept gap value.
        #[arg(long)]
        min: Option<f64>,
        /// Largest swept gap value (inclusive).
        #[arg(long)]
        max: Option<f64>,
        /// Number of sweep points (at least 2).
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Sweep the coupling strength on a logarithmic grid; the summary holds
    /// the small-strength log-log slope, the strength attaining the maximum,
    /// and the first strength past the maximum with zero negativity.
    SweepLambda {
        #[command(flatten)]
        common: CommonArgs,
        /// Smallest swept strength (must be positive; grid is logarithmic).
        #[arg(long)]
        min: Option<f64>,
        /// Largest swept strength.
        #[arg(long)]
        max: Option<f64>,
        /// Number of sweep points (at least 2).
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Map the (t_A1, t_A2) plane: for each grid point with t_A1 <= t_A2 the
    /// negativity is maximized over a sample of gap values and reported with
    /// the three pairwise contact flags.
    RegionMap {
        #[command(flatten)]
        common: CommonArgs,
        /// Smallest t_A1 value.
        #[arg(long)]
        ta1_min: Option<f64>,
        /// Largest t_A1 value.
        #[arg(long)]
        ta1_max: Option<f64>,
        /// Number of t_A1 grid points.
        #[arg(long)]
        ta1_steps: Option<usize>,
        /// Smallest t_A2 value.
        #[arg(long)]
        ta2_min: Option<f64>,
        /// Largest t_A2 value.
        #[arg(long)]
        ta2_max: Option<f64>,
        /// Number of t_A2 grid points.
        #[arg(long)]
        ta2_steps: Option<usize>,
        /// Gap samples per grid point for the inner maximization.
        #[arg(long)]
        omega_samples: Option<usize>,
    },
    /// Run one of the randomized no-go suites and emit a JSON report;
    /// exits 0 exactly when every trial stays within tolerance.
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Number of randomized trials (suite-specific default).
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the exactly solvable CNOT toy circuits and report fidelity and
    /// negativity against the predicted Bell-pair outcome.
    Toy {
        /// Circuit name; all four run when omitted.
        circuit: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check this installation: special-function quadrature, oracle
    /// agreement, eigenvalue route equivalence, and mutation detection.
    Selftest {
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Flags shared by every subcommand. Precedence: flag > config file > default.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Coupling strength per detector A event (B's single event gets twice this).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Energy gap of detector A.
    #[arg(long)]
    pub omega_a: Option<f64>,
    /// Energy gap of detector B.
    #[arg(long)]
    pub omega_b: Option<f64>,
    /// Time of detector B's first coupling.
    #[arg(long)]
    pub tb1: Option<f64>,
    /// Time of detector B's second coupling (four-event patterns only).
    #[arg(long)]
    pub tb2: Option<f64>,
    /// Time of detector A's first coupling.
    #[arg(long)]
    pub ta1: Option<f64>,
    /// Time of detector A's second coupling.
    #[arg(long)]
    pub ta2: Option<f64>,
    /// Coupling order; must agree with the supplied times.
    #[arg(long, value_enum)]
    pub pattern: Option<PatternArg>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Artifact format.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Worker threads; falls back to HARVEST_LAB_JOBS, then all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Base seed for randomized suites.
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON config file supplying any of the common flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PatternArg {
    Aab,
    Aba,
    Baa,
    Aabb,
    Abba,
}

impl PatternArg {
    /// Canonical upper-case name as reported by the schedule layer.
    pub fn canonical(&self) -> &'static str {
        match self {
            PatternArg::Aab => "AAB",
            PatternArg::Aba => "ABA",
            PatternArg::Baa => "BAA",
            PatternArg::Aabb => "AABB",
            PatternArg::Abba => "ABBA",
        }
    }

    /// True for the four-event patterns, which need a second B time.
    pub fn needs_tb2(&self) -> bool {
        matches!(self, PatternArg::Aabb | PatternArg::Abba)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Random single last-couplings must leave target and reference separable.
    Eb,
    /// Three-coupling sequences with two vanishing source commutators.
    Commutators,
    /// B on one source qubit, A once on each, in random order.
    #[value(name = "two_qubit_source")]
    TwoQubitSource,
    /// The four exactly solvable CNOT circuits.
    Toys,
    /// Field schedules where B's single coupling comes last.
    #[value(name = "nogo_aab")]
    NogoAab,
}

impl SuiteArg {
    /// Stable suite name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            SuiteArg::Eb => "eb",
            SuiteArg::Commutators => "commutators",
            SuiteArg::TwoQubitSource => "two_qubit_source",
            SuiteArg::Toys => "toys",
            SuiteArg::NogoAab => "nogo_aab",
        }
    }
}
