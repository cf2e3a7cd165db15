//! Command-line surface: parameter sweeps, operating-point planning, and
//! the oracle-validation report.
//!
//! Exit codes: 0 ok, 2 configuration error, 3 numerical failure,
//! 4 infeasible requirements, 5 validation gate failure. Every failure
//! prints a single `error[<code>]: ...` line to stderr.

mod commands;
mod output;
mod sweep;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mmdim_core::misalignment::BoundVariant;
use mmdim_core::Error;

use sweep::SweepVariable;

#[derive(Parser)]
#[command(name = "mmdim", version, about = "mm-wave positioning/rate dimensioning toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Markov,
    Chebyshev,
}

impl From<VariantArg> for BoundVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Markov => BoundVariant::Markov,
            VariantArg::Chebyshev => BoundVariant::Chebyshev,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sweep SNR coverage against a model knob, one series per density.
    CoverageSweep {
        /// Deployment model file (key = value lines).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        output: PathBuf,
        /// Swept variable.
        #[arg(long, value_enum, default_value = "beta")]
        variable: SweepVariable,
        /// Sweep start (defaults to the variable's standard range).
        #[arg(long)]
        start: Option<f64>,
        /// Sweep stop.
        #[arg(long)]
        stop: Option<f64>,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 21)]
        steps: usize,
        /// Density series [1/km]; defaults to the configured density.
        #[arg(long, value_delimiter = ',')]
        lambdas_km: Vec<f64>,
        /// SNR threshold [dB] (ignored when sweeping gamma).
        #[arg(long, default_value_t = -10.0)]
        gamma_db: f64,
    },
    /// Positioning-efficiency vs rate-coverage operating characteristic
    /// over the power split.
    Tradeoff {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Number of beta grid points over [0, 1], endpoints included.
        #[arg(long, default_value_t = 21)]
        steps: usize,
        /// SNR threshold [dB] for the snr-coverage column of the curve.
        #[arg(long, default_value_t = -10.0)]
        gamma_db: f64,
        /// Rate threshold [Mbit/s].
        #[arg(long, default_value_t = 500.0)]
        rate_mbps: f64,
        /// Ranging pilot as a single spectral line [Hz] instead of the
        /// flat-spectrum rule.
        #[arg(long)]
        pilot_hz: Option<f64>,
    },
    /// Mean misalignment bounds and their Monte Carlo check over beamwidth.
    MisalignmentSweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Beamwidth sweep start [deg].
        #[arg(long, default_value_t = 1.0)]
        theta_start: f64,
        /// Beamwidth sweep stop [deg].
        #[arg(long, default_value_t = 20.0)]
        theta_stop: f64,
        /// Number of beamwidth grid points.
        #[arg(long, default_value_t = 39)]
        theta_steps: usize,
        /// Monte Carlo trials per grid point.
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        /// Seed for all Monte Carlo draws.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        pilot_hz: Option<f64>,
    },
    /// Select (beta, theta) for a service requirement set.
    Plan {
        #[arg(long)]
        config: PathBuf,
        /// Requirements file (outage_max, gamma_db | rate_mbps,
        /// pos_error_m, misalign_max, objective).
        #[arg(long)]
        requirements: PathBuf,
        /// Optional per-candidate CSV output path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Candidate beamwidths [deg].
        #[arg(long, value_delimiter = ',', default_values_t = [2.0, 4.0, 8.0, 16.0, 32.0])]
        thetas_deg: Vec<f64>,
        /// Misalignment bound variant.
        #[arg(long, value_enum, default_value = "markov")]
        variant: VariantArg,
        #[arg(long)]
        pilot_hz: Option<f64>,
    },
    /// Cross-validate every closed form against its brute-force oracle.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Monte Carlo trials for the sampling gates.
        #[arg(long, default_value_t = 200_000)]
        trials: usize,
    },
}

/// Anything a command can fail with, mapped onto the exit-code contract.
#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    /// Number of failed validation gates.
    Validation(usize),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Validation(n) => write!(f, "{n} validation gate(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) => 2,
            CliError::Validation(_) => 5,
            CliError::Core(e) => match e {
                Error::MissingField { .. }
                | Error::UnitOutOfRange { .. }
                | Error::ConfigSyntax { .. }
                | Error::UnknownKey { .. }
                | Error::DuplicateKey { .. } => 2,
                Error::Infeasible { .. } => 4,
                Error::NoConvergence { .. }
                | Error::DomainError { .. }
                | Error::EmptySpectrum
                | Error::AlphaMismatch { .. }
                | Error::NonPositiveInformation { .. }
                | Error::BeamHorizonError { .. }
                | Error::NumericalInconsistency { .. }
                | Error::StepTooLarge { .. } => 3,
            },
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = commands::run(cli.command) {
        let code = e.exit_code();
        eprintln!("error[{code}]: {e}");
        std::process::exit(code);
    }
}
