//! Parameter sweep specification shared by the sweep subcommands.

use clap::ValueEnum;
use mmdim_core::model::{dbm_to_watt, NetworkModel};
use mmdim_core::{Error, Result};

/// Which model knob a sweep moves, in the CLI's engineering units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVariable {
    /// Power split fraction, in [0, 1].
    Beta,
    /// Beamwidth [deg].
    Theta,
    /// SNR threshold [dB].
    Gamma,
    /// BS density [1/km].
    Lambda,
    /// Power budget [dBm].
    Power,
}

impl SweepVariable {
    /// CSV column name for the swept value.
    pub fn column(&self) -> &'static str {
        match self {
            SweepVariable::Beta => "beta",
            SweepVariable::Theta => "theta_deg",
            SweepVariable::Gamma => "gamma_db",
            SweepVariable::Lambda => "lambda_km",
            SweepVariable::Power => "p_dbm",
        }
    }

    fn domain(&self) -> (f64, f64, &'static str) {
        match self {
            SweepVariable::Beta => (0.0, 1.0, "beta in [0, 1]"),
            SweepVariable::Theta => (1e-9, 180.0 - 1e-9, "theta_deg in (0, 180)"),
            SweepVariable::Gamma => (-400.0, 400.0, "gamma_db in [-400, 400]"),
            SweepVariable::Lambda => (1e-12, f64::INFINITY, "lambda_km > 0"),
            SweepVariable::Power => (-400.0, 400.0, "p_dbm in [-400, 400]"),
        }
    }

    /// Default sweep range in CLI units.
    pub fn default_range(&self) -> (f64, f64) {
        match self {
            SweepVariable::Beta => (0.0, 1.0),
            SweepVariable::Theta => (1.0, 20.0),
            SweepVariable::Gamma => (-20.0, 10.0),
            SweepVariable::Lambda => (0.5, 10.0),
            SweepVariable::Power => (10.0, 30.0),
        }
    }
}

/// Validated inclusive linear range with at least two steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, start: f64, stop: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::UnitOutOfRange {
                field: "steps",
                value: steps as f64,
                constraint: ">= 2",
            });
        }
        // NaN fails this too, on purpose.
        let ordered = start < stop;
        if !ordered {
            return Err(Error::UnitOutOfRange {
                field: "sweep range",
                value: start,
                constraint: "start < stop",
            });
        }
        let (lo, hi, constraint) = variable.domain();
        if !(start >= lo && stop <= hi) {
            return Err(Error::UnitOutOfRange {
                field: "sweep range",
                value: if start < lo { start } else { stop },
                constraint,
            });
        }
        Ok(Self {
            variable,
            start,
            stop,
            steps,
        })
    }

    /// The swept grid, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64)
            .collect()
    }

    /// Model with the swept value applied; `Gamma` leaves the model alone
    /// (the threshold is not a model field).
    pub fn apply(&self, base: &NetworkModel, value: f64) -> Result<NetworkModel> {
        match self.variable {
            SweepVariable::Beta => base.with_beta(value),
            SweepVariable::Theta => base.with_theta(value.to_radians()),
            SweepVariable::Lambda => base.with_lambda(value * 1e-3),
            SweepVariable::Power => base.with_power(dbm_to_watt(value)),
            SweepVariable::Gamma => Ok(*base),
        }
    }
}
