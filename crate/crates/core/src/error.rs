//! Error types shared across the library.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, from configuration parsing to numerics.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A required configuration key was not supplied.
    #[error("missing required field `{key}`")]
    MissingField { key: String },

    /// A field value violates its physical/domain constraint.
    #[error("field `{field}` out of range: {value} (expected {constraint})")]
    UnitOutOfRange {
        field: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// Malformed line in a flat key-value configuration file.
    #[error("config syntax error on line {line}: {message}")]
    ConfigSyntax { line: usize, message: String },

    /// Configuration key not recognized by the schema.
    #[error("unknown configuration key `{key}`")]
    UnknownKey { key: String },

    /// Key supplied more than once in one file.
    #[error("duplicate configuration key `{key}`")]
    DuplicateKey { key: String },

    /// Adaptive quadrature ran out of subdivisions before reaching tolerance.
    #[error("quadrature did not converge: error estimate {achieved:e} > required {required:e}")]
    NoConvergence { achieved: f64, required: f64 },

    /// Argument outside a special function's or sampler's domain.
    #[error("domain error: {what} = {value}")]
    DomainError { what: &'static str, value: f64 },

    /// Sampled spectrum was empty or identically zero.
    #[error("sampled spectrum is empty or has zero total energy")]
    EmptySpectrum,

    /// A closed form valid only for path-loss exponent 2 was called with another value.
    #[error("closed form requires alpha = 2, got {alpha}")]
    AlphaMismatch { alpha: f64 },

    /// Combined information is non-positive, so no error bound exists.
    #[error("non-positive Bayesian information ({j_bayes:e}); localization power too small for this density")]
    NonPositiveInformation { j_bayes: f64 },

    /// The far cone edge is parallel to or above the ground; footprint undefined.
    #[error("beam horizon: d = {distance} m, theta = {theta} rad, h = {h_bs} m puts the far cone edge at or above the horizon")]
    BeamHorizonError {
        distance: f64,
        theta: f64,
        h_bs: f64,
    },

    /// A result left its mathematically permitted range by more than tolerance.
    #[error("numerical inconsistency in {what}: {value}")]
    NumericalInconsistency { what: &'static str, value: f64 },

    /// No parameter choice satisfies the stated constraints.
    #[error("infeasible: {reason}")]
    Infeasible { reason: String },

    /// Finite-difference truncation error above the trust threshold.
    #[error("finite-difference step too large: relative truncation estimate {relative_error:e}")]
    StepTooLarge { relative_error: f64 },
}
