//! Dimensioning toolkit for street-deployed mm-wave cells that split their
//! transmit power between a ranging waveform and data transmission.
//!
//! The library answers three coupled questions for a 1D Poisson deployment:
//!
//! - how well the serving distance can be estimated (information terms,
//!   error bounds, RMSE) as a function of the power split;
//! - what SNR/rate coverage the data share of the power achieves;
//! - how often a beam pointed at the estimated position misses the user,
//!   and the narrowest beamwidth that keeps that miss bound in check.
//!
//! On top sit the planner (feasible power-split window and operating-point
//! selection per service objective) and brute-force Monte Carlo / ray-trace
//! / discretized-waveform oracles used to cross-validate every closed form.

// `!(x > 0.0)` style guards are deliberate: they reject NaN along with
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod coverage;
pub mod error;
pub mod geometry;
pub mod localization;
pub mod misalignment;
pub mod model;
pub mod numerics;
pub mod planner;
pub mod sim;
pub mod validation;

pub use error::{Error, Result};
pub use model::{NetworkModel, NetworkModelParams, Objective, ServiceRequirement};
