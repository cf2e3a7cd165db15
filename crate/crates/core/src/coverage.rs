//! SNR and rate coverage probability of the typical user.
//!
//! The fading tail is expanded as the signed binomial mixture
//! `P(g >= t) = sum_{n=1..n0} (-1)^(n+1) C(n0,n) e^(-n t)`
//! (equivalently `1 - (1 - e^-t)^n0`), and the expectation over the serving
//! distance is taken term by term. For path-loss exponent 2 each term is a
//! Gaussian-times-exponential integral with a closed form in the scaled
//! complementary error function.

use crate::error::{Error, Result};
use crate::model::NetworkModel;
use crate::numerics::special::{binomial, erfcx};
use crate::numerics::{integrate_semi_infinite, QuadratureSpec};

/// A coverage evaluation point: model plus linear SNR threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageQuery {
    pub model: NetworkModel,
    /// Linear SNR threshold, >= 0.
    pub threshold: f64,
}

impl CoverageQuery {
    pub fn new(model: NetworkModel, threshold: f64) -> Result<Self> {
        if !(threshold >= 0.0) {
            return Err(Error::UnitOutOfRange {
                field: "threshold",
                value: threshold,
                constraint: ">= 0",
            });
        }
        Ok(Self { model, threshold })
    }

    /// Exponent scale of term `n`: `a_n = n gamma sigma_N^2 / (P_D K G0)`.
    fn term_scale(&self, n: u32) -> f64 {
        let p_data = self.model.power_data();
        n as f64 * self.threshold * self.model.noise_power()
            / (p_data * self.model.k_pl() * self.model.g0())
    }
}

/// Allowed excursion outside [0, 1] before the alternating sum is treated
/// as numerically inconsistent rather than clamped.
const CLAMP_GUARD: f64 = 1e-6;

fn clamp_probability(value: f64, what: &'static str) -> Result<f64> {
    if !value.is_finite() || !(-CLAMP_GUARD..=1.0 + CLAMP_GUARD).contains(&value) {
        return Err(Error::NumericalInconsistency { what, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// SNR coverage probability by adaptive quadrature of the per-term
/// distance averages. Valid for any path-loss exponent.
pub fn snr_coverage(q: &CoverageQuery, quad: &QuadratureSpec) -> Result<f64> {
    if q.threshold == 0.0 {
        return Ok(1.0);
    }
    if q.model.power_data() == 0.0 {
        return Ok(0.0);
    }
    let lambda = q.model.lambda_bs();
    let h2 = q.model.h_bs() * q.model.h_bs();
    let half_alpha = q.model.alpha() / 2.0;
    let n0 = q.model.n_nakagami();

    let mut total = 0.0;
    for n in 1..=n0 {
        let a_n = q.term_scale(n);
        let integral = integrate_semi_infinite(
            |x| (-a_n * (x * x + h2).powf(half_alpha)).exp() * (-2.0 * lambda * x).exp(),
            0.0,
            quad,
        )?;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * binomial(n0, n) * 2.0 * lambda * integral;
    }
    clamp_probability(total, "snr_coverage")
}

/// Closed-form SNR coverage for path-loss exponent 2.
///
/// Completing the square in each term gives
/// `2 lambda e^(-a_n h^2) (sqrt(pi)/2) a_n^(-1/2) erfcx(lambda/sqrt(a_n))`;
/// the scaled complementary error function keeps the term finite where
/// `e^(lambda^2/a_n)` alone would overflow.
pub fn snr_coverage_closed_alpha2(q: &CoverageQuery) -> Result<f64> {
    if q.model.alpha() != 2.0 {
        return Err(Error::AlphaMismatch {
            alpha: q.model.alpha(),
        });
    }
    if q.threshold == 0.0 {
        return Ok(1.0);
    }
    if q.model.power_data() == 0.0 {
        return Ok(0.0);
    }
    let lambda = q.model.lambda_bs();
    let h2 = q.model.h_bs() * q.model.h_bs();
    let n0 = q.model.n_nakagami();

    let mut total = 0.0;
    for n in 1..=n0 {
        let a_n = q.term_scale(n);
        let sqrt_a = a_n.sqrt();
        let term = 2.0 * lambda * (-a_n * h2).exp() * 0.5 * (std::f64::consts::PI / a_n).sqrt()
            * erfcx(lambda / sqrt_a);
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * binomial(n0, n) * term;
    }
    clamp_probability(total, "snr_coverage_closed_alpha2")
}

/// SNR coverage through the closed form when the path-loss exponent
/// permits it, by quadrature otherwise.
pub fn snr_coverage_auto(q: &CoverageQuery, quad: &QuadratureSpec) -> Result<f64> {
    if q.model.alpha() == 2.0 {
        snr_coverage_closed_alpha2(q)
    } else {
        snr_coverage(q, quad)
    }
}

/// Rate coverage probability at `rate_threshold` [bit/s]: the SNR coverage
/// at threshold `2^(r0/B) - 1`.
pub fn rate_coverage(
    model: &NetworkModel,
    rate_threshold: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(rate_threshold >= 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "rate_threshold",
            value: rate_threshold,
            constraint: ">= 0",
        });
    }
    let gamma = (rate_threshold / model.bandwidth()).exp2() - 1.0;
    let q = CoverageQuery::new(*model, gamma)?;
    snr_coverage_auto(&q, quad)
}
