//! Ranging information and error bounds.
//!
//! The per-distance information for delay-based ranging scales with the
//! received SNR and the mean-square angular bandwidth of the ranging
//! waveform. Averaging over the serving-distance prior and adding the prior
//! information term gives the combined (Bayesian) information, from which
//! the error bound, its square root and the RMSE all follow.

use crate::error::{Error, Result};
use crate::model::NetworkModel;
use crate::numerics::special::ci_si;
use crate::numerics::{integrate_semi_infinite, QuadratureSpec};

/// Mean-square angular-frequency bandwidth of the ranging waveform
/// [(rad/s)^2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveBandwidth {
    f2bar: f64,
}

impl EffectiveBandwidth {
    pub fn f2bar(&self) -> f64 {
        self.f2bar
    }
}

/// How the effective bandwidth is obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumModel {
    /// Flat-spectrum convention: `f2bar = 1.25 pi^2 B^2`.
    FlatNominal,
    /// Discrete ratio `sum (2 pi f_i)^2 |X_i|^2 / sum |X_i|^2` over sampled
    /// (frequency [Hz], magnitude) pairs on a uniform grid.
    Sampled(Vec<(f64, f64)>),
}

/// Effective bandwidth for the given spectrum model; `bandwidth` [Hz] feeds
/// the flat-spectrum rule and is ignored for sampled spectra.
pub fn effective_bandwidth(model: &SpectrumModel, bandwidth: f64) -> Result<EffectiveBandwidth> {
    match model {
        SpectrumModel::FlatNominal => {
            if !(bandwidth > 0.0 && bandwidth.is_finite()) {
                return Err(Error::UnitOutOfRange {
                    field: "bandwidth",
                    value: bandwidth,
                    constraint: "> 0",
                });
            }
            let pi2 = std::f64::consts::PI * std::f64::consts::PI;
            Ok(EffectiveBandwidth {
                f2bar: 1.25 * pi2 * bandwidth * bandwidth,
            })
        }
        SpectrumModel::Sampled(pairs) => {
            if pairs.is_empty() {
                return Err(Error::EmptySpectrum);
            }
            let mut num = 0.0;
            let mut den = 0.0;
            for &(f, mag) in pairs {
                if mag < 0.0 {
                    return Err(Error::UnitOutOfRange {
                        field: "spectrum magnitude",
                        value: mag,
                        constraint: ">= 0",
                    });
                }
                let w = 2.0 * std::f64::consts::PI * f;
                num += w * w * mag * mag;
                den += mag * mag;
            }
            if den == 0.0 {
                return Err(Error::EmptySpectrum);
            }
            Ok(EffectiveBandwidth { f2bar: num / den })
        }
    }
}

/// Information about the distance carried by one received waveform at a
/// fixed distance `d` [1/m^2]:
///
/// `J_d = K G0 P_L f2bar / ((h^2 + d^2)^(alpha/2) sigma_N^2)`
pub fn fisher_conditional(model: &NetworkModel, d: f64, f2bar: &EffectiveBandwidth) -> f64 {
    let (p_loc, _) = model.power_split();
    let range2 = model.h_bs() * model.h_bs() + d * d;
    model.k_pl() * model.g0() * p_loc * f2bar.f2bar()
        / (range2.powf(model.alpha() / 2.0) * model.noise_power())
}

/// Lower limit of the distance average in [`fisher_expected`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LowerLimit {
    /// Full support of the distance prior.
    #[default]
    Zero,
    /// Start at 1 m, leaving out the first metre of the prior's support.
    One,
}

impl LowerLimit {
    fn value(&self) -> f64 {
        match self {
            LowerLimit::Zero => 0.0,
            LowerLimit::One => 1.0,
        }
    }
}

/// Expected ranging information over the serving-distance prior [1/m^2]:
///
/// `J_D = (K G0 P_L 2 lambda f2bar / sigma_N^2)
///        * int_a^inf e^(-2 lambda x) (h^2 + x^2)^(-alpha/2) dx`
pub fn fisher_expected(
    model: &NetworkModel,
    f2bar: &EffectiveBandwidth,
    lower_limit: LowerLimit,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let (p_loc, _) = model.power_split();
    if p_loc == 0.0 {
        return Ok(0.0);
    }
    let lambda = model.lambda_bs();
    let h2 = model.h_bs() * model.h_bs();
    let half_alpha = model.alpha() / 2.0;
    let integral = integrate_semi_infinite(
        |x| (-2.0 * lambda * x).exp() / (h2 + x * x).powf(half_alpha),
        lower_limit.value(),
        quad,
    )?;
    let prefactor =
        model.k_pl() * model.g0() * p_loc * 2.0 * lambda * f2bar.f2bar() / model.noise_power();
    Ok(prefactor * integral)
}

/// Closed form of [`fisher_expected`] with `LowerLimit::Zero` for path-loss
/// exponent 2, through the damped-Lorentzian identity
///
/// `int_0^inf e^(-2 lambda x)/(h^2 + x^2) dx
///    = (1/h)[Ci(z) sin(z) + (pi/2 - Si(z)) cos(z)]`, `z = 2 lambda h`.
pub fn fisher_expected_closed_alpha2(
    model: &NetworkModel,
    f2bar: &EffectiveBandwidth,
) -> Result<f64> {
    if model.alpha() != 2.0 {
        return Err(Error::AlphaMismatch {
            alpha: model.alpha(),
        });
    }
    let (p_loc, _) = model.power_split();
    if p_loc == 0.0 {
        return Ok(0.0);
    }
    let lambda = model.lambda_bs();
    let h = model.h_bs();
    let z = 2.0 * lambda * h;
    let (ci, si) = ci_si(z)?;
    let integral = (ci * z.sin() + (std::f64::consts::FRAC_PI_2 - si) * z.cos()) / h;
    let prefactor =
        model.k_pl() * model.g0() * p_loc * 2.0 * lambda * f2bar.f2bar() / model.noise_power();
    Ok(prefactor * integral)
}

/// Prior information of the serving-distance law: `ln(2 lambda) - 1`, with
/// `lambda` in 1/m.
pub fn prior_information(lambda_bs: f64) -> Result<f64> {
    if !(lambda_bs > 0.0 && lambda_bs.is_finite()) {
        return Err(Error::UnitOutOfRange {
            field: "lambda_bs",
            value: lambda_bs,
            constraint: "> 0",
        });
    }
    Ok((2.0 * lambda_bs).ln() - 1.0)
}

/// Distance-averaged information terms and the error bounds built from them.
///
/// Only constructed when the combined information is positive, so the bound
/// fields are always meaningful. The per-distance information is available
/// separately through [`fisher_conditional`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationBounds {
    /// Expected ranging information J_D [1/m^2].
    pub j_expected: f64,
    /// Prior information term J_p.
    pub j_prior: f64,
    /// Combined information J_B = J_D + J_p.
    pub j_bayes: f64,
    /// Error-variance lower bound 1/J_B [m^2].
    pub bcrlb: f64,
    /// sqrt(J_B): the scalar positioning-efficiency figure of merit [1/m].
    pub jeffrey: f64,
    /// Root of the variance bound, 1/sqrt(J_B) [m].
    pub rmse: f64,
}

/// Assemble the expected information, the prior term, and the bounds.
///
/// Fails with [`Error::NonPositiveInformation`] when `J_D + J_p <= 0`; in
/// that regime the additive prior term has swallowed the measurement
/// information and no finite error bound exists (localization power too
/// small for this density).
pub fn bounds(
    model: &NetworkModel,
    f2bar: &EffectiveBandwidth,
    quad: &QuadratureSpec,
) -> Result<LocalizationBounds> {
    let j_expected = if model.alpha() == 2.0 {
        fisher_expected_closed_alpha2(model, f2bar)?
    } else {
        fisher_expected(model, f2bar, LowerLimit::Zero, quad)?
    };
    let j_prior = prior_information(model.lambda_bs())?;
    bounds_from_parts(j_expected, j_prior)
}

/// Bounds from already-computed information terms.
pub fn bounds_from_parts(j_expected: f64, j_prior: f64) -> Result<LocalizationBounds> {
    let j_bayes = j_expected + j_prior;
    if !(j_bayes > 0.0) {
        return Err(Error::NonPositiveInformation { j_bayes });
    }
    Ok(LocalizationBounds {
        j_expected,
        j_prior,
        j_bayes,
        bcrlb: 1.0 / j_bayes,
        jeffrey: j_bayes.sqrt(),
        rmse: 1.0 / j_bayes.sqrt(),
    })
}

/// Positioning RMSE for the model, `1/sqrt(J_B)` [m].
pub fn positioning_rmse(
    model: &NetworkModel,
    f2bar: &EffectiveBandwidth,
    quad: &QuadratureSpec,
) -> Result<f64> {
    Ok(bounds(model, f2bar, quad)?.rmse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ServingDistanceDist;
    use crate::model::{NetworkModel, NetworkModelParams};
    use crate::numerics::DistributionSampler;

    fn model(beta: f64) -> NetworkModel {
        NetworkModel::new(NetworkModelParams {
            lambda_bs: 0.002,
            power_total: 0.1,
            beta,
            theta: 10f64.to_radians(),
            h_bs: 10.0,
            alpha: 2.0,
            k_pl: 7.26e-7,
            g0: 10.0,
            n_nakagami: 3,
            bandwidth: 1e9,
            noise_psd: 3.981e-20,
        })
        .unwrap()
    }

    fn flat(model: &NetworkModel) -> EffectiveBandwidth {
        effective_bandwidth(&SpectrumModel::FlatNominal, model.bandwidth()).unwrap()
    }

    #[test]
    fn flat_rule_value() {
        let f2 = effective_bandwidth(&SpectrumModel::FlatNominal, 1e9).unwrap();
        let want = 1.25 * std::f64::consts::PI.powi(2) * 1e18;
        assert!((f2.f2bar() - want).abs() / want < 1e-15);
    }

    #[test]
    fn sampled_flat_spectrum_approaches_analytic_ratio() {
        // Flat magnitude over [-B/2, B/2]: analytic ratio (2 pi)^2 B^2 / 12.
        let b = 2e8;
        let n = 100_001;
        let pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| (-b / 2.0 + b * i as f64 / (n - 1) as f64, 1.0))
            .collect();
        let f2 = effective_bandwidth(&SpectrumModel::Sampled(pairs), 0.0).unwrap();
        let want = std::f64::consts::PI.powi(2) * b * b / 3.0;
        assert!(
            ((f2.f2bar() - want) / want).abs() < 1e-4,
            "{} vs {want}",
            f2.f2bar()
        );
    }

    #[test]
    fn single_spectral_line() {
        let f0 = 3.2e6;
        let f2 = effective_bandwidth(&SpectrumModel::Sampled(vec![(f0, 2.0)]), 0.0).unwrap();
        let want = (2.0 * std::f64::consts::PI * f0).powi(2);
        assert!(((f2.f2bar() - want) / want).abs() < 1e-15);
    }

    #[test]
    fn empty_or_zero_spectrum_rejected() {
        assert!(matches!(
            effective_bandwidth(&SpectrumModel::Sampled(vec![]), 0.0),
            Err(Error::EmptySpectrum)
        ));
        assert!(matches!(
            effective_bandwidth(&SpectrumModel::Sampled(vec![(1.0, 0.0), (2.0, 0.0)]), 0.0),
            Err(Error::EmptySpectrum)
        ));
        assert!(effective_bandwidth(&SpectrumModel::Sampled(vec![(1.0, -1.0)]), 0.0).is_err());
    }

    #[test]
    fn conditional_information_basics() {
        let m = model(0.15);
        let f2 = flat(&m);
        // beta = 1: no localization power, no information
        assert_eq!(fisher_conditional(&model(1.0), 100.0, &f2), 0.0);
        // plug-in at d = 0
        let j0 = fisher_conditional(&m, 0.0, &f2);
        let want = m.k_pl() * m.g0() * m.power_localization() * f2.f2bar()
            / (m.h_bs().powi(2) * m.noise_power());
        assert!(((j0 - want) / want).abs() < 1e-15);
        // alpha = 2, d = h: half the d = 0 value
        let jh = fisher_conditional(&m, m.h_bs(), &f2);
        assert!(((jh - j0 / 2.0) / jh).abs() < 1e-14);
    }

    #[test]
    fn expected_information_zero_power_and_linearity() {
        let quad = QuadratureSpec::default();
        let f2 = flat(&model(0.5));
        assert_eq!(
            fisher_expected(&model(1.0), &f2, LowerLimit::Zero, &quad).unwrap(),
            0.0
        );
        // J_D linear in P_L: halving (1 - beta) halves J_D.
        let j1 = fisher_expected(&model(0.2), &f2, LowerLimit::Zero, &quad).unwrap();
        let j2 = fisher_expected(&model(0.6), &f2, LowerLimit::Zero, &quad).unwrap();
        assert!(((j1 / j2) - 2.0).abs() < 1e-9, "{}", j1 / j2);
    }

    #[test]
    fn closed_form_matches_quadrature_on_grid() {
        let quad = QuadratureSpec::default();
        for lambda in [1e-4, 5e-4, 2e-3, 1e-2] {
            for h in [5.0, 10.0, 30.0] {
                let m = NetworkModel::new(NetworkModelParams {
                    lambda_bs: lambda,
                    h_bs: h,
                    ..params_of(&model(0.15))
                })
                .unwrap();
                let f2 = flat(&m);
                let a = fisher_expected(&m, &f2, LowerLimit::Zero, &quad).unwrap();
                let b = fisher_expected_closed_alpha2(&m, &f2).unwrap();
                assert!(((a - b) / a).abs() < 1e-8, "lambda {lambda} h {h}");
            }
        }
    }

    fn params_of(m: &NetworkModel) -> NetworkModelParams {
        NetworkModelParams {
            lambda_bs: m.lambda_bs(),
            power_total: m.power_total(),
            beta: m.beta(),
            theta: m.theta(),
            h_bs: m.h_bs(),
            alpha: m.alpha(),
            k_pl: m.k_pl(),
            g0: m.g0(),
            n_nakagami: m.n_nakagami(),
            bandwidth: m.bandwidth(),
            noise_psd: m.noise_psd(),
        }
    }

    #[test]
    fn closed_form_rejects_other_alpha() {
        let mut p = params_of(&model(0.15));
        p.alpha = 3.0;
        let m = NetworkModel::new(p).unwrap();
        let f2 = flat(&m);
        assert!(matches!(
            fisher_expected_closed_alpha2(&m, &f2),
            Err(Error::AlphaMismatch { .. })
        ));
    }

    #[test]
    fn closed_form_decreasing_in_height() {
        let quad = QuadratureSpec::default();
        let mut prev = f64::INFINITY;
        for h in [5.0, 8.0, 12.0, 20.0, 30.0] {
            let mut p = params_of(&model(0.15));
            p.h_bs = h;
            let m = NetworkModel::new(p).unwrap();
            let f2 = flat(&m);
            let closed = fisher_expected_closed_alpha2(&m, &f2).unwrap();
            let quadr = fisher_expected(&m, &f2, LowerLimit::Zero, &quad).unwrap();
            assert!(((closed - quadr) / quadr).abs() < 1e-8);
            assert!(closed < prev, "not decreasing at h = {h}");
            prev = closed;
        }
    }

    #[test]
    fn printed_lower_limit_is_below_full_support() {
        let quad = QuadratureSpec::default();
        let m = model(0.15);
        let f2 = flat(&m);
        let full = fisher_expected(&m, &f2, LowerLimit::Zero, &quad).unwrap();
        let trimmed = fisher_expected(&m, &f2, LowerLimit::One, &quad).unwrap();
        assert!(trimmed < full);
        assert!(trimmed > 0.9 * full, "first metre carries little mass");
    }

    #[test]
    fn prior_information_values() {
        // ln(e) - 1 = 0
        let v = prior_information(std::f64::consts::E / 2.0).unwrap();
        assert!(v.abs() < 1e-15);
        let v = prior_information(0.002).unwrap();
        assert!((v - (-6.521_460_917_862_246)).abs() < 1e-12, "{v}");
        // strictly increasing
        assert!(prior_information(0.004).unwrap() > prior_information(0.002).unwrap());
        assert!(prior_information(0.0).is_err());
    }

    #[test]
    fn bounds_arithmetic() {
        let j_p = prior_information(0.002).unwrap();
        let b = bounds_from_parts(4.0 - j_p, j_p).unwrap();
        assert!((b.jeffrey - 2.0).abs() < 1e-15);
        assert!((b.bcrlb - 0.25).abs() < 1e-15);
        assert!((b.rmse - 0.5).abs() < 1e-15);
        // jeffrey^2 * bcrlb = 1 and additivity by construction
        assert!((b.jeffrey * b.jeffrey * b.bcrlb - 1.0).abs() < 1e-15);
        assert_eq!(b.j_bayes, b.j_expected + b.j_prior);
    }

    #[test]
    fn zero_data_free_model_has_no_bound() {
        let quad = QuadratureSpec::default();
        let m = model(1.0);
        let f2 = flat(&m);
        assert!(matches!(
            bounds(&m, &f2, &quad),
            Err(Error::NonPositiveInformation { .. })
        ));
    }

    #[test]
    fn rmse_improves_with_more_localization_power() {
        let quad = QuadratureSpec::default();
        let f2 = flat(&model(0.5));
        let mut prev = f64::INFINITY;
        for beta in [0.9, 0.7, 0.5, 0.3, 0.1, 0.0] {
            let r = bounds(&model(beta), &f2, &quad).unwrap().rmse;
            assert!(r < prev, "rmse not decreasing at beta {beta}");
            prev = r;
        }
    }

    #[test]
    fn expected_information_agrees_with_monte_carlo() {
        // E over sampled distances of the conditional information.
        const N: usize = 10_000_000;
        let quad = QuadratureSpec::default();
        let m = model(0.15);
        let f2 = flat(&m);
        let dist = ServingDistanceDist::new(m.lambda_bs()).unwrap();
        let mut rng = DistributionSampler::new(42);
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..N {
            let d = dist.sample(&mut rng);
            let j = fisher_conditional(&m, d, &f2);
            sum += j;
            sumsq += j * j;
        }
        let mean = sum / N as f64;
        let var = (sumsq / N as f64 - mean * mean).max(0.0);
        let se = (var / N as f64).sqrt();
        let analytic = fisher_expected(&m, &f2, LowerLimit::Zero, &quad).unwrap();
        assert!(
            (mean - analytic).abs() < 3.0 * se,
            "MC {mean} vs analytic {analytic} (se {se})"
        );
    }
}
