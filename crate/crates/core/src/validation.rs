//! Cross-validation gates: every closed form against its independent
//! brute-force counterpart. The `validate` CLI subcommand prints these, and
//! the acceptance suite runs them with pinned budgets.

use crate::coverage::{snr_coverage, snr_coverage_closed_alpha2, CoverageQuery};
use crate::error::Result;
use crate::geometry::{footprint_length, horizon_distance};
use crate::localization::{
    effective_bandwidth, fisher_conditional, fisher_expected, fisher_expected_closed_alpha2,
    LowerLimit, SpectrumModel,
};
use crate::misalignment::{misalignment_bound_at, BoundVariant};
use crate::model::{dbm_to_watt, db_to_linear, NetworkModel, NetworkModelParams};
use crate::numerics::{DistributionSampler, QuadratureSpec};
use crate::sim::{mc_snr_coverage, ray_footprint, waveform_fisher, FadingModel, SampledWaveform, SimConfig};

/// Outcome of one validation gate.
#[derive(Debug, Clone)]
pub struct GateResult {
    pub name: &'static str,
    /// Pass condition in words, e.g. "max rel err <= 1e-8".
    pub criterion: String,
    /// Worst observed value for the gate's metric.
    pub achieved: f64,
    pub passed: bool,
}

impl GateResult {
    fn new(name: &'static str, criterion: String, achieved: f64, passed: bool) -> Self {
        Self {
            name,
            criterion,
            achieved,
            passed,
        }
    }
}

fn grid_model(lambda_km: f64, p_dbm: f64, beta: f64, n0: u32) -> NetworkModel {
    NetworkModel::new(NetworkModelParams {
        lambda_bs: lambda_km * 1e-3,
        power_total: dbm_to_watt(p_dbm),
        beta,
        theta: 10f64.to_radians(),
        h_bs: 10.0,
        alpha: 2.0,
        k_pl: crate::model::default_path_loss_coefficient(),
        g0: 10.0,
        n_nakagami: n0,
        bandwidth: 1e9,
        noise_psd: dbm_to_watt(-164.0),
    })
    .expect("grid parameters are valid")
}

/// Closed-form vs quadrature SNR coverage over the dimensioning grid.
pub fn gate_coverage_closed_vs_quadrature() -> Result<GateResult> {
    let quad = QuadratureSpec::default();
    let tol = 1e-8;
    let mut worst = 0.0_f64;
    for lambda_km in [1.0, 2.0, 5.0] {
        for p_dbm in [15.0, 20.0, 25.0] {
            for gamma_db in [-15.0, -10.0, -5.0, 0.0, 5.0] {
                for n0 in [1, 3] {
                    let m = grid_model(lambda_km, p_dbm, 0.6, n0);
                    let q = CoverageQuery::new(m, db_to_linear(gamma_db))?;
                    let by_quad = snr_coverage(&q, &quad)?;
                    let closed = snr_coverage_closed_alpha2(&q)?;
                    let rel = (by_quad - closed).abs() / by_quad.abs().max(1e-300);
                    worst = worst.max(rel);
                }
            }
        }
    }
    Ok(GateResult::new(
        "coverage closed form vs quadrature",
        format!("max rel err <= {tol:e} over 90 grid points"),
        worst,
        worst <= tol,
    ))
}

/// Closed-form vs quadrature expected ranging information.
pub fn gate_fisher_closed_vs_quadrature() -> Result<GateResult> {
    let quad = QuadratureSpec::default();
    let tol = 1e-8;
    let mut worst = 0.0_f64;
    for lambda in [1e-4, 3e-4, 1e-3, 3e-3, 1e-2] {
        for h in [5.0, 10.0, 15.0, 20.0, 30.0] {
            let mut base = grid_model(1.0, 20.0, 0.15, 3);
            base = base.with_lambda(lambda)?;
            let m = NetworkModel::new(NetworkModelParams {
                h_bs: h,
                ..params_of(&base)
            })?;
            let f2 = effective_bandwidth(&SpectrumModel::FlatNominal, m.bandwidth())?;
            let a = fisher_expected(&m, &f2, LowerLimit::Zero, &quad)?;
            let b = fisher_expected_closed_alpha2(&m, &f2)?;
            let rel = (a - b).abs() / a.abs();
            worst = worst.max(rel);
        }
    }
    Ok(GateResult::new(
        "expected information closed form vs quadrature",
        format!("max rel err <= {tol:e} over 25 grid points"),
        worst,
        worst <= tol,
    ))
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

/// Monte Carlo coverage vs the analytic value, mixture fading.
/// Passes when at least 95% of grid points land within 3 binomial standard
/// errors (standard error from the analytic probability).
pub fn gate_mc_coverage(seed: u64, trials: usize) -> Result<GateResult> {
    let mut within = 0usize;
    let mut total = 0usize;
    let mut worst_sigmas = 0.0_f64;
    for lambda_km in [1.0, 2.0, 5.0] {
        for p_dbm in [15.0, 20.0, 25.0] {
            for gamma_db in [-15.0, -5.0, 5.0] {
                let m = grid_model(lambda_km, p_dbm, 0.6, 3);
                let gamma = db_to_linear(gamma_db);
                let analytic = snr_coverage_closed_alpha2(&CoverageQuery::new(m, gamma)?)?;
                let cfg = SimConfig::new(trials, seed, FadingModel::BinomialMixture)?;
                let (est, _) = mc_snr_coverage(&m, gamma, &cfg)?;
                let se = (analytic * (1.0 - analytic) / trials as f64).sqrt();
                let sigmas = if se > 0.0 {
                    (est - analytic).abs() / se
                } else if est == analytic {
                    0.0
                } else {
                    f64::INFINITY
                };
                worst_sigmas = worst_sigmas.max(sigmas);
                if sigmas <= 3.0 {
                    within += 1;
                }
                total += 1;
            }
        }
    }
    let fraction = within as f64 / total as f64;
    Ok(GateResult::new(
        "Monte Carlo coverage vs analytic",
        format!(">= 95% of {total} points within 3 standard errors (worst {worst_sigmas:.2} se)"),
        fraction,
        fraction >= 0.95,
    ))
}

/// Closed-form footprint against the ray-traced footprint on random valid
/// geometry.
pub fn gate_footprint_identity(seed: u64, points: usize) -> Result<GateResult> {
    let tol = 1e-12;
    let mut rng = DistributionSampler::new(seed ^ 0x666f6f74);
    let mut worst = 0.0_f64;
    for _ in 0..points {
        let h = 2.0 + 48.0 * rng.draw_uniform();
        let theta = (0.5 + 169.0 * rng.draw_uniform()).to_radians();
        // Stay off the last percent before the horizon: both expressions
        // lose digits to the vanishing denominator there, and no fixed
        // tolerance survives arbitrarily close to the singularity.
        let d = 0.99 * horizon_distance(theta, h) * rng.draw_uniform();
        let closed = footprint_length(d, theta, h)?;
        let ray = ray_footprint(d, theta, h)?;
        let rel = (closed - ray).abs() / ray.abs();
        worst = worst.max(rel);
    }
    Ok(GateResult::new(
        "footprint closed form vs ray trace",
        format!("max rel err <= {tol:e} over {points} random triples"),
        worst,
        worst <= tol,
    ))
}

/// Numerical waveform information (delay term) against the conditional
/// information formula fed with the same sampled spectrum.
pub fn gate_fisher_chain() -> Result<GateResult> {
    let tol = 5e-3;
    let m = grid_model(2.0, 20.0, 0.15, 3);
    let w = SampledWaveform::flat_spectrum(m.bandwidth(), 1024, 8, m.noise_power().sqrt())?;
    let f2 = effective_bandwidth(&SpectrumModel::Sampled(w.spectrum()), 0.0)?;
    let mut worst = 0.0_f64;
    for i in 0..10 {
        let d = 10.0 + 40.0 * i as f64;
        let numeric = waveform_fisher(&w, &m, d)?;
        let analytic = fisher_conditional(&m, d, &f2);
        let rel = (numeric.delay_term - analytic).abs() / analytic;
        worst = worst.max(rel);
    }
    Ok(GateResult::new(
        "waveform information chain",
        format!("delay term within {tol:e} of conditional information at 10 distances"),
        worst,
        worst <= tol,
    ))
}

/// Empirical Gaussian misalignment probability stays below both bound
/// variants on a randomized grid. Sampled in the regime where the
/// first-order bound dominates the exact absolute-moment bound
/// (sigma >= sqrt(2/pi)).
pub fn gate_misalignment_validity(seed: u64, points: usize, trials: usize) -> Result<GateResult> {
    let mut rng = DistributionSampler::new(seed ^ 0x6d697361);
    let h = 10.0;
    let mut worst_margin = f64::INFINITY;
    let mut all_ok = true;
    for _ in 0..points {
        let sigma = 0.8 + 2.2 * rng.draw_uniform();
        let theta = (2.0 + 58.0 * rng.draw_uniform()).to_radians();
        let d = 0.95 * horizon_distance(theta, h) * rng.draw_uniform();
        let bcrlb = sigma * sigma;
        let d0 = footprint_length(d, theta, h)?;
        let mut miss = 0usize;
        for _ in 0..trials {
            let e = rng.draw_gaussian(0.0, sigma)?;
            if e.abs() >= d0 / 2.0 {
                miss += 1;
            }
        }
        let emp = miss as f64 / trials as f64;
        let markov = misalignment_bound_at(d, bcrlb, theta, h, BoundVariant::Markov)?;
        let cheb = misalignment_bound_at(d, bcrlb, theta, h, BoundVariant::Chebyshev)?;
        let margin = (markov - emp).min(cheb - emp);
        worst_margin = worst_margin.min(margin);
        if emp > markov || emp > cheb {
            all_ok = false;
        }
    }
    Ok(GateResult::new(
        "misalignment bounds dominate Gaussian misses",
        format!("empirical <= both bounds at {points} random points (worst margin {worst_margin:.3e})"),
        worst_margin,
        all_ok,
    ))
}

/// Monte Carlo vs analytic coverage at one specific model (used by the CLI
/// to exercise the user's configuration rather than the built-in grid).
pub fn gate_mc_coverage_at(
    model: &NetworkModel,
    gamma: f64,
    seed: u64,
    trials: usize,
) -> Result<GateResult> {
    let analytic = crate::coverage::snr_coverage_auto(
        &CoverageQuery::new(*model, gamma)?,
        &QuadratureSpec::default(),
    )?;
    let cfg = SimConfig::new(trials, seed, FadingModel::BinomialMixture)?;
    let (est, _) = mc_snr_coverage(model, gamma, &cfg)?;
    let se = (analytic * (1.0 - analytic) / trials as f64).sqrt();
    let sigmas = if se > 0.0 {
        (est - analytic).abs() / se
    } else if est == analytic {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(GateResult::new(
        "configured model Monte Carlo vs analytic",
        format!("|{est:.6} - {analytic:.6}| within 3 standard errors"),
        sigmas,
        sigmas <= 3.0,
    ))
}

/// Run the full gate suite.
pub fn run_all_gates(seed: u64, mc_trials: usize) -> Result<Vec<GateResult>> {
    Ok(vec![
        gate_coverage_closed_vs_quadrature()?,
        gate_fisher_closed_vs_quadrature()?,
        gate_mc_coverage(seed, mc_trials)?,
        gate_footprint_identity(seed, 10_000)?,
        gate_fisher_chain()?,
        gate_misalignment_validity(seed, 50, 100_000)?,
    ])
}
