//! Brute-force validators: Monte Carlo network draws for coverage and
//! misalignment, a discretized-waveform information computation, and the
//! ray-traced footprint.
//!
//! Everything here is deliberately independent of the analytic code paths
//! it checks. Trials are split over a fixed number of chunks, each with its
//! own seed-derived sampler, so results are bit-identical no matter how the
//! chunks are scheduled across threads.

mod waveform;

pub use waveform::{waveform_fisher, SampledWaveform, WaveformFisher};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{horizon_distance, ServingDistanceDist};
use crate::model::NetworkModel;
use crate::numerics::DistributionSampler;

/// Fading law used by the Monte Carlo draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FadingModel {
    /// The signed binomial-expansion tail realized exactly (maximum of n0
    /// unit exponentials). Matches the analytic coverage model term for
    /// term.
    #[default]
    BinomialMixture,
    /// Exact unit-mean gamma fading with shape n0; quantifies the gap the
    /// expansion introduces.
    ExactGamma,
}

/// Trial count, seed, and fading law for one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: usize,
    pub seed: u64,
    pub fading: FadingModel,
}

impl SimConfig {
    pub fn new(trials: usize, seed: u64, fading: FadingModel) -> Result<Self> {
        if trials == 0 {
            return Err(Error::UnitOutOfRange {
                field: "trials",
                value: 0.0,
                constraint: ">= 1",
            });
        }
        Ok(Self {
            trials,
            seed,
            fading,
        })
    }
}

/// Fixed chunk count; per-chunk seeds are `seed ^ chunk_index`.
const CHUNKS: u64 = 64;

/// Run `trials` Bernoulli experiments chunk-parallel and return the hit
/// count. `experiment` must draw everything it needs from the sampler.
fn chunked_count<F>(cfg: &SimConfig, experiment: F) -> u64
where
    F: Fn(&mut DistributionSampler) -> bool + Sync,
{
    let trials = cfg.trials as u64;
    (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let n = trials / CHUNKS + u64::from(chunk < trials % CHUNKS);
            let mut rng = DistributionSampler::for_worker(cfg.seed, chunk);
            let mut hits = 0u64;
            for _ in 0..n {
                if experiment(&mut rng) {
                    hits += 1;
                }
            }
            hits
        })
        .sum()
}

fn estimate_from_count(hits: u64, trials: usize) -> (f64, f64) {
    let n = trials as f64;
    let p = hits as f64 / n;
    (p, (p * (1.0 - p) / n).sqrt())
}

fn draw_fading(rng: &mut DistributionSampler, fading: FadingModel, n0: u32) -> f64 {
    match fading {
        FadingModel::BinomialMixture => rng
            .draw_binomial_mixture(n0)
            .expect("n0 >= 1 by model invariant"),
        FadingModel::ExactGamma => rng
            .draw_gamma(n0 as f64, 1.0 / n0 as f64)
            .expect("n0 >= 1 by model invariant"),
    }
}

/// Empirical SNR coverage: draw a serving distance and a fading gain per
/// trial, count trials whose received SNR clears the threshold. Returns
/// (estimate, binomial standard error).
pub fn mc_snr_coverage(model: &NetworkModel, gamma: f64, cfg: &SimConfig) -> Result<(f64, f64)> {
    if !(gamma >= 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "gamma",
            value: gamma,
            constraint: ">= 0",
        });
    }
    let dist = ServingDistanceDist::new(model.lambda_bs())?;
    let (_, p_data) = model.power_split();
    let h2 = model.h_bs() * model.h_bs();
    let half_alpha = model.alpha() / 2.0;
    let scale = p_data * model.k_pl() * model.g0() / model.noise_power();
    let n0 = model.n_nakagami();
    let fading = cfg.fading;

    let hits = chunked_count(cfg, |rng| {
        let d = dist.sample(rng);
        let g = draw_fading(rng, fading, n0);
        let snr = scale * g / (d * d + h2).powf(half_alpha);
        snr >= gamma
    });
    Ok(estimate_from_count(hits, cfg.trials))
}

/// Empirical misalignment probability for Gaussian estimation errors with
/// variance `bcrlb`.
///
/// With `d_fixed` set, the distance is held there; otherwise it is drawn
/// from the serving-distance law each trial, and draws beyond the horizon
/// distance (unbounded footprint) count as covered.
pub fn mc_misalignment(
    d_fixed: Option<f64>,
    bcrlb: f64,
    theta: f64,
    h_bs: f64,
    model: &NetworkModel,
    cfg: &SimConfig,
) -> Result<(f64, f64)> {
    if !(bcrlb >= 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "bcrlb",
            value: bcrlb,
            constraint: ">= 0",
        });
    }
    let sigma = bcrlb.sqrt();
    let dist = ServingDistanceDist::new(model.lambda_bs())?;
    let d_max = horizon_distance(theta, h_bs);
    if let Some(d) = d_fixed {
        // Fail fast instead of silently counting an invalid point.
        ray_footprint(d, theta, h_bs)?;
    }

    let hits = chunked_count(cfg, |rng| {
        let d = match d_fixed {
            Some(d) => d,
            None => dist.sample(rng),
        };
        let e = if sigma > 0.0 {
            rng.draw_gaussian(0.0, sigma).expect("sigma > 0")
        } else {
            0.0
        };
        if d >= d_max {
            return false;
        }
        let d0 = match ray_footprint(d, theta, h_bs) {
            Ok(v) => v,
            Err(_) => return false,
        };
        e.abs() >= d0 / 2.0
    });
    Ok(estimate_from_count(hits, cfg.trials))
}

/// Footprint length by explicit edge rays:
/// `h [tan(phi + theta/2) - tan(phi - theta/2)]`, `phi = atan(d/h)`.
pub fn ray_footprint(d: f64, theta: f64, h_bs: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "d",
            value: d,
            constraint: ">= 0",
        });
    }
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::UnitOutOfRange {
            field: "theta",
            value: theta,
            constraint: "in (0, pi)",
        });
    }
    if !(h_bs > 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "h_bs",
            value: h_bs,
            constraint: "> 0",
        });
    }
    let phi = (d / h_bs).atan();
    if phi + theta / 2.0 >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::BeamHorizonError {
            distance: d,
            theta,
            h_bs,
        });
    }
    Ok(h_bs * ((phi + theta / 2.0).tan() - (phi - theta / 2.0).tan()))
}
