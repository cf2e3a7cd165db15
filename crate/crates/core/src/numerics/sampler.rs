//! Seeded random draws for the Monte Carlo oracles.
//!
//! All draws go through one ChaCha8 stream so a fixed seed reproduces the
//! exact sample sequence. Methods are exact for their target densities:
//! inverse CDF for the exponential, Box-Muller for the Gaussian, and
//! Marsaglia-Tsang squeeze rejection for the gamma.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Deterministic sampler over a seeded ChaCha8 stream.
pub struct DistributionSampler {
    rng: ChaCha8Rng,
    gaussian_spare: Option<f64>,
}

impl DistributionSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            gaussian_spare: None,
        }
    }

    /// Sampler for worker `index` derived from a base seed. Chunked Monte
    /// Carlo runs use one sampler per fixed chunk so aggregate counts do not
    /// depend on how chunks are scheduled across threads.
    pub fn for_worker(base_seed: u64, index: u64) -> Self {
        Self::new(base_seed ^ index)
    }

    /// Uniform draw on [0, 1).
    pub fn draw_uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Exponential draw via the inverse CDF `-ln(1 - u)/rate`.
    pub fn draw_exponential(&mut self, rate: f64) -> Result<f64> {
        if !(rate > 0.0) {
            return Err(Error::DomainError {
                what: "exponential rate",
                value: rate,
            });
        }
        let u = self.draw_uniform();
        Ok(-(1.0 - u).ln() / rate)
    }

    /// Gaussian draw via the Box-Muller transform.
    pub fn draw_gaussian(&mut self, mean: f64, std: f64) -> Result<f64> {
        if !(std > 0.0) {
            return Err(Error::DomainError {
                what: "gaussian std",
                value: std,
            });
        }
        Ok(mean + std * self.standard_normal())
    }

    fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.gaussian_spare.take() {
            return z;
        }
        // u1 in (0, 1] so the log is finite.
        let u1 = 1.0 - self.draw_uniform();
        let u2 = self.draw_uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.gaussian_spare = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Gamma draw, Marsaglia-Tsang (2000) rejection for shape >= 1 and the
    /// `gamma(shape+1) * u^(1/shape)` boost for shape < 1.
    pub fn draw_gamma(&mut self, shape: f64, scale: f64) -> Result<f64> {
        if !(shape > 0.0) {
            return Err(Error::DomainError {
                what: "gamma shape",
                value: shape,
            });
        }
        if !(scale > 0.0) {
            return Err(Error::DomainError {
                what: "gamma scale",
                value: scale,
            });
        }
        if shape < 1.0 {
            let boosted = self.draw_gamma(shape + 1.0, scale)?;
            let u = loop {
                let u = self.draw_uniform();
                if u > 0.0 {
                    break u;
                }
            };
            return Ok(boosted * u.powf(1.0 / shape));
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.standard_normal();
            let v = 1.0 + c * x;
            if v <= 0.0 {
                continue;
            }
            let v = v * v * v;
            let u = self.draw_uniform();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 {
                return Ok(scale * d * v);
            }
            if u > 0.0 && u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return Ok(scale * d * v);
            }
        }
    }

    /// Draw from the law whose tail probability is the signed binomial
    /// mixture `sum_{n=1..n0} (-1)^(n+1) C(n0,n) e^(-n t)`. That tail equals
    /// `1 - (1 - e^-t)^n0` (the maximum of n0 unit exponentials), so the
    /// inverse CDF is available in closed form.
    pub fn draw_binomial_mixture(&mut self, n0: u32) -> Result<f64> {
        if n0 == 0 {
            return Err(Error::DomainError {
                what: "mixture order n0",
                value: 0.0,
            });
        }
        let u = self.draw_uniform();
        // t = -ln(1 - u^(1/n0)); u < 1 keeps the argument positive.
        Ok(-(-(u.powf(1.0 / n0 as f64)) + 1.0).ln())
    }
}
