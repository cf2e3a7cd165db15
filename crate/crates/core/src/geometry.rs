//! Serving-distance statistics on the 1D deployment line and the beam
//! footprint on the ground.

use crate::error::{Error, Result};
use crate::numerics::DistributionSampler;

/// Distance from a typical user to its serving BS when BS positions form a
/// 1D Poisson process: exponential with rate `2 lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServingDistanceDist {
    lambda_bs: f64,
}

impl ServingDistanceDist {
    pub fn new(lambda_bs: f64) -> Result<Self> {
        if !(lambda_bs > 0.0 && lambda_bs.is_finite()) {
            return Err(Error::UnitOutOfRange {
                field: "lambda_bs",
                value: lambda_bs,
                constraint: "> 0",
            });
        }
        Ok(Self { lambda_bs })
    }

    pub fn lambda_bs(&self) -> f64 {
        self.lambda_bs
    }

    /// Density `2 lambda exp(-2 lambda x)`; zero for x < 0.
    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            2.0 * self.lambda_bs * (-2.0 * self.lambda_bs * x).exp()
        }
    }

    /// Cumulative distribution `1 - exp(-2 lambda x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            1.0 - (-2.0 * self.lambda_bs * x).exp()
        }
    }

    /// Mean serving distance `1 / (2 lambda)`.
    pub fn mean(&self) -> f64 {
        1.0 / (2.0 * self.lambda_bs)
    }

    /// Inverse-CDF draw.
    pub fn sample(&self, rng: &mut DistributionSampler) -> f64 {
        rng.draw_exponential(2.0 * self.lambda_bs)
            .expect("rate > 0 by construction")
    }
}

/// Ground intercept of the serving beam, aimed at the user's position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamFootprint {
    /// Ground length [m].
    pub length: f64,
    /// Ground position of the beam centre: the (estimated) user location [m].
    pub center: f64,
}

impl BeamFootprint {
    /// Footprint of a beam of width `theta` from height `h_bs` whose axis
    /// points at the ground position `d`.
    pub fn at_user(d: f64, theta: f64, h_bs: f64) -> Result<Self> {
        Ok(Self {
            length: footprint_length(d, theta, h_bs)?,
            center: d,
        })
    }
}

/// Ground length covered by a cone of half-angle `theta/2` from height
/// `h_bs`, axis pointed at horizontal distance `d`:
///
/// `D0 = 2 h tan(theta/2) (1 + (d/h)^2) / (1 - (d/h)^2 tan^2(theta/2))`
///
/// equivalently `h [tan(phi + theta/2) - tan(phi - theta/2)]` with
/// `phi = atan(d/h)`. Fails once the far cone edge reaches the horizon,
/// i.e. `(d/h) tan(theta/2) >= 1`.
pub fn footprint_length(d: f64, theta: f64, h_bs: f64) -> Result<f64> {
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
    let slope = d / h_bs;
    let t = (theta / 2.0).tan();
    if slope * t >= 1.0 {
        return Err(Error::BeamHorizonError {
            distance: d,
            theta,
            h_bs,
        });
    }
    Ok(2.0 * h_bs * t * (1.0 + slope * slope) / (1.0 - slope * slope * t * t))
}

/// Largest distance the footprint is defined for: `h / tan(theta/2)`.
pub fn horizon_distance(theta: f64, h_bs: f64) -> f64 {
    h_bs / (theta / 2.0).tan()
}
