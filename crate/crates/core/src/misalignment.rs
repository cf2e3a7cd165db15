//! Beam-misalignment probability bounds and minimum-beamwidth selection.
//!
//! A user is missed when the true position falls outside the half-footprint
//! around the estimated position. With estimation variance `s2` the miss
//! probability at distance `d` is bounded by `2 s2 / D0(d)` (first-order
//! form) or `4 s2 / D0(d)^2` (two-sided Chebyshev tail), both clamped to
//! [0, 1]. Users beyond the horizon distance see a footprint that is
//! unbounded on the far side and are treated as covered, which keeps the
//! mean bound monotone in the beamwidth.

use crate::error::{Error, Result};
use crate::geometry::{footprint_length, horizon_distance, ServingDistanceDist};
use crate::model::NetworkModel;
use crate::numerics::{integrate, QuadratureSpec};

/// Which tail inequality backs the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundVariant {
    /// `min(1, 2 s2 / D0)`.
    #[default]
    Markov,
    /// `min(1, 4 s2 / D0^2)`.
    Chebyshev,
}

/// Misalignment bound for a user at distance `d`, given estimation-error
/// variance `bcrlb` [m^2].
pub fn misalignment_bound_at(
    d: f64,
    bcrlb: f64,
    theta: f64,
    h_bs: f64,
    variant: BoundVariant,
) -> Result<f64> {
    if !(bcrlb >= 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "bcrlb",
            value: bcrlb,
            constraint: ">= 0",
        });
    }
    let d0 = footprint_length(d, theta, h_bs)?;
    let raw = match variant {
        BoundVariant::Markov => 2.0 * bcrlb / d0,
        BoundVariant::Chebyshev => 4.0 * bcrlb / (d0 * d0),
    };
    Ok(raw.min(1.0))
}

/// Mean misalignment bound over the serving-distance prior:
///
/// `int_0^dmax min(1, bound(x)) f_d(x) dx`
///
/// with `dmax` the horizon distance for this beamwidth. The integrand is
/// piecewise smooth (the clamp introduces one kink), which the adaptive
/// rule absorbs.
pub fn mean_misalignment_bound(
    model: &NetworkModel,
    bcrlb: f64,
    quad: &QuadratureSpec,
    variant: BoundVariant,
) -> Result<f64> {
    if !(bcrlb >= 0.0) {
        return Err(Error::UnitOutOfRange {
            field: "bcrlb",
            value: bcrlb,
            constraint: ">= 0",
        });
    }
    let theta = model.theta();
    let h = model.h_bs();
    let dist = ServingDistanceDist::new(model.lambda_bs())?;
    let d_max = horizon_distance(theta, h);
    let value = integrate(
        |x| {
            // x touches d_max only through quadrature nodes strictly inside,
            // where the footprint is still defined.
            let bound = misalignment_bound_at(x, bcrlb, theta, h, variant).unwrap_or(0.0);
            bound * dist.pdf(x)
        },
        0.0,
        d_max,
        quad,
    )?;
    Ok(value.clamp(0.0, 1.0))
}

/// Smallest beamwidth on a grid meeting a mean-misalignment target.
///
/// The mean bound is non-increasing in the beamwidth, so a binary search
/// over the grid finds the boundary; the result satisfies the constraint
/// and the next-smaller grid point violates it.
pub fn min_beamwidth(
    model: &NetworkModel,
    bcrlb: f64,
    misalign_max: f64,
    variant: BoundVariant,
    quad: &QuadratureSpec,
) -> Result<f64> {
    min_beamwidth_on_grid(model, bcrlb, misalign_max, variant, quad, &default_theta_grid())
}

/// 0.5-degree steps over (0, 90] degrees.
pub fn default_theta_grid() -> Vec<f64> {
    (1..=180).map(|i| (0.5 * i as f64).to_radians()).collect()
}

/// Grid-search form of [`min_beamwidth`] with a caller-supplied ascending
/// grid of beamwidths [rad].
pub fn min_beamwidth_on_grid(
    model: &NetworkModel,
    bcrlb: f64,
    misalign_max: f64,
    variant: BoundVariant,
    quad: &QuadratureSpec,
    grid: &[f64],
) -> Result<f64> {
    if !(misalign_max > 0.0 && misalign_max <= 1.0) {
        return Err(Error::UnitOutOfRange {
            field: "misalign_max",
            value: misalign_max,
            constraint: "in (0, 1]",
        });
    }
    if grid.is_empty() {
        return Err(Error::Infeasible {
            reason: "empty beamwidth grid".to_string(),
        });
    }
    let satisfies = |theta: f64| -> Result<bool> {
        let m = model.with_theta(theta)?;
        Ok(mean_misalignment_bound(&m, bcrlb, quad, variant)? <= misalign_max)
    };
    if satisfies(grid[0])? {
        return Ok(grid[0]);
    }
    if !satisfies(*grid.last().unwrap())? {
        return Err(Error::Infeasible {
            reason: format!(
                "no beamwidth up to {:.1} deg meets mean misalignment <= {misalign_max}",
                grid.last().unwrap().to_degrees()
            ),
        });
    }
    // Invariant: grid[lo] violates, grid[hi] satisfies.
    let mut lo = 0usize;
    let mut hi = grid.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if satisfies(grid[mid])? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(grid[hi])
}
