//! Operating-point selection: trade-off curves, the feasible power-split
//! window [beta_min, beta_max], and the final (beta, theta) plan.
//!
//! Coverage grows with the data share beta while the positioning RMSE
//! shrinks with the localization share 1 - beta, so the outage constraint
//! puts a floor under beta and the positioning-error constraint a ceiling
//! on it. Both searches are bisections that assert the bracket they rely
//! on instead of assuming it.

use crate::coverage::{rate_coverage, snr_coverage_auto, CoverageQuery};
use crate::error::{Error, Result};
use crate::localization::{bounds, EffectiveBandwidth};
use crate::misalignment::{mean_misalignment_bound, BoundVariant};
use crate::model::{NetworkModel, Objective, ServiceRequirement};
use crate::numerics::QuadratureSpec;

/// Bisection width on beta.
const BETA_TOL: f64 = 1e-4;

/// One evaluated point of the positioning/rate operating characteristic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    pub beta: f64,
    /// sqrt of combined information [1/m]; `None` when the information is
    /// non-positive at this beta.
    pub jeffrey: Option<f64>,
    /// Positioning RMSE [m]; `None` together with `jeffrey`.
    pub rmse: Option<f64>,
    pub snr_coverage: f64,
    pub rate_coverage: f64,
}

impl TradeoffPoint {
    /// True when the localization side of the point is undefined.
    pub fn no_information(&self) -> bool {
        self.jeffrey.is_none()
    }
}

/// Evaluate the operating characteristic on a beta grid, at fixed total
/// power. Localization-infeasible points are flagged, not fatal.
pub fn tradeoff_curve(
    model_base: &NetworkModel,
    betas: &[f64],
    f2bar: &EffectiveBandwidth,
    snr_threshold: f64,
    rate_threshold: f64,
    quad: &QuadratureSpec,
) -> Result<Vec<TradeoffPoint>> {
    let mut points = Vec::with_capacity(betas.len());
    for &beta in betas {
        let m = model_base.with_beta(beta)?;
        let q = CoverageQuery::new(m, snr_threshold)?;
        let snr_cov = snr_coverage_auto(&q, quad)?;
        let rate_cov = rate_coverage(&m, rate_threshold, quad)?;
        let (jeffrey, rmse) = match bounds(&m, f2bar, quad) {
            Ok(b) => (Some(b.jeffrey), Some(b.rmse)),
            Err(Error::NonPositiveInformation { .. }) => (None, None),
            Err(e) => return Err(e),
        };
        points.push(TradeoffPoint {
            beta,
            jeffrey,
            rmse,
            snr_coverage: snr_cov,
            rate_coverage: rate_cov,
        });
    }
    Ok(points)
}

fn coverage_at(model: &NetworkModel, beta: f64, gamma: f64, quad: &QuadratureSpec) -> Result<f64> {
    let q = CoverageQuery::new(model.with_beta(beta)?, gamma)?;
    snr_coverage_auto(&q, quad)
}

/// Smallest beta meeting the outage constraint, to within 1e-4.
///
/// Infeasibility at beta = 1 is the dimensioning signal: this power budget
/// and density cannot reach the target outage at all.
pub fn beta_min(
    model_base: &NetworkModel,
    req: &ServiceRequirement,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let gamma = req.effective_snr_threshold(model_base.bandwidth());
    let target = 1.0 - req.outage_max;
    if coverage_at(model_base, 0.0, gamma, quad)? >= target {
        return Ok(0.0);
    }
    let top = coverage_at(model_base, 1.0, gamma, quad)?;
    if top < target {
        return Err(Error::Infeasible {
            reason: format!(
                "coverage at beta = 1 is {top:.4}, below the required {target:.4}; \
                 increase the power budget or deploy more BSs"
            ),
        });
    }
    // Bracket: coverage(lo) < target <= coverage(hi); coverage is
    // non-decreasing in beta, asserted as we go.
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut cov_lo = coverage_at(model_base, lo, gamma, quad)?;
    while hi - lo > BETA_TOL {
        let mid = 0.5 * (lo + hi);
        let cov_mid = coverage_at(model_base, mid, gamma, quad)?;
        if cov_mid + 1e-12 < cov_lo {
            return Err(Error::NumericalInconsistency {
                what: "coverage not monotone in beta",
                value: cov_mid - cov_lo,
            });
        }
        if cov_mid >= target {
            hi = mid;
        } else {
            lo = mid;
            cov_lo = cov_mid;
        }
    }
    Ok(hi)
}

fn rmse_at(
    model_base: &NetworkModel,
    beta: f64,
    f2bar: &EffectiveBandwidth,
    quad: &QuadratureSpec,
) -> Result<Option<f64>> {
    match bounds(&model_base.with_beta(beta)?, f2bar, quad) {
        Ok(b) => Ok(Some(b.rmse)),
        Err(Error::NonPositiveInformation { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Largest beta keeping the positioning RMSE within the limit, to 1e-4.
///
/// Betas where the combined information is non-positive count as violating
/// (no finite error bound exists there). An absent or infinite limit means
/// no positioning constraint: beta_max = 1.
pub fn beta_max(
    model_base: &NetworkModel,
    req: &ServiceRequirement,
    f2bar: &EffectiveBandwidth,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let limit = match req.pos_error_max {
        Some(l) if l.is_finite() => l,
        _ => return Ok(1.0),
    };
    let meets = |rmse: Option<f64>| rmse.is_some_and(|r| r <= limit);

    let at_zero = rmse_at(model_base, 0.0, f2bar, quad)?;
    if at_zero.is_none() {
        // Even full localization power gives non-positive information.
        return Err(Error::NonPositiveInformation {
            j_bayes: f64::NEG_INFINITY,
        });
    }
    if !meets(at_zero) {
        return Err(Error::Infeasible {
            reason: format!(
                "positioning RMSE at beta = 0 is {:.3e} m, above the limit {limit:.3e} m",
                at_zero.unwrap()
            ),
        });
    }
    if meets(rmse_at(model_base, 1.0, f2bar, quad)?) {
        return Ok(1.0);
    }
    // Bracket: lo satisfies, hi violates; rmse is non-decreasing in beta,
    // asserted where defined.
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut rmse_lo = at_zero.unwrap();
    while hi - lo > BETA_TOL {
        let mid = 0.5 * (lo + hi);
        let at_mid = rmse_at(model_base, mid, f2bar, quad)?;
        if let Some(r) = at_mid {
            if r + 1e-15 < rmse_lo {
                return Err(Error::NumericalInconsistency {
                    what: "rmse not monotone in beta",
                    value: r - rmse_lo,
                });
            }
        }
        if meets(at_mid) {
            lo = mid;
            rmse_lo = at_mid.unwrap();
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// One constraint line of a plan report.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub name: &'static str,
    pub required: f64,
    pub achieved: f64,
    pub satisfied: bool,
}

/// Evaluation of a single candidate beamwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEvaluation {
    pub theta: f64,
    pub beta_min: Option<f64>,
    pub beta_max: Option<f64>,
    pub beta_selected: Option<f64>,
    /// Mean misalignment bound at the selected beta, when a misalignment
    /// constraint is present and the point is otherwise feasible.
    pub misalignment: Option<f64>,
    pub feasible: bool,
}

/// Selected operating point plus the per-constraint audit trail.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerPlan {
    pub beta_selected: f64,
    pub p_loc: f64,
    pub p_data: f64,
    pub theta: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub constraints_report: Vec<ConstraintReport>,
    /// All candidate evaluations, in input order.
    pub candidates: Vec<ThetaEvaluation>,
}

/// Everything `plan` derives before committing to an operating point:
/// the beta window, all candidate evaluations, and the winner (if any).
#[derive(Debug, Clone, PartialEq)]
pub struct PlanEvaluation {
    /// [beta_min, beta_max], or `None` when the outage or positioning side
    /// is infeasible on its own.
    pub window: Option<(f64, f64)>,
    pub candidates: Vec<ThetaEvaluation>,
    /// Winning (theta, beta), when some candidate is feasible.
    pub best: Option<(f64, f64)>,
}

/// Evaluate every candidate beamwidth without failing on infeasibility;
/// `plan` turns the result into a [`PowerPlan`] or the infeasibility error.
pub fn evaluate_plan(
    model_base: &NetworkModel,
    req: &ServiceRequirement,
    theta_candidates: &[f64],
    f2bar: &EffectiveBandwidth,
    variant: BoundVariant,
    quad: &QuadratureSpec,
) -> Result<PlanEvaluation> {
    if theta_candidates.is_empty() {
        return Err(Error::Infeasible {
            reason: "no candidate beamwidths supplied".to_string(),
        });
    }

    // Theta-independent window.
    let window = compute_beta_window(model_base, req, f2bar, quad)?;

    let mut candidates = Vec::with_capacity(theta_candidates.len());
    let mut best: Option<(f64, f64)> = None; // (theta, beta)
    for &theta in theta_candidates {
        let mut eval = ThetaEvaluation {
            theta,
            beta_min: None,
            beta_max: None,
            beta_selected: None,
            misalignment: None,
            feasible: false,
        };
        if let Some((bmin, bmax)) = window {
            eval.beta_min = Some(bmin);
            eval.beta_max = Some(bmax);
            if bmin <= bmax {
                let beta = match req.objective {
                    Objective::MaximizePositioning => bmin,
                    Objective::MaximizeRate => bmax,
                };
                eval.beta_selected = Some(beta);
                let mis_ok = match req.misalign_max {
                    None => true,
                    Some(limit) => {
                        let m = model_base.with_beta(beta)?.with_theta(theta)?;
                        let bound = match bounds(&m, f2bar, quad) {
                            Ok(b) => mean_misalignment_bound(&m, b.bcrlb, quad, variant)?,
                            // No error bound means the beam cannot be
                            // pointed from the estimate at all.
                            Err(Error::NonPositiveInformation { .. }) => 1.0,
                            Err(e) => return Err(e),
                        };
                        eval.misalignment = Some(bound);
                        bound <= limit
                    }
                };
                if mis_ok {
                    eval.feasible = true;
                    // Objective value is theta-independent; first (smallest
                    // listed) feasible theta wins.
                    if best.is_none() {
                        best = Some((theta, beta));
                    }
                }
            }
        }
        candidates.push(eval);
    }

    Ok(PlanEvaluation {
        window,
        candidates,
        best,
    })
}

/// Pick (beta, theta) for the service.
///
/// Per candidate beamwidth: the outage constraint fixes beta_min, the
/// positioning constraint beta_max, the objective picks beta inside the
/// window (beta_min for positioning, beta_max for rate), and the
/// misalignment constraint is checked at that operating point. The beta
/// window does not depend on theta, so feasible candidates tie on the
/// objective and the smallest feasible beamwidth wins.
pub fn plan(
    model_base: &NetworkModel,
    req: &ServiceRequirement,
    theta_candidates: &[f64],
    f2bar: &EffectiveBandwidth,
    variant: BoundVariant,
    quad: &QuadratureSpec,
) -> Result<PowerPlan> {
    let evaluation = evaluate_plan(model_base, req, theta_candidates, f2bar, variant, quad)?;
    let PlanEvaluation {
        window,
        candidates,
        best,
    } = evaluation;

    let Some((theta, beta)) = best else {
        let reason = match window {
            None => "no feasible beta for any candidate beamwidth; \
                     increase the power budget or deploy more BSs"
                .to_string(),
            Some((bmin, bmax)) if bmin > bmax => format!(
                "outage needs beta >= {bmin:.4} but positioning allows at most {bmax:.4}; \
                 increase the power budget or deploy more BSs"
            ),
            Some(_) => "misalignment constraint failed at every candidate beamwidth; \
                        increase the power budget or deploy more BSs"
                .to_string(),
        };
        return Err(Error::Infeasible { reason });
    };

    let (bmin, bmax) = window.expect("feasible plan implies a window");
    let selected_model = model_base.with_beta(beta)?.with_theta(theta)?;
    let (p_loc, p_data) = selected_model.power_split();

    let mut report = Vec::new();
    let gamma = req.effective_snr_threshold(model_base.bandwidth());
    let outage =
        1.0 - snr_coverage_auto(&CoverageQuery::new(selected_model, gamma)?, quad)?;
    report.push(ConstraintReport {
        name: "outage",
        required: req.outage_max,
        achieved: outage,
        satisfied: outage <= req.outage_max + 1e-9,
    });
    if let Some(limit) = req.pos_error_max {
        let achieved = rmse_at(model_base, beta, f2bar, quad)?.unwrap_or(f64::INFINITY);
        report.push(ConstraintReport {
            name: "positioning_rmse",
            required: limit,
            achieved,
            satisfied: achieved <= limit * (1.0 + 1e-9),
        });
    }
    if let Some(limit) = req.misalign_max {
        let b = bounds(&selected_model, f2bar, quad)?;
        let achieved = mean_misalignment_bound(&selected_model, b.bcrlb, quad, variant)?;
        report.push(ConstraintReport {
            name: "mean_misalignment",
            required: limit,
            achieved,
            satisfied: achieved <= limit * (1.0 + 1e-9),
        });
    }

    Ok(PowerPlan {
        beta_selected: beta,
        p_loc,
        p_data,
        theta,
        beta_min: bmin,
        beta_max: bmax,
        constraints_report: report,
        candidates,
    })
}

/// The [beta_min, beta_max] window, or `None` when the outage side alone is
/// already infeasible.
fn compute_beta_window(
    model_base: &NetworkModel,
    req: &ServiceRequirement,
    f2bar: &EffectiveBandwidth,
    quad: &QuadratureSpec,
) -> Result<Option<(f64, f64)>> {
    let bmin = match beta_min(model_base, req, quad) {
        Ok(b) => b,
        Err(Error::Infeasible { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let bmax = match beta_max(model_base, req, f2bar, quad) {
        Ok(b) => b,
        Err(Error::Infeasible { .. }) | Err(Error::NonPositiveInformation { .. }) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    Ok(Some((bmin, bmax)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::{effective_bandwidth, SpectrumModel};
    use crate::model::{dbm_to_watt, NetworkModelParams};

    fn model(lambda_km: f64, p_dbm: f64, beta: f64) -> NetworkModel {
        NetworkModel::new(NetworkModelParams {
            lambda_bs: lambda_km * 1e-3,
            power_total: dbm_to_watt(p_dbm),
            beta,
            theta: 10f64.to_radians(),
            h_bs: 10.0,
            alpha: 2.0,
            k_pl: crate::model::default_path_loss_coefficient(),
            g0: 10.0,
            n_nakagami: 3,
            bandwidth: 1e9,
            noise_psd: dbm_to_watt(-164.0),
        })
        .unwrap()
    }

    fn flat(m: &NetworkModel) -> EffectiveBandwidth {
        effective_bandwidth(&SpectrumModel::FlatNominal, m.bandwidth()).unwrap()
    }

    /// Narrowband ranging pilot: single spectral line, making the
    /// positioning constraint bite at interior beta.
    fn narrow_pilot() -> EffectiveBandwidth {
        let f0 = 1000.0 / (2.0 * std::f64::consts::PI);
        effective_bandwidth(&SpectrumModel::Sampled(vec![(f0, 1.0)]), 0.0).unwrap()
    }

    fn req_outage(outage: f64, gamma: f64, objective: Objective) -> ServiceRequirement {
        ServiceRequirement::new(outage, Some(gamma), None, None, None, objective).unwrap()
    }

    #[test]
    fn tradeoff_boundaries_and_monotonicity() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 20.0, 0.5);
        let f2 = flat(&m);
        let betas: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let pts = tradeoff_curve(&m, &betas, &f2, 0.1, 5e8, &quad).unwrap();
        assert_eq!(pts.len(), 21);

        // beta = 0: zero coverage, best (largest) jeffrey on the curve
        assert_eq!(pts[0].rate_coverage, 0.0);
        assert_eq!(pts[0].snr_coverage, 0.0);
        let j0 = pts[0].jeffrey.unwrap();
        // beta = 1: best coverage, no localization information
        assert!(pts[20].no_information());
        assert!(pts[20].rate_coverage >= pts[19].rate_coverage);

        let mut prev_rate = -1.0;
        let mut prev_jeffrey = f64::INFINITY;
        for p in &pts {
            assert!(p.rate_coverage >= prev_rate - 1e-12, "rate not monotone");
            prev_rate = p.rate_coverage;
            if let Some(j) = p.jeffrey {
                assert!(j <= prev_jeffrey + 1e-12, "jeffrey not monotone");
                assert!(j <= j0);
                prev_jeffrey = j;
                // rmse = 1/jeffrey on every defined point
                assert!((p.rmse.unwrap() * j - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn beta_min_unconstrained_outage() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 25.0, 0.5);
        let req = req_outage(1.0, 0.1, Objective::MaximizeRate);
        assert_eq!(beta_min(&m, &req, &quad).unwrap(), 0.0);
    }

    #[test]
    fn beta_min_bisection_brackets_constraint() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 25.0, 0.5);
        let req = req_outage(0.1, 0.1, Objective::MaximizeRate);
        let b = beta_min(&m, &req, &quad).unwrap();
        assert!(b > 0.0 && b < 1.0, "interior beta_min, got {b}");
        let target = 0.9;
        let at = coverage_at(&m, b, 0.1, &quad).unwrap();
        assert!(at >= target, "constraint must hold at beta_min");
        let below = coverage_at(&m, b - 1e-3, 0.1, &quad).unwrap();
        assert!(below < target, "constraint must fail 1e-3 below");
    }

    #[test]
    fn beta_min_infeasible_is_dimensioning_signal() {
        let quad = QuadratureSpec::default();
        // 1 BS/km at 20 dBm cannot reach 10% outage at -10 dB threshold
        let m = model(1.0, 20.0, 0.5);
        let req = req_outage(0.1, 0.1, Objective::MaximizeRate);
        assert!(matches!(
            beta_min(&m, &req, &quad),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn beta_min_regression_high_power() {
        // 1 BS/km, 25 dBm, gamma -10 dB, 20% outage: pinned pipeline value.
        let quad = QuadratureSpec::default();
        let m = model(1.0, 25.0, 0.5);
        let req = req_outage(0.2, 0.1, Objective::MaximizeRate);
        let b = beta_min(&m, &req, &quad).unwrap();
        assert!((b - 0.8).abs() < 5e-3, "regression moved: beta_min = {b}");
    }

    #[test]
    fn beta_max_unconstrained_without_limit() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 20.0, 0.5);
        let f2 = flat(&m);
        let req = ServiceRequirement::new(
            0.5,
            Some(0.1),
            None,
            Some(f64::INFINITY),
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        assert_eq!(beta_max(&m, &req, &f2, &quad).unwrap(), 1.0);
        let req_none =
            ServiceRequirement::new(0.5, Some(0.1), None, None, None, Objective::MaximizeRate)
                .unwrap();
        assert_eq!(beta_max(&m, &req_none, &f2, &quad).unwrap(), 1.0);
    }

    #[test]
    fn beta_max_bisection_brackets_constraint() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 20.0, 0.5);
        let f2 = narrow_pilot();
        let limit = 5e-4;
        let req = ServiceRequirement::new(
            1.0,
            Some(0.1),
            None,
            Some(limit),
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        let b = beta_max(&m, &req, &f2, &quad).unwrap();
        assert!(b > 0.0 && b < 1.0, "interior beta_max, got {b}");
        let at = rmse_at(&m, b, &f2, &quad).unwrap().unwrap();
        assert!(at <= limit, "constraint holds at beta_max");
        let above = rmse_at(&m, b + 1e-3, &f2, &quad).unwrap();
        assert!(
            above.is_none_or(|r| r > limit),
            "constraint must fail 1e-3 above"
        );
    }

    #[test]
    fn beta_max_infeasible_when_even_zero_fails() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 20.0, 0.5);
        let f2 = narrow_pilot();
        let req = ServiceRequirement::new(
            1.0,
            Some(0.1),
            None,
            Some(1e-9),
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        assert!(matches!(
            beta_max(&m, &req, &f2, &quad),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn plan_positioning_service_selects_beta_min() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 25.0, 0.5);
        let f2 = flat(&m);
        let req = ServiceRequirement::new(
            0.1,
            Some(0.1),
            None,
            None,
            Some(0.05),
            Objective::MaximizePositioning,
        )
        .unwrap();
        let thetas: Vec<f64> = [4.0f64, 8.0, 16.0].iter().map(|d| d.to_radians()).collect();
        let p = plan(&m, &req, &thetas, &f2, BoundVariant::Markov, &quad).unwrap();
        assert_eq!(p.beta_selected, p.beta_min);
        assert!((p.p_loc - (1.0 - p.beta_min) * m.power_total()).abs() < 1e-15);
        assert!(p.constraints_report.iter().all(|c| c.satisfied));
        assert!(p.beta_min <= p.beta_max);
        assert_eq!(p.candidates.len(), 3);
    }

    #[test]
    fn plan_rate_service_selects_beta_max() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 25.0, 0.5);
        let f2 = narrow_pilot();
        let req = ServiceRequirement::new(
            0.2,
            Some(0.1),
            None,
            Some(5e-4),
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        let thetas = vec![8f64.to_radians()];
        let p = plan(&m, &req, &thetas, &f2, BoundVariant::Markov, &quad).unwrap();
        assert_eq!(p.beta_selected, p.beta_max);
        assert!(p.beta_selected < 1.0);
        assert!(p.constraints_report.iter().all(|c| c.satisfied));
    }

    #[test]
    fn power_allocation_trend_over_beamwidth_ladder() {
        // Forcing the plan onto each rung of a narrowing beamwidth ladder:
        // the localization share may only grow for a positioning service,
        // the data share may only grow for a rate service (weakly; the
        // beta window itself does not depend on theta).
        let quad = QuadratureSpec::default();
        let m = model(2.0, 25.0, 0.5);
        let ladder = [16f64, 8.0, 4.0];

        let f2 = flat(&m);
        let svc1 = ServiceRequirement::new(
            0.1,
            Some(0.1),
            None,
            None,
            Some(0.05),
            Objective::MaximizePositioning,
        )
        .unwrap();
        let mut prev_p_loc = -1.0;
        for deg in ladder {
            let p = plan(&m, &svc1, &[deg.to_radians()], &f2, BoundVariant::Markov, &quad)
                .unwrap();
            assert!(p.p_loc >= prev_p_loc, "p_loc shrank at {deg} deg");
            prev_p_loc = p.p_loc;
        }

        let pilot = narrow_pilot();
        let svc2 = ServiceRequirement::new(
            0.2,
            Some(0.1),
            None,
            Some(5e-4),
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        let mut prev_p_data = -1.0;
        for deg in ladder {
            let p = plan(&m, &svc2, &[deg.to_radians()], &pilot, BoundVariant::Markov, &quad)
                .unwrap();
            assert!(p.p_data >= prev_p_data, "p_data shrank at {deg} deg");
            prev_p_data = p.p_data;
        }
    }

    #[test]
    fn plan_infeasible_window() {
        let quad = QuadratureSpec::default();
        // Outage wants large beta; positioning wants tiny rmse -> window empty.
        let m = model(2.0, 25.0, 0.5);
        let f2 = narrow_pilot();
        let req = ServiceRequirement::new(
            0.1,
            Some(0.1),
            None,
            Some(2e-4),
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        let thetas = vec![8f64.to_radians()];
        match plan(&m, &req, &thetas, &f2, BoundVariant::Markov, &quad) {
            Err(Error::Infeasible { reason }) => {
                assert!(reason.contains("power budget"), "hint missing: {reason}")
            }
            other => panic!("expected Infeasible, got {other:?}"),
        }
    }

    #[test]
    fn plan_reports_selected_window_consistency() {
        let quad = QuadratureSpec::default();
        let m = model(2.0, 25.0, 0.5);
        let f2 = narrow_pilot();
        let req = ServiceRequirement::new(
            0.2,
            Some(0.1),
            None,
            Some(5e-4),
            None,
            Objective::MaximizePositioning,
        )
        .unwrap();
        let thetas: Vec<f64> = [2.0f64, 6.0].iter().map(|d| d.to_radians()).collect();
        let p = plan(&m, &req, &thetas, &f2, BoundVariant::Markov, &quad).unwrap();
        assert!(p.beta_min <= p.beta_selected && p.beta_selected <= p.beta_max);
        // a feasible plan reports every constraint as satisfied, with the
        // achieved values backing the flags up
        for c in &p.constraints_report {
            assert!(c.satisfied, "{} flagged unsatisfied", c.name);
            assert!(
                c.achieved <= c.required * (1.0 + 1e-6) + 1e-9,
                "{}: achieved {} vs required {}",
                c.name,
                c.achieved,
                c.required
            );
        }
    }
}
