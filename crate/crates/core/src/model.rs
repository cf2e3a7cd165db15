//! Deployment and link-budget parameters, unit conversion, and service
//! requirements.
//!
//! Everything downstream computes in SI/linear units; dB, dBm, degrees and
//! per-kilometre densities exist only at this configuration boundary. A
//! [`NetworkModel`] is validated on construction and immutable afterwards,
//! so it can be shared freely across threads.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Speed of light [m/s].
const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Reference carrier used for the default path-loss coefficient [Hz].
const DEFAULT_CARRIER_HZ: f64 = 28.0e9;

/// dBm to watt.
pub fn dbm_to_watt(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Watt to dBm.
pub fn watt_to_dbm(watt: f64) -> f64 {
    10.0 * watt.log10() + 30.0
}

/// dB to linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear power ratio to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Default free-space path-loss coefficient `(c / (4 pi f_c))^2` at 28 GHz.
pub fn default_path_loss_coefficient() -> f64 {
    let lam = SPEED_OF_LIGHT / DEFAULT_CARRIER_HZ;
    let r = lam / (4.0 * std::f64::consts::PI);
    r * r
}

/// Plain SI-unit parameter set used to build a [`NetworkModel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkModelParams {
    /// BS linear density [1/m].
    pub lambda_bs: f64,
    /// Total BS transmit power [W].
    pub power_total: f64,
    /// Fraction of power allotted to data transmission, in [0, 1].
    pub beta: f64,
    /// Antenna beamwidth [rad].
    pub theta: f64,
    /// BS height [m].
    pub h_bs: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Path-loss coefficient, linear.
    pub k_pl: f64,
    /// Product of TX/RX directivity gains, linear.
    pub g0: f64,
    /// Fading shape parameter (positive integer).
    pub n_nakagami: u32,
    /// Operating bandwidth [Hz].
    pub bandwidth: f64,
    /// Noise power spectral density [W/Hz].
    pub noise_psd: f64,
}

/// Validated, immutable deployment model in SI/linear units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkModel {
    params: NetworkModelParams,
}

fn check(cond: bool, field: &'static str, value: f64, constraint: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::UnitOutOfRange {
            field,
            value,
            constraint,
        })
    }
}

impl NetworkModel {
    pub fn new(p: NetworkModelParams) -> Result<Self> {
        check(p.lambda_bs > 0.0 && p.lambda_bs.is_finite(), "lambda_bs", p.lambda_bs, "> 0")?;
        check(p.power_total > 0.0 && p.power_total.is_finite(), "power_total", p.power_total, "> 0")?;
        check((0.0..=1.0).contains(&p.beta), "beta", p.beta, "in [0, 1]")?;
        check(p.theta > 0.0 && p.theta < std::f64::consts::PI, "theta", p.theta, "in (0, pi)")?;
        check(p.h_bs > 0.0 && p.h_bs.is_finite(), "h_bs", p.h_bs, "> 0")?;
        check(p.alpha >= 2.0 && p.alpha.is_finite(), "alpha", p.alpha, ">= 2")?;
        check(p.k_pl > 0.0 && p.k_pl.is_finite(), "k_pl", p.k_pl, "> 0")?;
        check(p.g0 > 0.0 && p.g0.is_finite(), "g0", p.g0, "> 0")?;
        check(p.n_nakagami >= 1, "n_nakagami", p.n_nakagami as f64, ">= 1")?;
        check(p.bandwidth > 0.0 && p.bandwidth.is_finite(), "bandwidth", p.bandwidth, "> 0")?;
        check(p.noise_psd > 0.0 && p.noise_psd.is_finite(), "noise_psd", p.noise_psd, "> 0")?;
        let model = Self { params: p };
        check(
            model.noise_power() > 0.0 && model.noise_power().is_finite(),
            "noise_power",
            model.noise_power(),
            "> 0",
        )?;
        Ok(model)
    }

    /// Build from conventional engineering units.
    ///
    /// Recognized keys (values all numeric):
    /// `lambda_km` [1/km], `p_dbm`, `beta`, `theta_deg`, `h_b_m`, `alpha`,
    /// `k_db`, `g0_db`, `n0`, `bw_mhz`, `noise_psd_dbm_hz`.
    ///
    /// `lambda_km`, `p_dbm`, `beta` and `theta_deg` are required. The rest
    /// default to a 28 GHz street deployment: `alpha` 2, `h_b_m` 10,
    /// `bw_mhz` 1000, `noise_psd_dbm_hz` -164 (thermal floor plus 10 dB
    /// noise figure), `k_db` the free-space coefficient at 28 GHz, `g0_db`
    /// 10, `n0` 3.
    pub fn from_engineering_units(map: &BTreeMap<String, f64>) -> Result<Self> {
        for key in map.keys() {
            if !ENGINEERING_KEYS.contains(&key.as_str()) {
                return Err(Error::UnknownKey { key: key.clone() });
            }
        }
        let required = |key: &str| {
            map.get(key).copied().ok_or(Error::MissingField {
                key: key.to_string(),
            })
        };
        let optional = |key: &str, default: f64| map.get(key).copied().unwrap_or(default);

        let n0_raw = optional("n0", 3.0);
        if n0_raw.fract() != 0.0 || !(n0_raw >= 1.0) || n0_raw > u32::MAX as f64 {
            return Err(Error::UnitOutOfRange {
                field: "n0",
                value: n0_raw,
                constraint: "positive integer",
            });
        }

        Self::new(NetworkModelParams {
            lambda_bs: required("lambda_km")? * 1e-3,
            power_total: dbm_to_watt(required("p_dbm")?),
            beta: required("beta")?,
            theta: required("theta_deg")?.to_radians(),
            h_bs: optional("h_b_m", 10.0),
            alpha: optional("alpha", 2.0),
            k_pl: db_to_linear(optional("k_db", linear_to_db(default_path_loss_coefficient()))),
            g0: db_to_linear(optional("g0_db", 10.0)),
            n_nakagami: n0_raw as u32,
            bandwidth: optional("bw_mhz", 1000.0) * 1e6,
            noise_psd: dbm_to_watt(optional("noise_psd_dbm_hz", -164.0)),
        })
    }

    /// Render back to the engineering-unit key set accepted by
    /// [`NetworkModel::from_engineering_units`].
    pub fn to_engineering_units(&self) -> BTreeMap<String, f64> {
        let p = &self.params;
        let mut map = BTreeMap::new();
        map.insert("lambda_km".to_string(), p.lambda_bs * 1e3);
        map.insert("p_dbm".to_string(), watt_to_dbm(p.power_total));
        map.insert("beta".to_string(), p.beta);
        map.insert("theta_deg".to_string(), p.theta.to_degrees());
        map.insert("h_b_m".to_string(), p.h_bs);
        map.insert("alpha".to_string(), p.alpha);
        map.insert("k_db".to_string(), linear_to_db(p.k_pl));
        map.insert("g0_db".to_string(), linear_to_db(p.g0));
        map.insert("n0".to_string(), p.n_nakagami as f64);
        map.insert("bw_mhz".to_string(), p.bandwidth * 1e-6);
        map.insert("noise_psd_dbm_hz".to_string(), watt_to_dbm(p.noise_psd));
        map
    }

    pub fn lambda_bs(&self) -> f64 {
        self.params.lambda_bs
    }
    pub fn power_total(&self) -> f64 {
        self.params.power_total
    }
    pub fn beta(&self) -> f64 {
        self.params.beta
    }
    pub fn theta(&self) -> f64 {
        self.params.theta
    }
    pub fn h_bs(&self) -> f64 {
        self.params.h_bs
    }
    pub fn alpha(&self) -> f64 {
        self.params.alpha
    }
    pub fn k_pl(&self) -> f64 {
        self.params.k_pl
    }
    pub fn g0(&self) -> f64 {
        self.params.g0
    }
    pub fn n_nakagami(&self) -> u32 {
        self.params.n_nakagami
    }
    pub fn bandwidth(&self) -> f64 {
        self.params.bandwidth
    }
    pub fn noise_psd(&self) -> f64 {
        self.params.noise_psd
    }

    /// Noise power over the operating bandwidth [W].
    pub fn noise_power(&self) -> f64 {
        self.params.noise_psd * self.params.bandwidth
    }

    /// Split the power budget into (localization, data) parts.
    ///
    /// Computed as `p_data = beta * P`, `p_loc = P - p_data`, which keeps
    /// the two parts summing to the budget to within one ulp.
    pub fn power_split(&self) -> (f64, f64) {
        let p_data = self.params.beta * self.params.power_total;
        let p_loc = self.params.power_total - p_data;
        (p_loc, p_data)
    }

    /// Localization transmit power [W].
    pub fn power_localization(&self) -> f64 {
        self.power_split().0
    }

    /// Data transmit power [W].
    pub fn power_data(&self) -> f64 {
        self.power_split().1
    }

    /// Copy with a different power split fraction.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        let mut p = self.params;
        p.beta = beta;
        Self::new(p)
    }

    /// Copy with a different beamwidth [rad].
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        let mut p = self.params;
        p.theta = theta;
        Self::new(p)
    }

    /// Copy with a different BS density [1/m].
    pub fn with_lambda(&self, lambda_bs: f64) -> Result<Self> {
        let mut p = self.params;
        p.lambda_bs = lambda_bs;
        Self::new(p)
    }

    /// Copy with a different power budget [W].
    pub fn with_power(&self, power_total: f64) -> Result<Self> {
        let mut p = self.params;
        p.power_total = power_total;
        Self::new(p)
    }
}

/// Accepted engineering-unit configuration keys, in file order.
pub const ENGINEERING_KEYS: [&str; 11] = [
    "lambda_km",
    "p_dbm",
    "beta",
    "theta_deg",
    "h_b_m",
    "alpha",
    "k_db",
    "g0_db",
    "n0",
    "bw_mhz",
    "noise_psd_dbm_hz",
];

/// What the operator wants to maximize once the hard constraints hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    MaximizePositioning,
    MaximizeRate,
}

/// Per-service constraint set for the parameter planner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServiceRequirement {
    /// Maximum tolerable outage probability, in [0, 1].
    pub outage_max: f64,
    /// SNR coverage threshold, linear. At least one of `snr_threshold` /
    /// `rate_threshold` must be present.
    pub snr_threshold: Option<f64>,
    /// Rate threshold [bit/s]; converted to an SNR threshold through the
    /// bandwidth when `snr_threshold` is absent.
    pub rate_threshold: Option<f64>,
    /// Maximum tolerable positioning RMSE [m].
    pub pos_error_max: Option<f64>,
    /// Maximum tolerable mean misalignment bound.
    pub misalign_max: Option<f64>,
    pub objective: Objective,
}

impl ServiceRequirement {
    pub fn new(
        outage_max: f64,
        snr_threshold: Option<f64>,
        rate_threshold: Option<f64>,
        pos_error_max: Option<f64>,
        misalign_max: Option<f64>,
        objective: Objective,
    ) -> Result<Self> {
        check(
            (0.0..=1.0).contains(&outage_max),
            "outage_max",
            outage_max,
            "in [0, 1]",
        )?;
        if snr_threshold.is_none() && rate_threshold.is_none() {
            return Err(Error::MissingField {
                key: "snr_threshold | rate_threshold".to_string(),
            });
        }
        if let Some(g) = snr_threshold {
            check(g > 0.0 && g.is_finite(), "snr_threshold", g, "> 0")?;
        }
        if let Some(r) = rate_threshold {
            check(r > 0.0 && r.is_finite(), "rate_threshold", r, "> 0")?;
        }
        if let Some(e) = pos_error_max {
            check(e > 0.0, "pos_error_max", e, "> 0")?;
        }
        if let Some(m) = misalign_max {
            check(m > 0.0 && m <= 1.0, "misalign_max", m, "in (0, 1]")?;
        }
        Ok(Self {
            outage_max,
            snr_threshold,
            rate_threshold,
            pos_error_max,
            misalign_max,
            objective,
        })
    }

    /// The SNR threshold the outage constraint applies to: the explicit one
    /// if set, otherwise `2^(r0/B) - 1` from the rate threshold.
    pub fn effective_snr_threshold(&self, bandwidth: f64) -> f64 {
        match self.snr_threshold {
            Some(g) => g,
            None => {
                let r0 = self.rate_threshold.expect("validated: one threshold present");
                (r0 / bandwidth).exp2() - 1.0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn default_map() -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        m.insert("lambda_km".into(), 2.0);
        m.insert("p_dbm".into(), 20.0);
        m.insert("beta".into(), 0.15);
        m.insert("theta_deg".into(), 10.0);
        m
    }

    #[test]
    fn dbm_conversion_definition() {
        assert!((dbm_to_watt(20.0) - 0.1).abs() < 1e-15);
        assert!((dbm_to_watt(30.0) - 1.0).abs() < 1e-15);
        assert!((db_to_linear(10.0) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn engineering_units_produce_si_model() {
        let m = NetworkModel::from_engineering_units(&default_map()).unwrap();
        assert!((m.power_total() - 0.1).abs() < 1e-15);
        assert!((m.g0() - 10.0).abs() < 1e-12);
        assert!((m.lambda_bs() - 0.002).abs() < 1e-18);
        assert_eq!(m.n_nakagami(), 3);
        assert!((m.bandwidth() - 1e9).abs() < 1.0);
        // default K: free-space at 28 GHz, about -61.4 dB
        let k_db = linear_to_db(m.k_pl());
        assert!((k_db + 61.39).abs() < 0.01, "k_db = {k_db}");
    }

    #[test]
    fn power_split_examples() {
        let m = NetworkModel::from_engineering_units(&default_map()).unwrap();
        let (pl, pd) = m.power_split();
        assert!((pl - 0.085).abs() < 1e-15);
        assert!((pd - 0.015).abs() < 1e-15);
        assert_eq!(pl + pd, m.power_total());

        let m0 = m.with_beta(0.0).unwrap();
        assert_eq!(m0.power_split(), (m0.power_total(), 0.0));
        let m1 = m.with_beta(1.0).unwrap();
        assert_eq!(m1.power_split(), (0.0, m1.power_total()));
    }

    #[test]
    fn missing_required_field_is_named() {
        let mut m = default_map();
        m.remove("p_dbm");
        match NetworkModel::from_engineering_units(&m) {
            Err(Error::MissingField { key }) => assert_eq!(key, "p_dbm"),
            other => panic!("expected MissingField, got {other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let mut m = default_map();
        m.insert("p_watts".into(), 1.0);
        assert!(matches!(
            NetworkModel::from_engineering_units(&m),
            Err(Error::UnknownKey { .. })
        ));
    }

    #[test]
    fn invariant_boundaries_rejected() {
        let base = NetworkModel::from_engineering_units(&default_map()).unwrap();
        // every numeric field: zero / negative / NaN / infinite
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(base.with_lambda(bad).is_err(), "lambda {bad}");
            assert!(base.with_power(bad).is_err(), "power {bad}");
            if bad != 0.0 {
                assert!(base.with_beta(bad).is_err(), "beta {bad}");
            }
            assert!(base.with_theta(bad).is_err(), "theta {bad}");
        }
        assert!(base.with_beta(1.0 + 1e-9).is_err());
        assert!(base.with_theta(std::f64::consts::PI).is_err());

        let mut p = NetworkModelParams {
            lambda_bs: 0.002,
            power_total: 0.1,
            beta: 0.5,
            theta: 0.2,
            h_bs: 10.0,
            alpha: 2.0,
            k_pl: 1e-6,
            g0: 10.0,
            n_nakagami: 3,
            bandwidth: 1e9,
            noise_psd: 4e-20,
        };
        assert!(NetworkModel::new(p).is_ok());
        p.alpha = 1.9;
        assert!(NetworkModel::new(p).is_err());
        p.alpha = 2.0;
        p.h_bs = 0.0;
        assert!(NetworkModel::new(p).is_err());
        p.h_bs = 10.0;
        p.n_nakagami = 0;
        assert!(NetworkModel::new(p).is_err());
        p.n_nakagami = 1;
        p.noise_psd = f64::NAN;
        assert!(NetworkModel::new(p).is_err());
        p.noise_psd = 4e-20;
        p.k_pl = -1.0;
        assert!(NetworkModel::new(p).is_err());
    }

    #[test]
    fn n0_must_be_integer() {
        let mut m = default_map();
        m.insert("n0".into(), 2.5);
        assert!(matches!(
            NetworkModel::from_engineering_units(&m),
            Err(Error::UnitOutOfRange { field: "n0", .. })
        ));
    }

    #[test]
    fn engineering_round_trip_identity() {
        let mut m = default_map();
        m.insert("h_b_m".into(), 12.5);
        m.insert("alpha".into(), 2.7);
        m.insert("k_db".into(), -70.0);
        m.insert("g0_db".into(), 13.0);
        m.insert("n0".into(), 4.0);
        m.insert("bw_mhz".into(), 400.0);
        m.insert("noise_psd_dbm_hz".into(), -170.0);
        let model = NetworkModel::from_engineering_units(&m).unwrap();
        let back = model.to_engineering_units();
        for (k, v) in &m {
            let got = back[k];
            let rel = ((got - v) / v).abs();
            assert!(rel < 1e-12, "{k}: {v} -> {got}");
        }
    }

    #[test]
    fn requirement_needs_some_threshold() {
        assert!(ServiceRequirement::new(0.1, None, None, None, None, Objective::MaximizeRate)
            .is_err());
        let r = ServiceRequirement::new(
            0.1,
            None,
            Some(5e8),
            None,
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        // 2^(r0/B) - 1 at B = 1 GHz, r0 = 500 Mbps
        let g = r.effective_snr_threshold(1e9);
        assert!((g - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        // explicit threshold wins
        let r2 = ServiceRequirement::new(
            0.1,
            Some(0.1),
            Some(5e8),
            None,
            None,
            Objective::MaximizeRate,
        )
        .unwrap();
        assert_eq!(r2.effective_snr_threshold(1e9), 0.1);
    }

    #[test]
    fn requirement_range_checks() {
        assert!(
            ServiceRequirement::new(1.1, Some(0.1), None, None, None, Objective::MaximizeRate)
                .is_err()
        );
        assert!(ServiceRequirement::new(
            0.1,
            Some(-0.1),
            None,
            None,
            None,
            Objective::MaximizeRate
        )
        .is_err());
        assert!(ServiceRequirement::new(
            0.1,
            Some(0.1),
            None,
            Some(-1.0),
            None,
            Objective::MaximizeRate
        )
        .is_err());
        assert!(ServiceRequirement::new(
            0.1,
            Some(0.1),
            None,
            None,
            Some(1.5),
            Objective::MaximizeRate
        )
        .is_err());
    }
}
