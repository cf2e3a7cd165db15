//! Flat key-value configuration files: `key = value` lines with `#`
//! comments. One schema for the deployment model, one for service
//! requirements.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{NetworkModel, Objective, ServiceRequirement};

/// Parse `key = value` lines into an ordered map of raw string values.
/// Blank lines and `#` comments are skipped; duplicate keys are rejected.
pub fn parse_flat_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::ConfigSyntax {
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::ConfigSyntax {
                line: idx + 1,
                message: "empty key or value".to_string(),
            });
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(Error::DuplicateKey { key });
        }
    }
    Ok(map)
}

fn parse_numeric(map: &BTreeMap<String, String>) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for (k, v) in map {
        let parsed = v.parse::<f64>().map_err(|_| Error::ConfigSyntax {
            line: 0,
            message: format!("value for `{k}` is not a number: `{v}`"),
        })?;
        out.insert(k.clone(), parsed);
    }
    Ok(out)
}

/// Parse a deployment-model configuration file.
pub fn parse_model_config(text: &str) -> Result<NetworkModel> {
    let raw = parse_flat_file(text)?;
    let numeric = parse_numeric(&raw)?;
    NetworkModel::from_engineering_units(&numeric)
}

/// Recognized requirement-file keys.
const REQUIREMENT_KEYS: [&str; 6] = [
    "outage_max",
    "gamma_db",
    "rate_mbps",
    "pos_error_m",
    "misalign_max",
    "objective",
];

/// Parse a service-requirements file.
///
/// Keys: `outage_max`, `gamma_db` or `rate_mbps` (at least one),
/// `pos_error_m`, `misalign_max`, and `objective` in
/// {`positioning`, `rate`}.
pub fn parse_requirements(text: &str) -> Result<ServiceRequirement> {
    let raw = parse_flat_file(text)?;
    for key in raw.keys() {
        if !REQUIREMENT_KEYS.contains(&key.as_str()) {
            return Err(Error::UnknownKey { key: key.clone() });
        }
    }
    let objective = match raw.get("objective").map(String::as_str) {
        Some("positioning") => Objective::MaximizePositioning,
        Some("rate") => Objective::MaximizeRate,
        Some(other) => {
            return Err(Error::ConfigSyntax {
                line: 0,
                message: format!("objective must be `positioning` or `rate`, got `{other}`"),
            })
        }
        None => {
            return Err(Error::MissingField {
                key: "objective".to_string(),
            })
        }
    };
    let numeric = |key: &str| -> Result<Option<f64>> {
        match raw.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::ConfigSyntax {
                    line: 0,
                    message: format!("value for `{key}` is not a number: `{v}`"),
                }),
        }
    };
    let outage_max = numeric("outage_max")?.ok_or(Error::MissingField {
        key: "outage_max".to_string(),
    })?;
    let snr_threshold = numeric("gamma_db")?.map(crate::model::db_to_linear);
    let rate_threshold = numeric("rate_mbps")?.map(|m| m * 1e6);
    let pos_error_max = numeric("pos_error_m")?;
    let misalign_max = numeric("misalign_max")?;
    ServiceRequirement::new(
        outage_max,
        snr_threshold,
        rate_threshold,
        pos_error_max,
        misalign_max,
        objective,
    )
}
