use std::fmt;
use std::path::Path;
use std::str::FromStr;

use qdeform_core::{FunctionFamily, TruncatedFockSpace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unsupported format `{other}` (expected json or csv)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

/// Families travel as strings such as `1` or `q^1.5`.
mod family_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(family: &FunctionFamily, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(family)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<FunctionFamily, D::Error> {
        let raw = String::deserialize(de)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub s_grid: Vec<f64>,
    #[serde(with = "family_str")]
    pub psi_family: FunctionFamily,
    #[serde(with = "family_str")]
    pub beta_family: FunctionFamily,
    pub cutoff: usize,
    pub tolerance: f64,
    pub output_format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            s_grid: vec![0.1, 0.5, 0.9],
            psi_family: FunctionFamily::ConstantOne,
            beta_family: FunctionFamily::ConstantOne,
            cutoff: TruncatedFockSpace::AUDIT_CUTOFF,
            tolerance: DEFAULT_TOLERANCE,
            output_format: OutputFormat::Json,
        }
    }
}

/// Default pass threshold. At D = 16 the largest interior entries reach ~1e5
/// for s near 1, so f64 rounding alone leaves residuals around 1e-10.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const MIN_SWEEP_CUTOFF: usize = 4;

/// Every validation failure found in a config.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid sweep config: {}", .issues.join("; "))]
pub struct ConfigError {
    pub issues: Vec<String>,
}

impl SweepConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError { issues: vec![format!("config: cannot read {}: {e}", path.display())] })?;
        serde_json::from_str(&text).map_err(|e| ConfigError { issues: vec![format!("config: {e}")] })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut issues = Vec::new();
        if self.s_grid.is_empty() {
            issues.push("s_grid: must not be empty".to_string());
        }
        for (i, s) in self.s_grid.iter().enumerate() {
            if !(*s > 0.0 && *s <= 1.0) {
                issues.push(format!("s_grid[{i}]: {s} is outside (0, 1]"));
            }
        }
        if self.s_grid.windows(2).any(|w| w[0] >= w[1] || w[0].is_nan() || w[1].is_nan()) {
            issues.push("s_grid: must be strictly increasing".to_string());
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            issues.push(format!("tolerance: {} must be positive", self.tolerance));
        }
        if self.cutoff < MIN_SWEEP_CUTOFF {
            issues.push(format!("cutoff: {} is below {MIN_SWEEP_CUTOFF}", self.cutoff));
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { issues })
        }
    }
}
