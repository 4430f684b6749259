//! Scenario configuration: a single JSON document with strict keys.
//!
//! Unknown keys are rejected. Geometry lengths are wavelengths unless a
//! `lambda` is given, in which case they are metres and get normalised on
//! load. Missing sections fall back to the experiment defaults (10 MHz
//! bandwidth, 4-element receive ring, mean arrival angle pi/6).

use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
}

/// UCA pair description. `N`/`M` are transmit/receive element counts,
/// `r`/`R` the ring radii, `d` the axial separation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    #[serde(rename = "N")]
    pub tx_count: usize,
    #[serde(rename = "M")]
    pub rx_count: usize,
    #[serde(rename = "r", default = "default_radius")]
    pub tx_radius: f64,
    #[serde(rename = "R", default = "default_radius")]
    pub rx_radius: f64,
    #[serde(rename = "d", default = "default_axial_distance")]
    pub axial_distance: f64,
    /// Carrier wavelength in the same unit as the lengths above; when set,
    /// lengths are divided by it so everything is carried in wavelengths.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

fn default_radius() -> f64 {
    2.0
}

fn default_axial_distance() -> f64 {
    15.0
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            tx_count: 4,
            rx_count: 4,
            tx_radius: default_radius(),
            rx_radius: default_radius(),
            axial_distance: default_axial_distance(),
            lambda: None,
        }
    }
}

/// Truncated-Gaussian angular spread; when the whole section is absent each
/// experiment applies its own default std-dev.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadConfig {
    #[serde(default = "default_mean_aoa")]
    pub mean_aoa: f64,
    pub std_dev: f64,
}

pub fn default_mean_aoa() -> f64 {
    std::f64::consts::FRAC_PI_6
}

/// Power, bandwidth and noise bookkeeping.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    #[serde(default = "default_one")]
    pub beta: f64,
    #[serde(default = "default_bandwidth")]
    pub bandwidth: f64,
    #[serde(default = "default_one")]
    pub noise_variance: f64,
    #[serde(default = "default_one")]
    pub power: f64,
}

fn default_one() -> f64 {
    1.0
}

fn default_bandwidth() -> f64 {
    1.0e7
}

impl Default for LinkConfig {
    fn default() -> Self {
        Self {
            beta: 1.0,
            bandwidth: default_bandwidth(),
            noise_variance: 1.0,
            power: 1.0,
        }
    }
}

/// Inclusive arithmetic sweep grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridConfig {
    /// Grid points, each rounded to the 12 significant digits the CSV
    /// serialisation carries, so printed values reparse to themselves.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step).round() as i64;
        (0..=count.max(0))
            .map(|i| round_sig12(self.start + i as f64 * self.step))
            .collect()
    }
}

/// Round to 12 significant digits (the CSV output precision).
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn default_radius_grid() -> GridConfig {
    GridConfig {
        start: 0.1,
        stop: 10.0,
        step: 0.1,
    }
}

fn default_snr_grid() -> GridConfig {
    GridConfig {
        start: -10.0,
        stop: 40.0,
        step: 2.0,
    }
}

fn default_draws() -> u64 {
    1000
}

fn default_seed() -> u64 {
    1
}

fn default_rank_tol() -> f64 {
    1e-3
}

fn default_dof_cases() -> Vec<[usize; 2]> {
    vec![[4, 4], [4, 8], [8, 8]]
}

fn default_out_dir() -> String {
    "out".into()
}

/// Whole scenario: geometry + spread + link + sweep axes + run controls.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spread: Option<SpreadConfig>,
    #[serde(default)]
    pub link: LinkConfig,
    #[serde(default = "default_radius_grid")]
    pub radius_grid: GridConfig,
    #[serde(default = "default_snr_grid")]
    pub snr_grid_db: GridConfig,
    #[serde(default = "default_draws")]
    pub draws: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_rank_tol")]
    pub rank_tol: f64,
    #[serde(default = "default_dof_cases")]
    pub dof_cases: Vec<[usize; 2]>,
    #[serde(default = "default_out_dir")]
    pub out_dir: String,
    #[serde(default)]
    pub svg: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            geometry: GeometryConfig::default(),
            spread: None,
            link: LinkConfig::default(),
            radius_grid: default_radius_grid(),
            snr_grid_db: default_snr_grid(),
            draws: default_draws(),
            seed: default_seed(),
            rank_tol: default_rank_tol(),
            dof_cases: default_dof_cases(),
            out_dir: default_out_dir(),
            svg: false,
        }
    }
}

impl ScenarioConfig {
    /// Normalises metre-based geometry to wavelengths and checks every
    /// field, naming the offender on failure.
    pub fn validate(mut self) -> Result<Self, ConfigError> {
        if let Some(lambda) = self.geometry.lambda {
            if !lambda.is_finite() || lambda <= 0.0 {
                return Err(invalid("geometry.lambda", "must be finite and > 0"));
            }
            self.geometry.tx_radius /= lambda;
            self.geometry.rx_radius /= lambda;
            self.geometry.axial_distance /= lambda;
            self.geometry.lambda = None;
        }
        if self.geometry.tx_count == 0 {
            return Err(invalid("geometry.N", "must be at least 1"));
        }
        if self.geometry.rx_count == 0 {
            return Err(invalid("geometry.M", "must be at least 1"));
        }
        positive("geometry.r", self.geometry.tx_radius)?;
        positive("geometry.R", self.geometry.rx_radius)?;
        positive("geometry.d", self.geometry.axial_distance)?;
        if let Some(spread) = &self.spread {
            positive("spread.std_dev", spread.std_dev)?;
            if !spread.mean_aoa.is_finite() {
                return Err(invalid("spread.mean_aoa", "must be finite"));
            }
        }
        positive("link.beta", self.link.beta)?;
        positive("link.bandwidth", self.link.bandwidth)?;
        positive("link.noise_variance", self.link.noise_variance)?;
        positive("link.power", self.link.power)?;
        grid_increasing("radius_grid", &self.radius_grid)?;
        positive("radius_grid.start", self.radius_grid.start)?;
        grid_increasing("snr_grid_db", &self.snr_grid_db)?;
        if self.draws == 0 {
            return Err(invalid("draws", "must be at least 1"));
        }
        if !(self.rank_tol > 0.0 && self.rank_tol < 1.0) {
            return Err(invalid("rank_tol", "must lie in (0, 1)"));
        }
        if self.dof_cases.is_empty() {
            return Err(invalid("dof_cases", "must list at least one (N, M) pair"));
        }
        for case in &self.dof_cases {
            if case[0] == 0 || case[1] == 0 {
                return Err(invalid("dof_cases", "element counts must be at least 1"));
            }
        }
        Ok(self)
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        reason: reason.into(),
    }
}

fn positive(field: &'static str, v: f64) -> Result<(), ConfigError> {
    if !v.is_finite() || v <= 0.0 {
        return Err(invalid(field, format!("must be finite and > 0, got {v}")));
    }
    Ok(())
}

fn grid_increasing(field: &'static str, grid: &GridConfig) -> Result<(), ConfigError> {
    if !grid.step.is_finite() || grid.step <= 0.0 || grid.stop <= grid.start {
        return Err(ConfigError::Invalid {
            field,
            reason: format!(
                "grid must be strictly increasing (start {}, stop {}, step {})",
                grid.start, grid.stop, grid.step
            ),
        });
    }
    Ok(())
}

/// Loads, parses, normalises and validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let cfg: ScenarioConfig = serde_json::from_str(&text)?;
    cfg.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_gets_defaults() {
        let dir = std::env::temp_dir().join("ucalink-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("minimal.json");
        std::fs::write(&path, r#"{"geometry": {"N": 4, "M": 4}}"#).unwrap();
        let cfg = load_scenario(&path).unwrap();
        assert_eq!(cfg.link.bandwidth, 1.0e7);
        assert_eq!(cfg.draws, 1000);
        assert_eq!(cfg.geometry.rx_radius, 2.0);
        assert_eq!(cfg.dof_cases.len(), 3);
    }

    #[test]
    fn negative_radius_names_the_field() {
        let cfg: ScenarioConfig =
            serde_json::from_str(r#"{"geometry": {"N": 4, "M": 4, "r": -1.0}}"#).unwrap();
        match cfg.validate() {
            Err(ConfigError::Invalid { field, .. }) => assert_eq!(field, "geometry.r"),
            other => panic!("expected invalid-field error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let r: Result<ScenarioConfig, _> =
            serde_json::from_str(r#"{"geometry": {"N": 4, "M": 4}, "typo_key": 1}"#);
        assert!(r.is_err());
        let r: Result<ScenarioConfig, _> =
            serde_json::from_str(r#"{"geometry": {"N": 4, "M": 4, "radius": 1.0}}"#);
        assert!(r.is_err());
    }

    #[test]
    fn serde_roundtrip_preserves_fields() {
        let mut cfg = ScenarioConfig::default();
        cfg.seed = 99;
        cfg.draws = 17;
        cfg.geometry.tx_count = 6;
        cfg.spread = Some(SpreadConfig {
            mean_aoa: 0.4,
            std_dev: 0.07,
        });
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back: ScenarioConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.seed, 99);
        assert_eq!(back.draws, 17);
        assert_eq!(back.geometry.tx_count, 6);
        assert_eq!(back.spread.as_ref().unwrap().std_dev, 0.07);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }

    #[test]
    fn metres_normalise_to_wavelengths() {
        let cfg: ScenarioConfig = serde_json::from_str(
            r#"{"geometry": {"N": 4, "M": 4, "r": 0.2, "R": 0.2, "d": 1.5, "lambda": 0.1}}"#,
        )
        .unwrap();
        let cfg = cfg.validate().unwrap();
        assert!((cfg.geometry.rx_radius - 2.0).abs() < 1e-12);
        assert!((cfg.geometry.axial_distance - 15.0).abs() < 1e-12);
        assert!(cfg.geometry.lambda.is_none());
    }

    #[test]
    fn grid_values_round_cleanly() {
        let grid = GridConfig {
            start: 0.1,
            stop: 10.0,
            step: 0.1,
        };
        let values = grid.values();
        assert_eq!(values.len(), 100);
        assert_eq!(values[29], 3.0); // exactly, not 3.0000000000000004
        assert_eq!(values[99], 10.0);
    }

    #[test]
    fn bad_grids_are_rejected() {
        let mut cfg = ScenarioConfig::default();
        cfg.radius_grid.step = -0.1;
        assert!(cfg.clone().validate().is_err());
        cfg.radius_grid.step = 0.1;
        cfg.radius_grid.stop = 0.05;
        assert!(cfg.validate().is_err());
    }
}
