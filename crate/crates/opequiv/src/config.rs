//! Run configuration: defaults, a line-oriented `key = value` config file,
//! and the precedence chain flags > config file > environment default.

use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::findim::Tolerances;

/// Environment variable naming a default config file.
pub const CONFIG_ENV_VAR: &str = "OPEQUIV_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub horizon: usize,
    pub m_max: usize,
    pub delta_floor: f64,
    #[serde(flatten)]
    pub tolerances: Tolerances,
    pub seed: u64,
    /// None writes the report to stdout.
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            horizon: 10_000,
            m_max: 16,
            delta_floor: 1e-6,
            tolerances: Tolerances::default(),
            seed: 0,
            output: None,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    /// Apply a config file onto the defaults.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Line {
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |message: String| ConfigError::Line {
                line: idx + 1,
                message,
            };
            match key {
                "horizon" => {
                    self.horizon = value
                        .parse()
                        .map_err(|_| bad(format!("bad horizon `{value}`")))?
                }
                "m_max" => {
                    self.m_max = value
                        .parse()
                        .map_err(|_| bad(format!("bad m_max `{value}`")))?
                }
                "delta_floor" => {
                    self.delta_floor = value
                        .parse()
                        .map_err(|_| bad(format!("bad delta_floor `{value}`")))?
                }
                "tol_svd" => {
                    self.tolerances.tol_svd = value
                        .parse()
                        .map_err(|_| bad(format!("bad tol_svd `{value}`")))?
                }
                "tol_witness" => {
                    self.tolerances.tol_witness = value
                        .parse()
                        .map_err(|_| bad(format!("bad tol_witness `{value}`")))?
                }
                "rank_tol" => {
                    self.tolerances.rank_tol = value
                        .parse()
                        .map_err(|_| bad(format!("bad rank_tol `{value}`")))?
                }
                "split_floor" => {
                    self.tolerances.split_floor = value
                        .parse()
                        .map_err(|_| bad(format!("bad split_floor `{value}`")))?
                }
                "cond_floor" => {
                    self.tolerances.cond_floor = value
                        .parse()
                        .map_err(|_| bad(format!("bad cond_floor `{value}`")))?
                }
                "seed" => {
                    self.seed = value
                        .parse()
                        .map_err(|_| bad(format!("bad seed `{value}`")))?
                }
                "output" => {
                    self.output = Some(PathBuf::from(value));
                }
                "format" => {
                    self.format = OutputFormat::parse(value).map_err(|m| bad(m))?;
                }
                other => {
                    return Err(bad(format!("unknown config key `{other}`")));
                }
            }
        }
        Ok(())
    }

    /// Cross-field invariants, checked after all layers are applied.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let t = &self.tolerances;
        for (name, v) in [
            ("tol_svd", t.tol_svd),
            ("tol_witness", t.tol_witness),
            ("rank_tol", t.rank_tol),
            ("split_floor", t.split_floor),
            ("cond_floor", t.cond_floor),
            ("delta_floor", self.delta_floor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError::Invalid(format!("{name} must be positive")));
            }
        }
        if self.delta_floor >= 1.0 {
            return Err(ConfigError::Invalid(
                "delta_floor must be below 1".to_string(),
            ));
        }
        if self.horizon <= self.m_max {
            return Err(ConfigError::Invalid(format!(
                "horizon ({}) must exceed m_max ({})",
                self.horizon, self.m_max
            )));
        }
        Ok(())
    }
}
