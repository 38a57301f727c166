//! Experiment configuration: validated settings plus a `key = value` file
//! format that CLI flags override.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fatwalk_core::walk::WalkModel;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("n grid is empty")]
    EmptyGrid,
    #[error("n grid must be strictly increasing with entries >= 2, got {0:?}")]
    BadGrid(Vec<usize>),
    #[error("replicas must be >= 1")]
    NoReplicas,
    #[error("workers must be >= 1")]
    NoWorkers,
    #[error("alpha = {0} out of range (0, 2]")]
    BadAlpha(f64),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Output encoding for sweep results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFormat::Csv => write!(f, "csv"),
            OutputFormat::Json => write!(f, "json"),
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}, expected csv|json")),
        }
    }
}

/// A fully validated sweep description. `n_grid` is strictly increasing,
/// `replicas` and `workers` are at least 1, and a stable model carries a
/// valid index.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: WalkModel,
    pub n_grid: Vec<usize>,
    pub replicas: usize,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            model: WalkModel::UltraFat,
            n_grid: vec![1024, 2048, 4096, 8192, 16384],
            replicas: 100,
            seed: 0,
            workers: 1,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    /// Checks the cross-field invariants.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_grid.is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        let increasing = self.n_grid.windows(2).all(|w| w[0] < w[1]);
        if !increasing || self.n_grid[0] < 2 {
            return Err(ConfigError::BadGrid(self.n_grid.clone()));
        }
        if self.replicas == 0 {
            return Err(ConfigError::NoReplicas);
        }
        if self.workers == 0 {
            return Err(ConfigError::NoWorkers);
        }
        if let Some(alpha) = self.model.alpha() {
            if !(alpha > 0.0 && alpha <= 2.0) {
                return Err(ConfigError::BadAlpha(alpha));
            }
        }
        Ok(())
    }
}

/// Settings read from a config file or CLI flags; `None` means "not given".
/// Later layers override earlier ones field by field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverlay {
    pub model: Option<WalkModel>,
    pub alpha: Option<f64>,
    pub n_grid: Option<Vec<usize>>,
    pub replicas: Option<usize>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl ConfigOverlay {
    /// Reads a `key = value` file. Blank lines and `#` comments are skipped;
    /// unknown keys are errors.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, path: &str) -> Result<Self, ConfigError> {
        let mut overlay = ConfigOverlay::default();
        let err = |line: usize, msg: String| ConfigError::Parse {
            path: path.to_string(),
            line,
            msg,
        };
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(lineno, format!("expected key = value, got {line:?}")))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |msg: &str| err(lineno, format!("{key}: {msg}: {value:?}"));
            match key {
                "model" => {
                    overlay.model =
                        Some(value.parse().map_err(|e: String| err(lineno, e))?);
                }
                "alpha" => {
                    overlay.alpha =
                        Some(value.parse().map_err(|_| bad("not a number"))?);
                }
                "n_grid" => overlay.n_grid = Some(parse_grid(value).map_err(|m| bad(&m))?),
                "reps" | "replicas" => {
                    overlay.replicas =
                        Some(value.parse().map_err(|_| bad("not a count"))?);
                }
                "seed" => {
                    overlay.seed = Some(value.parse().map_err(|_| bad("not a u64"))?);
                }
                "workers" => {
                    overlay.workers =
                        Some(value.parse().map_err(|_| bad("not a count"))?);
                }
                "out" => overlay.out = Some(PathBuf::from(value)),
                "format" => {
                    overlay.format =
                        Some(value.parse().map_err(|e: String| err(lineno, e))?);
                }
                other => return Err(err(lineno, format!("unknown key {other:?}"))),
            }
        }
        Ok(overlay)
    }

    /// Applies `self` on top of `base`, returning the merged overlay.
    pub fn over(self, base: ConfigOverlay) -> ConfigOverlay {
        ConfigOverlay {
            model: self.model.or(base.model),
            alpha: self.alpha.or(base.alpha),
            n_grid: self.n_grid.or(base.n_grid),
            replicas: self.replicas.or(base.replicas),
            seed: self.seed.or(base.seed),
            workers: self.workers.or(base.workers),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }

    /// Resolves the overlay against defaults into a validated config.
    pub fn resolve(self) -> Result<ExperimentConfig, ConfigError> {
        let defaults = ExperimentConfig::default();
        let mut model = self.model.unwrap_or(defaults.model);
        // An explicit alpha selects (or re-indexes) the stable model.
        if let Some(alpha) = self.alpha {
            model = WalkModel::Stable { alpha };
        }
        let cfg = ExperimentConfig {
            model,
            n_grid: self.n_grid.unwrap_or(defaults.n_grid),
            replicas: self.replicas.unwrap_or(defaults.replicas),
            seed: self.seed.unwrap_or(defaults.seed),
            workers: self.workers.unwrap_or(defaults.workers),
            out: self.out,
            format: self.format.unwrap_or(defaults.format),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses a comma-separated list of step counts.
pub fn parse_grid(value: &str) -> Result<Vec<usize>, String> {
    value
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad grid entry {part:?}"))
        })
        .collect()
}

/// The dyadic grid `2^lo, 2^(lo+1), ..., 2^hi`.
pub fn dyadic_grid(lo: u32, hi: u32) -> Vec<usize> {
    assert!(lo <= hi && hi < usize::BITS);
    (lo..=hi).map(|k| 1usize << k).collect()
}
