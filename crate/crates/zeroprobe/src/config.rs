//! Run configuration: defaults, then `ZEROPROBE_PRECISION`, then a TOML file,
//! then command-line flags, later sources winning.
//!
//! File grammar (every key optional, unknown keys rejected):
//!
//! ```toml
//! precision_bits = 128        # integer >= 53
//! tolerance = "auto"          # or a non-negative number
//! delta_factor = 1e-6         # pole exclusion radius is delta_factor * max(1, |x|)
//! grid_points_per_gap = 8     # integer >= 1
//! output_format = "csv"       # "csv" or "json"
//! threads = "auto"            # or a positive integer
//! ```

use std::path::Path;

use serde::Deserialize;
use zeroprobe_core::coeff::CoeffOptions;
use zeroprobe_core::hankel::ScanOptions;
use zeroprobe_core::sine::{PrecisionPolicy, SearchOptions};

use crate::IoError;

/// Environment variable holding the default working precision in bits.
pub const PRECISION_ENV: &str = "ZEROPROBE_PRECISION";

/// Highest precision the sine probes escalate to unless a larger start is set.
pub const MAX_PROBE_BITS: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    /// Starting precision of the sine probes; 53 means binary64 first.
    pub precision_bits: u32,
    /// Absolute PSD tolerance; `None` selects the per-matrix default.
    pub tolerance: Option<f64>,
    pub delta_factor: f64,
    pub grid_points_per_gap: usize,
    pub output_format: OutputFormat,
    /// Worker threads; `None` lets the pool decide.
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 53,
            tolerance: None,
            delta_factor: CoeffOptions::default().pole_factor,
            grid_points_per_gap: 8,
            output_format: OutputFormat::Csv,
            threads: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
enum AutoOr<T> {
    Auto(Auto),
    Value(T),
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Auto {
    Auto,
}

impl<T> AutoOr<T> {
    fn value(self) -> Option<T> {
        match self {
            AutoOr::Auto(_) => None,
            AutoOr::Value(v) => Some(v),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    precision_bits: Option<u32>,
    tolerance: Option<AutoOr<f64>>,
    delta_factor: Option<f64>,
    grid_points_per_gap: Option<usize>,
    output_format: Option<OutputFormat>,
    threads: Option<AutoOr<usize>>,
}

/// Values given on the command line; `None` leaves the lower layer in place.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub precision_bits: Option<u32>,
    pub tolerance: Option<f64>,
    pub delta_factor: Option<f64>,
    pub grid_points_per_gap: Option<usize>,
    pub output_format: Option<OutputFormat>,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// Layers `env_precision`, the TOML text `file` and `cli` over the defaults.
    pub fn layered(env_precision: Option<&str>, file: Option<&str>, cli: &Overrides) -> Result<Self, IoError> {
        let mut rc = RunConfig::default();
        if let Some(p) = env_precision {
            rc.precision_bits = p
                .trim()
                .parse()
                .map_err(|_| IoError::Config(format!("{PRECISION_ENV} must be an integer, got {p:?}")))?;
        }
        if let Some(text) = file {
            let f: FileConfig = toml::from_str(text).map_err(|e| IoError::Config(e.to_string()))?;
            set(&mut rc.precision_bits, f.precision_bits);
            if let Some(t) = f.tolerance {
                rc.tolerance = t.value();
            }
            set(&mut rc.delta_factor, f.delta_factor);
            set(&mut rc.grid_points_per_gap, f.grid_points_per_gap);
            set(&mut rc.output_format, f.output_format);
            if let Some(t) = f.threads {
                rc.threads = t.value();
            }
        }
        set(&mut rc.precision_bits, cli.precision_bits);
        if cli.tolerance.is_some() {
            rc.tolerance = cli.tolerance;
        }
        set(&mut rc.delta_factor, cli.delta_factor);
        set(&mut rc.grid_points_per_gap, cli.grid_points_per_gap);
        set(&mut rc.output_format, cli.output_format);
        if cli.threads.is_some() {
            rc.threads = cli.threads;
        }
        rc.validate()?;
        Ok(rc)
    }

    /// Reads `ZEROPROBE_PRECISION` and the optional file at `path`.
    pub fn load(path: Option<&Path>, cli: &Overrides) -> Result<Self, IoError> {
        let env = std::env::var(PRECISION_ENV).ok();
        let text = path.map(std::fs::read_to_string).transpose()?;
        Self::layered(env.as_deref(), text.as_deref(), cli)
    }

    pub fn validate(&self) -> Result<(), IoError> {
        if self.precision_bits < 53 {
            return Err(IoError::Config(format!("precision_bits must be at least 53, got {}", self.precision_bits)));
        }
        if self.grid_points_per_gap < 1 {
            return Err(IoError::Config("grid_points_per_gap must be at least 1".into()));
        }
        if !(self.delta_factor > 0.0 && self.delta_factor.is_finite()) {
            return Err(IoError::Config(format!("delta_factor must be positive, got {}", self.delta_factor)));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(IoError::Config(format!("tolerance must be non-negative, got {t}")));
            }
        }
        if self.threads == Some(0) {
            return Err(IoError::Config("threads must be positive".into()));
        }
        Ok(())
    }

    pub fn coeff_options(&self) -> CoeffOptions {
        CoeffOptions { pole_factor: self.delta_factor }
    }

    pub fn scan_options(&self) -> ScanOptions {
        ScanOptions { coeff: self.coeff_options(), tolerance: self.tolerance }
    }

    pub fn precision_policy(&self) -> PrecisionPolicy {
        PrecisionPolicy { start_bits: self.precision_bits, max_bits: MAX_PROBE_BITS.max(self.precision_bits) }
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions { precision: self.precision_policy(), ..SearchOptions::default() }
    }
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}
