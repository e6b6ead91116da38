//! JSON run configuration shared by the data-series subcommands.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tdho_core::profiles::{FrequencyProfile, OscillatorConstants};
use tdho_core::wavefunction::{SpatialGrid, MAX_ORDER};

use crate::error::{CliError, Result};

/// How the auxiliary amplitude is produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Integrate the auxiliary equation numerically.
    #[default]
    Direct,
    /// Compose the amplitude from the classical mode pair.
    Pinney,
    /// Per-profile closed form (constant, sudden jump, or trap).
    Closed,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Pinney => "pinney",
            Method::Closed => "closed",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub profile: FrequencyProfile,
    #[serde(default)]
    pub constants: OscillatorConstants,
    /// Quantum number used by the variance and wave-function commands.
    #[serde(default)]
    pub n: u32,
    #[serde(default)]
    pub t_start: f64,
    pub t_end: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Relative tolerance handed to the auxiliary-equation solver.
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub method: Method,
    /// Spatial grid for wave-function output; sized automatically when
    /// omitted.
    #[serde(default)]
    pub grid: Option<SpatialGrid>,
    /// Instant sampled by the wave-function command; defaults to t_end.
    #[serde(default)]
    pub time: Option<f64>,
    /// Highest transition order listed by the probabilities command (even).
    #[serde(default = "default_nu_max")]
    pub nu_max: u32,
    /// Output file name; each command supplies a default.
    #[serde(default)]
    pub output: Option<String>,
}

fn default_samples() -> usize {
    200
}

fn default_tol() -> f64 {
    1e-10
}

fn default_nu_max() -> u32 {
    6
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
            path: path.to_path_buf(),
            source,
        })?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        self.profile.validate().map_err(|e| CliError::Config(e.to_string()))?;
        self.constants.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if !(self.t_start >= 0.0 && self.t_end.is_finite() && self.t_end > self.t_start) {
            return bad(format!(
                "time range [{}, {}] must be non-empty and start at t >= 0",
                self.t_start, self.t_end
            ));
        }
        if self.samples < 2 {
            return bad(format!("samples must be at least 2, got {}", self.samples));
        }
        if !(1e-14..=1e-3).contains(&self.tol) {
            return bad(format!("tol must lie in [1e-14, 1e-3], got {}", self.tol));
        }
        if self.n > MAX_ORDER {
            return bad(format!("n = {} exceeds the supported order {MAX_ORDER}", self.n));
        }
        if !self.nu_max.is_multiple_of(2) {
            return bad(format!(
                "nu_max must be even (odd transitions are forbidden), got {}",
                self.nu_max
            ));
        }
        if self.method == Method::Closed
            && !matches!(
                self.profile,
                FrequencyProfile::Constant { .. }
                    | FrequencyProfile::SuddenJump { .. }
                    | FrequencyProfile::PaulTrap { .. }
            )
        {
            return bad("method \"closed\" needs a constant, sudden-jump, or trap profile".into());
        }
        if let Some(grid) = &self.grid {
            grid.validate().map_err(|e| CliError::Config(e.to_string()))?;
        }
        if let Some(time) = self.time {
            if !(0.0..=self.t_end).contains(&time) {
                return bad(format!("time = {time} must lie in [0, {}]", self.t_end));
            }
        }
        Ok(())
    }

    /// Uniform sample times over the configured range.
    pub fn times(&self) -> Vec<f64> {
        let n = self.samples;
        (0..n)
            .map(|i| {
                self.t_start + (self.t_end - self.t_start) * i as f64 / (n - 1) as f64
            })
            .collect()
    }
}
