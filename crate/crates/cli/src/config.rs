//! Run configuration: JSON file, then command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};

use eigenflow_core::dynamics::ClassThresholds;
use eigenflow_core::homotopy::{RadialBulbParams, RotatedCardioidParams, TuningParams};
use eigenflow_core::render::MarkerStyle;
use eigenflow_core::spectra::SequenceFamily;
use eigenflow_core::stats::{DEFAULT_EPS, TABLE_SIZES};
use eigenflow_core::Complex64;
use serde::{Deserialize, Serialize};

/// Sizes of the modulus-distribution columns.
pub const BIN_SIZES: [usize; 6] = [10, 20, 100, 300, 500, 1000];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub family: SequenceFamily,
    pub n_max: usize,
    pub tolerance: f64,
    pub eps_ring: f64,
    /// Rows of the unit-circle and classification tables; `None` picks the
    /// standard sizes up to `n_max`.
    pub sizes: Option<Vec<usize>>,
    pub bin_sizes: Option<Vec<usize>>,
    pub bin_start: f64,
    pub bin_width: f64,
    pub bin_count: usize,
    pub thresholds: ClassThresholds,
    pub tuning: TuningParams,
    pub rotated_cardioid: RotatedCardioidParams,
    pub radial_bulb: RadialBulbParams,
    pub linear_target: Complex64,
    pub jungreis_terms: usize,
    pub out_dir: PathBuf,
    pub t_grid: Vec<f64>,
    pub max_iter: u32,
    pub escape_radius: f64,
    pub width_px: u32,
    pub height_px: u32,
    /// Largest matrix size whose points are drawn in figures and snapshots.
    pub figure_n: usize,
    pub marker: MarkerStyle,
    pub density_angles: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: SequenceFamily::Fibonacci,
            n_max: 500,
            tolerance: eigenflow_core::spectra::DEFAULT_TOLERANCE,
            eps_ring: DEFAULT_EPS,
            sizes: None,
            bin_sizes: None,
            bin_start: eigenflow_core::stats::DEFAULT_BIN_START,
            bin_width: eigenflow_core::stats::DEFAULT_BIN_WIDTH,
            bin_count: eigenflow_core::stats::DEFAULT_BIN_COUNT,
            thresholds: ClassThresholds::default(),
            tuning: TuningParams::default(),
            rotated_cardioid: RotatedCardioidParams::default(),
            radial_bulb: RadialBulbParams::default(),
            linear_target: Complex64::new(-0.75, 0.0),
            jungreis_terms: eigenflow_core::jungreis::DEFAULT_TRUNCATION,
            out_dir: PathBuf::from("out"),
            t_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            max_iter: 200,
            escape_radius: eigenflow_core::dynamics::DEFAULT_RADIUS,
            width_px: 480,
            height_px: 400,
            figure_n: 60,
            marker: MarkerStyle::default(),
            density_angles: 64,
        }
    }
}

/// Sizes from `standard` that fit under `n_max`, plus `n_max` itself.
fn default_sizes(standard: &[usize], min: usize, n_max: usize) -> Vec<usize> {
    let mut v: Vec<usize> = standard
        .iter()
        .copied()
        .filter(|&n| n >= min && n <= n_max)
        .collect();
    if v.last() != Some(&n_max) {
        v.push(n_max);
    }
    v
}

impl RunConfig {
    pub fn table_sizes(&self) -> Vec<usize> {
        self.sizes
            .clone()
            .unwrap_or_else(|| default_sizes(&TABLE_SIZES, self.family.min_degree(), self.n_max))
    }

    pub fn histogram_sizes(&self) -> Vec<usize> {
        self.bin_sizes
            .clone()
            .unwrap_or_else(|| default_sizes(&BIN_SIZES, self.family.min_degree(), self.n_max))
    }

    pub fn figure_size(&self) -> usize {
        self.figure_n.clamp(self.family.min_degree(), self.n_max)
    }

    /// Range checks that belong to the run as a whole; per-module parameters
    /// are validated by the library when used.
    pub fn validate(&self) -> Result<(), String> {
        let lo = self.family.min_degree();
        for n in self.table_sizes().iter().chain(&self.histogram_sizes()) {
            if *n < lo || *n > self.n_max {
                return Err(format!("size {n} outside {lo}..={}", self.n_max));
            }
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(format!(
                "tolerance must lie in (0, 1), got {}",
                self.tolerance
            ));
        }
        if !(self.eps_ring > 0.0 && self.eps_ring < 1.0) {
            return Err(format!(
                "eps_ring must lie in (0, 1), got {}",
                self.eps_ring
            ));
        }
        if self.t_grid.is_empty() {
            return Err("t_grid is empty".into());
        }
        if self.density_angles == 0 {
            return Err("density_angles must be positive".into());
        }
        if !(self.escape_radius >= 2.0) {
            return Err(format!(
                "escape_radius must be at least 2, got {}",
                self.escape_radius
            ));
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Io(PathBuf, std::io::Error),
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(p, e) => write!(f, "cannot read config {}: {e}", p.display()),
            ConfigError::Parse {
                path,
                line,
                column,
                message,
            } => write!(f, "{}:{line}:{column}: {message}", path.display()),
        }
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_default() {
        let c: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(c, RunConfig::default());
    }

    #[test]
    fn nested_overrides() {
        let c: RunConfig = serde_json::from_str(
            r#"{"eps_ring": 0.02, "thresholds": {"arg_tol": 0.05}, "tuning": {"scale": 0.5},
                "linear_target": [1.0, 2.0]}"#,
        )
        .unwrap();
        assert_eq!(c.eps_ring, 0.02);
        assert_eq!(c.thresholds.arg_tol, 0.05);
        assert_eq!(c.thresholds.denominator_cap, 64);
        assert_eq!(c.tuning.scale, 0.5);
        assert_eq!(c.tuning.c0, Complex64::new(-0.75, 0.0));
        assert_eq!(c.linear_target, Complex64::new(1.0, 2.0));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"n_maxx": 3}"#).is_err());
    }

    #[test]
    fn default_sizes_follow_n_max() {
        let c = RunConfig {
            n_max: 20,
            ..RunConfig::default()
        };
        assert_eq!(c.table_sizes(), vec![10, 20]);
        assert_eq!(c.histogram_sizes(), vec![10, 20]);
        let c = RunConfig {
            n_max: 120,
            ..RunConfig::default()
        };
        assert_eq!(c.table_sizes(), vec![10, 20, 50, 100, 120]);
        let c = RunConfig::default();
        assert_eq!(c.table_sizes(), TABLE_SIZES.to_vec());
        assert_eq!(c.histogram_sizes(), vec![10, 20, 100, 300, 500]);
        let c = RunConfig {
            n_max: 4,
            ..RunConfig::default()
        };
        assert_eq!(c.table_sizes(), vec![4]);
        assert!(c.validate().is_ok());
    }
}
