//! Run configuration, read from TOML. Every field is optional in the file.
//!
//! ```toml
//! max_subset_edges = 24
//! max_crossings = 14
//! max_root_degree = 5000
//! root_tol = 1e-10
//! exclusion_radius = 1e-3
//! output_dir = "out"
//! threads = 4
//! svg_scale = 120.0
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;
use yamada_core::{hpoly, yamada, zeros};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Edge limit for the subset-sum definitions of `H` and `Ch`.
    pub max_subset_edges: usize,
    /// Crossing limit for state sums.
    pub max_crossings: usize,
    /// Degree limit for root finding.
    pub max_root_degree: usize,
    /// Residual bound every reported root must meet.
    pub root_tol: f64,
    /// Radius of the discs around the zeros of `σ` left out of the
    /// equal-modulus statistics.
    pub exclusion_radius: f64,
    /// Default directory for `zeros scan` output.
    pub output_dir: PathBuf,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
    /// SVG pixels per unit of the complex plane.
    pub svg_scale: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_subset_edges: hpoly::DEFAULT_MAX_SUBSET_EDGES,
            max_crossings: yamada::DEFAULT_MAX_CROSSINGS,
            max_root_degree: zeros::MAX_DEGREE,
            root_tol: 1e-10,
            exclusion_radius: zeros::EXCLUSION_RADIUS,
            output_dir: PathBuf::from("out"),
            threads: None,
            svg_scale: 120.0,
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let guards = [
            ("max_subset_edges", self.max_subset_edges),
            ("max_crossings", self.max_crossings),
            ("max_root_degree", self.max_root_degree),
        ];
        for (name, value) in guards {
            if value == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.max_subset_edges >= 63 {
            return Err(Error::Config("max_subset_edges must be below 63".into()));
        }
        if self.max_root_degree > zeros::MAX_DEGREE {
            return Err(Error::Config(format!("max_root_degree must be at most {}", zeros::MAX_DEGREE)));
        }
        for (name, value) in [("root_tol", self.root_tol), ("exclusion_radius", self.exclusion_radius)] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::Config(format!("{name} must lie in (0, 1)")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        if !(self.svg_scale > 0.0 && self.svg_scale.is_finite()) {
            return Err(Error::Config("svg_scale must be positive".into()));
        }
        Ok(())
    }

    pub fn scan_options(&self) -> zeros::ScanOptions {
        zeros::ScanOptions {
            tol: self.root_tol,
            exclusion_radius: self.exclusion_radius,
            max_degree: self.max_root_degree,
        }
    }
}
