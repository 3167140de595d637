//! Runtime configuration: estimator grid, optimizer knobs, and benchmark
//! protocol, loadable from a TOML file. Every field has a default, so a
//! config file only needs the keys it overrides.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::BenchConfig;
use crate::error::{Error, Result};
use crate::measures::CvGrid;
use crate::sparse::AscentConfig;

/// Knobs shared by the measure-driven selectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SelectorConfig {
    /// Cross-validation candidates for (sigma, lambda).
    pub cv: CvGrid,
    /// Projected-ascent parameters for the l1 selectors.
    pub ascent: AscentConfig,
    /// Basis functions per density-ratio fit (clamped to the sample count).
    pub basis_count: usize,
    /// Nearest hits/misses per class for ReliefF.
    pub relief_neighbors: usize,
    /// Iteration cap for the QPFS projected-gradient solve.
    pub qpfs_max_iters: usize,
    /// Objective-improvement tolerance for QPFS.
    pub qpfs_tol: f64,
    /// Coordinate-descent sweep cap per lasso solve.
    pub lasso_max_sweeps: usize,
    /// Bisection steps when hunting the lasso penalty for a k-sized support.
    pub lasso_bisection_steps: usize,
    /// Radius-search budget: solver calls.
    pub search_max_solves: usize,
    /// Radius-search budget: wall-clock seconds (ignored on wasm).
    pub search_max_seconds: f64,
}

impl Default for SelectorConfig {
    fn default() -> Self {
        SelectorConfig {
            cv: CvGrid::default(),
            ascent: AscentConfig::default(),
            basis_count: 100,
            relief_neighbors: 10,
            qpfs_max_iters: 200_000,
            qpfs_tol: 1e-8,
            lasso_max_sweeps: 10_000,
            lasso_bisection_steps: 50,
            search_max_solves: 30,
            search_max_seconds: 300.0,
        }
    }
}

impl SelectorConfig {
    pub fn validate(&self) -> Result<()> {
        self.cv.validate()?;
        self.ascent.validate()?;
        if self.basis_count == 0 {
            return Err(Error::Config("basis_count must be positive".into()));
        }
        Ok(())
    }
}

/// Top-level config file: selector knobs plus an optional benchmark section.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub selector: SelectorConfig,
    pub bench: Option<BenchConfig>,
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Config =
            toml::from_str(text).map_err(|e| Error::Config(format!("bad config: {e}")))?;
        cfg.selector.validate()?;
        if let Some(bench) = &cfg.bench {
            bench.validate()?;
        }
        Ok(cfg)
    }

    pub fn from_toml_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_toml_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_all_defaults() {
        let cfg = Config::from_toml_str("").unwrap();
        assert_eq!(cfg.selector.basis_count, 100);
        assert_eq!(cfg.selector.cv.folds, 5);
        assert!(cfg.bench.is_none());
    }

    #[test]
    fn partial_override() {
        let cfg = Config::from_toml_str(
            "[selector]\nbasis_count = 50\n[selector.cv]\nfolds = 3\n",
        )
        .unwrap();
        assert_eq!(cfg.selector.basis_count, 50);
        assert_eq!(cfg.selector.cv.folds, 3);
        // untouched default
        assert_eq!(cfg.selector.relief_neighbors, 10);
    }

    #[test]
    fn rejects_bad_grid() {
        let err = Config::from_toml_str("[selector.cv]\nsigma_scales = []\n");
        assert!(err.is_err());
    }
}
