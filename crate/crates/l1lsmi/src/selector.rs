//! Common selector output types and the method dispatcher used by the CLI
//! and the benchmark harness.

use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baselines;
use crate::config::SelectorConfig;
use crate::data::{Dataset, FeatureIndexSet};
use crate::error::{Error, Result};
use crate::sparse::{self, Measure};

/// One probe of the radius search: the radius solved at, the support it
/// produced, and the subset's measure value (used for fallback ordering).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusProbe {
    pub radius: f64,
    pub support: FeatureIndexSet,
    pub subset_score: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SelectionDiagnostics {
    /// Radius probes, in the order Algorithm-style searches tried them.
    pub radius_trace: Vec<RadiusProbe>,
    /// Objective value per iteration of the returned ascent run.
    pub objective_trace: Vec<f64>,
    /// Free-form notes (degenerate inputs, fallbacks taken, aborted restarts).
    pub flags: Vec<String>,
    /// True when the exact requested subset size could not be produced.
    pub fallback: bool,
}

/// Output of every selector: the chosen subset, per-feature scores (weights
/// for weight-based selectors, ranking scores otherwise), and diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionResult {
    pub selected: FeatureIndexSet,
    pub scores: Vec<f64>,
    pub diagnostics: SelectionDiagnostics,
}

impl SelectionResult {
    pub fn ranked(selected: FeatureIndexSet, scores: Vec<f64>) -> Self {
        SelectionResult { selected, scores, diagnostics: SelectionDiagnostics::default() }
    }
}

/// Every selector exposed by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// l1-ball weighted maximization of LSMI with radius binary search.
    L1Lsmi,
    /// Same optimizer with the HSIC objective.
    L1Hsic,
    /// Pearson correlation ranking.
    Pc,
    /// Forward greedy search under HSIC.
    FHsic,
    /// Backward greedy search under HSIC.
    BHsic,
    /// Forward greedy search under LSMI.
    FLsmi,
    /// Backward greedy search under LSMI.
    BLsmi,
    Mrmr,
    Qpfs,
    Lasso,
    Relieff,
}

impl Method {
    pub const ALL: [Method; 11] = [
        Method::L1Lsmi,
        Method::L1Hsic,
        Method::Pc,
        Method::FHsic,
        Method::BHsic,
        Method::FLsmi,
        Method::BLsmi,
        Method::Mrmr,
        Method::Qpfs,
        Method::Lasso,
        Method::Relieff,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::L1Lsmi => "l1lsmi",
            Method::L1Hsic => "l1hsic",
            Method::Pc => "pc",
            Method::FHsic => "fhsic",
            Method::BHsic => "bhsic",
            Method::FLsmi => "flsmi",
            Method::BLsmi => "blsmi",
            Method::Mrmr => "mrmr",
            Method::Qpfs => "qpfs",
            Method::Lasso => "lasso",
            Method::Relieff => "relieff",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::invalid_input(format!("unknown method {s:?}")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Runs `method` on an already-standardized dataset.
pub fn select(
    data: &Dataset,
    k: usize,
    method: Method,
    cfg: &SelectorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SelectionResult> {
    let m = data.num_features();
    if k == 0 || k > m {
        return Err(Error::invalid_input(format!(
            "k must be in 1..={m}, got {k}"
        )));
    }
    match method {
        Method::L1Lsmi => sparse::search_k_features(data, k, cfg, Measure::Lsmi, rng),
        Method::L1Hsic => sparse::search_k_features(data, k, cfg, Measure::Hsic, rng),
        Method::Pc => Ok(baselines::rank_pearson(data, k)),
        Method::FHsic => {
            baselines::sequential_search(
                data,
                k,
                baselines::Direction::Forward,
                Measure::Hsic,
                cfg,
                rng,
            )
            .map(|(r, _)| r)
        }
        Method::BHsic => {
            baselines::sequential_search(
                data,
                k,
                baselines::Direction::Backward,
                Measure::Hsic,
                cfg,
                rng,
            )
            .map(|(r, _)| r)
        }
        Method::FLsmi => {
            baselines::sequential_search(
                data,
                k,
                baselines::Direction::Forward,
                Measure::Lsmi,
                cfg,
                rng,
            )
            .map(|(r, _)| r)
        }
        Method::BLsmi => {
            baselines::sequential_search(
                data,
                k,
                baselines::Direction::Backward,
                Measure::Lsmi,
                cfg,
                rng,
            )
            .map(|(r, _)| r)
        }
        Method::Mrmr => Ok(baselines::mrmr(data, k)),
        Method::Qpfs => baselines::qpfs(data, k, cfg),
        Method::Lasso => baselines::lasso_select(data, k, cfg),
        Method::Relieff => baselines::relieff(data, k, cfg.relief_neighbors),
    }
}
