//! The l1-constrained feature-weighting optimizer: Euclidean projection onto
//! the positive orthant of the l1-ball, analytic objective gradients for the
//! weighted LSMI and HSIC measures, projected gradient ascent with periodic
//! model re-selection and random restarts, and the radius binary search that
//! turns a weight optimizer into a k-feature selector.

mod ascent;
mod objective;
mod projection;
mod search;

pub use ascent::{ascend, random_feasible_weights, AscentConfig, AscentRun};
pub use objective::{
    hsic_objective_and_gradient, hsic_weight_model, lsmi_objective_and_gradient,
    HsicWeightModel, LsmiWeightModel, WeightObjective,
};
pub use projection::{project_l1_positive, project_simplex};
pub use search::{search_k_features, search_with_solver, SearchBudget, SolvedRadius};

use ndarray::Array1;
use serde::{Deserialize, Serialize};

use crate::data::FeatureIndexSet;
use crate::error::{Error, Result};

/// Which dependence measure drives the weighted objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Lsmi,
    Hsic,
}

/// Nonnegative feature weights inside an l1-ball of radius `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureWeights {
    w: Array1<f64>,
    r: f64,
}

impl FeatureWeights {
    pub fn new(w: Array1<f64>, r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::invalid_input("l1 radius must be positive"));
        }
        if w.iter().any(|&v| v < 0.0) {
            return Err(Error::invalid_input("feature weights must be nonnegative"));
        }
        let sum: f64 = w.sum();
        if sum > r + 1e-9 {
            return Err(Error::invalid_input(format!(
                "weights sum {sum} exceeds radius {r}"
            )));
        }
        Ok(FeatureWeights { w, r })
    }

    pub fn values(&self) -> &Array1<f64> {
        &self.w
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    /// Indices whose weight exceeds `eps * max(w)`.
    pub fn support(&self, eps: f64) -> FeatureIndexSet {
        extract_support(self, eps)
    }
}

/// Support extraction with a threshold relative to the largest weight; an
/// all-zero vector yields the empty set.
pub fn extract_support(weights: &FeatureWeights, eps: f64) -> FeatureIndexSet {
    let max = weights.w.iter().copied().fold(0.0_f64, f64::max);
    if max <= 0.0 {
        return FeatureIndexSet::empty();
    }
    let threshold = eps * max;
    let picked: Vec<usize> = weights
        .w
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > threshold)
        .map(|(j, _)| j + 1)
        .collect();
    FeatureIndexSet::new(picked, weights.w.len()).expect("support indices are in range")
}
