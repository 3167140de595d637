//! Data model shared by all measures and selectors: the feature matrix with
//! its target, feature index sets, toy-data generators, and distance helpers.

mod csv;
mod distance;
mod standardize;
mod toy;

pub use csv::{load_csv, parse_csv, to_csv_string, write_csv};
pub use distance::median_pairwise_distance;
pub use standardize::{standardize, FeatureScaling};
pub use toy::{generate_toy, ToyName, ToySpec};

use ndarray::{Array1, Array2, ArrayView2, Axis};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the target column of a file should be interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Regression,
    Classification,
}

/// Task of a concrete dataset; classification carries its class count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Regression,
    Classification { classes: usize },
}

/// Target vector. Classification labels are contiguous `1..=classes`.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Real(Array1<f64>),
    Class { labels: Vec<usize>, classes: usize },
}

impl Target {
    pub fn len(&self) -> usize {
        match self {
            Target::Real(y) => y.len(),
            Target::Class { labels, .. } => labels.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn task(&self) -> Task {
        match self {
            Target::Real(_) => Task::Regression,
            Target::Class { classes, .. } => Task::Classification { classes: *classes },
        }
    }

    /// Target value of sample `i` as a float (class label value for
    /// classification).
    pub fn value(&self, i: usize) -> f64 {
        match self {
            Target::Real(y) => y[i],
            Target::Class { labels, .. } => labels[i] as f64,
        }
    }
}

/// A feature matrix (`m` features by `n` samples) with its target.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Array2<f64>,
    target: Target,
}

impl Dataset {
    /// Validates the shape, finiteness, and (for classification) that labels
    /// are exactly `1..=classes` with every class present.
    pub fn new(features: Array2<f64>, target: Target) -> Result<Self> {
        if features.ncols() != target.len() {
            return Err(Error::InvalidData(format!(
                "feature matrix has {} samples but target has {}",
                features.ncols(),
                target.len()
            )));
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite feature value".into()));
        }
        match &target {
            Target::Real(y) => {
                if y.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidData("non-finite target value".into()));
                }
            }
            Target::Class { labels, classes } => {
                if *classes == 0 {
                    return Err(Error::InvalidData("classification with zero classes".into()));
                }
                let mut seen = vec![false; *classes];
                for &l in labels {
                    if l == 0 || l > *classes {
                        return Err(Error::InvalidData(format!(
                            "class label {l} outside 1..={classes}"
                        )));
                    }
                    seen[l - 1] = true;
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::InvalidData(format!(
                        "not every class in 1..={classes} is present"
                    )));
                }
            }
        }
        Ok(Dataset { features, target })
    }

    /// Number of features `m`.
    pub fn num_features(&self) -> usize {
        self.features.nrows()
    }

    /// Number of samples `n`.
    pub fn num_samples(&self) -> usize {
        self.features.ncols()
    }

    pub fn task(&self) -> Task {
        self.target.task()
    }

    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    /// Dataset restricted to the given feature subset (rows reindexed in
    /// subset order).
    pub fn restrict(&self, subset: &FeatureIndexSet) -> Dataset {
        let rows: Vec<usize> = subset.iter_zero_based().collect();
        Dataset {
            features: self.features.select(Axis(0), &rows),
            target: self.target.clone(),
        }
    }

    /// `diag(w) X`: every feature row scaled by its weight.
    pub fn weighted_features(&self, w: &Array1<f64>) -> Array2<f64> {
        debug_assert_eq!(w.len(), self.num_features());
        let mut out = self.features.clone();
        for (mut row, &wi) in out.axis_iter_mut(Axis(0)).zip(w.iter()) {
            row.mapv_inplace(|v| v * wi);
        }
        out
    }
}

/// Sorted, duplicate-free, 1-based feature indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureIndexSet {
    indices: Vec<usize>,
}

impl FeatureIndexSet {
    /// Builds a set from arbitrary 1-based indices, sorting and checking
    /// range/duplicates against the feature count `m`.
    pub fn new(mut indices: Vec<usize>, m: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(&first) = indices.first() {
            if first == 0 {
                return Err(Error::invalid_input("feature indices are 1-based"));
            }
        }
        if let Some(&last) = indices.last() {
            if last > m {
                return Err(Error::invalid_input(format!(
                    "feature index {last} exceeds feature count {m}"
                )));
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid_input("duplicate feature index"));
        }
        Ok(FeatureIndexSet { indices })
    }

    pub fn empty() -> Self {
        FeatureIndexSet { indices: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// 1-based indices in ascending order.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    /// Row indices for slicing the feature matrix.
    pub fn iter_zero_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().map(|&i| i - 1)
    }

    pub fn intersection_size(&self, other: &FeatureIndexSet) -> usize {
        self.indices.iter().filter(|i| other.contains(**i)).count()
    }
}

impl std::fmt::Display for FeatureIndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.indices.iter().enumerate() {
            if pos > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
