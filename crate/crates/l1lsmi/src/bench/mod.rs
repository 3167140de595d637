//! Benchmark harness: repeated seeded trials of selectors over toy or CSV
//! datasets, F-measure scoring against known truth, deterministic parallel
//! execution, and report emission.

mod andor;
mod fmeasure;
mod report;
mod run;

pub use andor::{enumerate_andor_lsmi, SubsetScore};
pub use fmeasure::f_measure;
pub use report::{emit_report, parse_reports_csv, render_csv, render_json, render_markdown, ReportFormat};
pub use run::{run_benchmark, AggregateCell, BenchOutcome};

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::data::{FeatureIndexSet, TaskKind, ToyName};
use crate::error::{Error, Result};
use crate::selector::Method;

/// One dataset entry of a benchmark run: a named toy generator (k defaults to
/// its true-feature count) or an external CSV file with an explicit k.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BenchDataset {
    Toy {
        toy: ToyName,
        #[serde(default)]
        k: Option<usize>,
    },
    Csv {
        csv: PathBuf,
        task: TaskKind,
        k: usize,
    },
}

impl BenchDataset {
    pub fn name(&self) -> String {
        match self {
            BenchDataset::Toy { toy, .. } => toy.to_string(),
            BenchDataset::Csv { csv, .. } => csv
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| csv.display().to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub datasets: Vec<BenchDataset>,
    pub trials: usize,
    pub n_per_trial: usize,
    pub parallelism: usize,
    pub master_seed: u64,
    /// When false, wall times are written as zero so report files are
    /// bit-identical across runs and parallelism degrees.
    pub record_timings: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            methods: vec![Method::L1Lsmi],
            datasets: vec![
                BenchDataset::Toy { toy: ToyName::AndOr, k: None },
                BenchDataset::Toy { toy: ToyName::Quad, k: None },
                BenchDataset::Toy { toy: ToyName::Xor, k: None },
            ],
            trials: 10,
            n_per_trial: 400,
            parallelism: 1,
            master_seed: 0,
            record_timings: true,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Config("bench needs at least one method".into()));
        }
        if self.datasets.is_empty() {
            return Err(Error::Config("bench needs at least one dataset".into()));
        }
        if self.trials == 0 || self.n_per_trial == 0 {
            return Err(Error::Config("trials and n_per_trial must be positive".into()));
        }
        Ok(())
    }
}

/// Result of one (method, dataset, trial) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub method: Method,
    pub dataset: String,
    pub trial: usize,
    /// Seed the trial's data generation drew from.
    pub seed: u64,
    pub k: usize,
    pub selected: FeatureIndexSet,
    /// Present only when the dataset carries a known true feature set.
    pub f_measure: Option<f64>,
    pub wall_time_s: f64,
    /// Free-form notes; selector failures land here under "error".
    #[serde(default)]
    pub diagnostics: BTreeMap<String, String>,
}

impl TrialReport {
    pub fn failed(&self) -> bool {
        self.diagnostics.contains_key("error")
    }
}
