//! Minimum-redundancy maximum-relevance selection with plug-in mutual
//! information over equal-frequency bins. The set objective is maximized by
//! the standard incremental rule: at each step add the feature with the best
//! relevance minus mean redundancy against the already selected set.

use crate::data::{Dataset, FeatureIndexSet, Target};
use crate::measures::{bin_equal_frequency, default_bin_count, discrete_mi};
use crate::selector::SelectionResult;

pub fn mrmr(data: &Dataset, k: usize) -> SelectionResult {
    let m = data.num_features();
    let n = data.num_samples();
    let bins = default_bin_count(n);

    let binned: Vec<Vec<usize>> =
        (0..m).map(|j| bin_equal_frequency(&data.features().row(j), bins)).collect();
    let y_binned: Vec<usize> = match data.target() {
        Target::Class { labels, .. } => labels.iter().map(|&l| l - 1).collect(),
        Target::Real(y) => bin_equal_frequency(&y.view(), bins),
    };

    let relevance: Vec<f64> = (0..m).map(|j| discrete_mi(&binned[j], &y_binned)).collect();

    let mut selected: Vec<usize> = Vec::with_capacity(k);
    let mut accumulated_redundancy = vec![0.0_f64; m];
    while selected.len() < k {
        let mut best: Option<(f64, usize)> = None;
        for j in 0..m {
            if selected.contains(&(j + 1)) {
                continue;
            }
            let score = if selected.is_empty() {
                relevance[j]
            } else {
                relevance[j] - accumulated_redundancy[j] / selected.len() as f64
            };
            let better = match best {
                None => true,
                Some((bv, _)) => score > bv,
            };
            if better {
                best = Some((score, j));
            }
        }
        let (_, j) = best.expect("unselected feature exists");
        selected.push(j + 1);
        for other in 0..m {
            if !selected.contains(&(other + 1)) {
                accumulated_redundancy[other] += discrete_mi(&binned[other], &binned[j]);
            }
        }
    }

    let set = FeatureIndexSet::new(selected, m).expect("mrmr indices are valid");
    SelectionResult::ranked(set, relevance)
}
