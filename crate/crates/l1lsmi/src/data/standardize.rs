use ndarray::Axis;

use super::Dataset;

/// Per-feature scaling recorded by [`standardize`]. Uses the population
/// (1/n) standard deviation convention.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureScaling {
    pub mean: f64,
    pub std: f64,
    pub zero_variance: bool,
}

/// Centers every feature row to mean 0 and scales it to standard deviation 1.
/// Zero-variance rows become all-zeros and are flagged instead of dropped, so
/// feature indices stay stable.
pub fn standardize(data: &Dataset) -> (Dataset, Vec<FeatureScaling>) {
    let mut features = data.features().to_owned();
    let n = data.num_samples() as f64;
    let mut scalings = Vec::with_capacity(data.num_features());
    for mut row in features.axis_iter_mut(Axis(0)) {
        let mean = row.sum() / n;
        let var = row.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let std = var.sqrt();
        let zero_variance = !(std > f64::EPSILON * mean.abs().max(1.0));
        if zero_variance {
            row.fill(0.0);
        } else {
            row.mapv_inplace(|v| (v - mean) / std);
        }
        scalings.push(FeatureScaling { mean, std, zero_variance });
    }
    let out = Dataset::new(features, data.target().clone())
        .expect("standardization preserves dataset invariants");
    (out, scalings)
}
