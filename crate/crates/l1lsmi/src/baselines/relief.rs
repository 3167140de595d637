//! ReliefF scores: every sample is an anchor; features are rewarded for
//! separating each anchor from its nearest misses (weighted by class prior)
//! and penalized for varying across its nearest hits. Feature differences are
//! range-normalized and distances are their sums.

use crate::data::{Dataset, Target};
use crate::error::{Error, Result};
use crate::selector::SelectionResult;

use super::ranking::top_k_by_score;

pub fn relieff(data: &Dataset, k: usize, neighbors: usize) -> Result<SelectionResult> {
    let Target::Class { labels, classes } = data.target() else {
        return Err(Error::TaskMismatch(
            "relieff requires a classification task".into(),
        ));
    };
    let m = data.num_features();
    let n = data.num_samples();
    let mut class_counts = vec![0usize; *classes];
    for &l in labels {
        class_counts[l - 1] += 1;
    }
    if let Some(c) = class_counts.iter().position(|&c| c <= neighbors) {
        return Err(Error::invalid_input(format!(
            "class {} has {} samples; relieff with {neighbors} neighbors needs more",
            c + 1,
            class_counts[c]
        )));
    }
    let priors: Vec<f64> = class_counts.iter().map(|&c| c as f64 / n as f64).collect();

    let x = data.features();
    // range normalization per feature; constant features contribute 0
    let inv_range: Vec<f64> = (0..m)
        .map(|j| {
            let row = x.row(j);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &v in row.iter() {
                lo = lo.min(v);
                hi = hi.max(v);
            }
            if hi > lo {
                1.0 / (hi - lo)
            } else {
                0.0
            }
        })
        .collect();

    let diff = |j: usize, a: usize, b: usize| (x[(j, a)] - x[(j, b)]).abs() * inv_range[j];
    let dist = |a: usize, b: usize| (0..m).map(|j| diff(j, a, b)).sum::<f64>();

    let mut scores = vec![0.0_f64; m];
    let norm = 1.0 / (n as f64 * neighbors as f64);
    let mut by_class: Vec<Vec<(f64, usize)>> = vec![Vec::new(); *classes];
    for anchor in 0..n {
        for list in &mut by_class {
            list.clear();
        }
        for other in 0..n {
            if other != anchor {
                by_class[labels[other] - 1].push((dist(anchor, other), other));
            }
        }
        for list in &mut by_class {
            list.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        }
        let own = labels[anchor] - 1;
        for (_, hit) in by_class[own].iter().take(neighbors) {
            for (j, score) in scores.iter_mut().enumerate() {
                *score -= diff(j, anchor, *hit) * norm;
            }
        }
        for c in 0..*classes {
            if c == own {
                continue;
            }
            let weight = priors[c] / (1.0 - priors[own]);
            for (_, miss) in by_class[c].iter().take(neighbors) {
                for (j, score) in scores.iter_mut().enumerate() {
                    *score += weight * diff(j, anchor, *miss) * norm;
                }
            }
        }
    }

    let selected = top_k_by_score(&scores, k, m);
    Ok(SelectionResult::ranked(selected, scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{generate_toy, standardize, Target, ToyName, ToySpec};
    use ndarray::{Array1, Array2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn xor_interaction_is_detected() {
        let mut hits = 0;
        for seed in 0..10 {
            let (data, _) =
                generate_toy(&ToySpec { name: ToyName::Xor, n: 400, seed }).unwrap();
            let (data, _) = standardize(&data);
            let r = relieff(&data, 2, 10).unwrap();
            if r.selected.indices() == [1, 2] {
                hits += 1;
            }
        }
        assert!(hits >= 9, "xor recovered in only {hits}/10 seeds");
    }

    #[test]
    fn single_separating_feature_wins() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 100;
        let labels: Vec<usize> = (0..n).map(|i| 1 + i % 2).collect();
        let mut x = Array2::from_shape_fn((5, n), |_| rng.random::<f64>());
        for i in 0..n {
            x[(2, i)] = if labels[i] == 1 { 0.0 } else { 1.0 };
        }
        let data = Dataset::new(x, Target::Class { labels, classes: 2 }).unwrap();
        let r = relieff(&data, 1, 10).unwrap();
        assert_eq!(r.selected.indices(), &[3]);
    }

    #[test]
    fn redundant_copies_are_both_kept() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 120;
        let labels: Vec<usize> = (0..n).map(|i| 1 + i % 2).collect();
        let informative: Array1<f64> = (0..n)
            .map(|i| if labels[i] == 1 { 0.0 } else { 1.0 } + 0.05 * rng.random::<f64>())
            .collect();
        let mut x = Array2::from_shape_fn((4, n), |_| rng.random::<f64>());
        x.row_mut(1).assign(&informative);
        x.row_mut(3).assign(&informative);
        let data = Dataset::new(x, Target::Class { labels, classes: 2 }).unwrap();
        let r = relieff(&data, 2, 10).unwrap();
        assert_eq!(r.selected.indices(), &[2, 4]);
    }

    #[test]
    fn regression_task_is_rejected() {
        let x = Array2::zeros((2, 30));
        let y = Target::Real(Array1::linspace(0.0, 1.0, 30));
        let data = Dataset::new(x, y).unwrap();
        assert!(relieff(&data, 1, 5).is_err());
    }
}
