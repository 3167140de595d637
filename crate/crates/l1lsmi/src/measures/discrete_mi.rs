//! Plug-in mutual information over discrete bins (natural log), plus the
//! equal-frequency binning used to discretize continuous features for mRMR.

use ndarray::ArrayView1;

/// `min(10, ceil(sqrt(n)))` bins.
pub fn default_bin_count(n: usize) -> usize {
    let root = (n as f64).sqrt().ceil() as usize;
    root.clamp(1, 10)
}

/// Assigns each value a bin index by equal-frequency (quantile) cut points.
/// Equal values always share a bin, so discrete inputs pass through with their
/// own categories; duplicate cut points simply leave some bins empty.
pub fn bin_equal_frequency(values: &ArrayView1<f64>, bins: usize) -> Vec<usize> {
    let n = values.len();
    assert!(bins >= 1);
    let mut sorted: Vec<f64> = values.iter().copied().collect();
    sorted.sort_unstable_by(f64::total_cmp);
    let edges: Vec<f64> = (1..bins).map(|k| sorted[k * n / bins]).collect();
    values
        .iter()
        .map(|&v| edges.iter().filter(|&&e| v >= e).count())
        .collect()
}

/// Plug-in empirical mutual information between two discrete sequences, in
/// nats; `0 * log 0` terms are dropped.
pub fn discrete_mi(x: &[usize], y: &[usize]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n == 0 {
        return 0.0;
    }
    let mx = x.iter().copied().max().unwrap() + 1;
    let my = y.iter().copied().max().unwrap() + 1;
    let mut joint = vec![0.0_f64; mx * my];
    let mut px = vec![0.0_f64; mx];
    let mut py = vec![0.0_f64; my];
    let inv = 1.0 / n as f64;
    for (&a, &b) in x.iter().zip(y.iter()) {
        joint[a * my + b] += inv;
        px[a] += inv;
        py[b] += inv;
    }
    let mut mi = 0.0;
    for a in 0..mx {
        for b in 0..my {
            let p = joint[a * my + b];
            if p > 0.0 {
                mi += p * (p / (px[a] * py[b])).ln();
            }
        }
    }
    mi.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn identical_binary_sequences_give_log2() {
        let x = vec![0, 0, 1, 1];
        let mi = discrete_mi(&x, &x);
        assert!((mi - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn independent_coins_give_near_zero() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let n = 4000;
        let x: Vec<usize> = (0..n).map(|_| usize::from(rng.random_bool(0.5))).collect();
        let y: Vec<usize> = (0..n).map(|_| usize::from(rng.random_bool(0.5))).collect();
        let mi = discrete_mi(&x, &y);
        assert!(mi <= 0.01, "mi = {mi}");
    }

    #[test]
    fn symmetric_and_nonnegative() {
        let x = vec![0, 1, 2, 0, 1, 2, 2, 1];
        let y = vec![1, 1, 0, 0, 1, 0, 0, 1];
        assert!((discrete_mi(&x, &y) - discrete_mi(&y, &x)).abs() < 1e-15);
        assert!(discrete_mi(&x, &y) >= 0.0);
    }

    #[test]
    fn factorizing_joint_gives_exact_zero() {
        // every (a, b) cell appears equally often
        let x = vec![0, 0, 1, 1];
        let y = vec![0, 1, 0, 1];
        assert_eq!(discrete_mi(&x, &y), 0.0);
    }

    #[test]
    fn binning_keeps_equal_values_together() {
        let v = array![1.0, 1.0, 1.0, 2.0, 2.0, 3.0];
        let b = bin_equal_frequency(&v.view(), 3);
        assert_eq!(b[0], b[1]);
        assert_eq!(b[1], b[2]);
        assert!(b[3] > b[2]);
        assert_eq!(b[3], b[4]);
    }

    #[test]
    fn binary_data_yields_two_effective_bins() {
        let v = array![0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0];
        let b = bin_equal_frequency(&v.view(), 10);
        let zeros: Vec<usize> =
            v.iter().zip(&b).filter(|(x, _)| **x == 0.0).map(|(_, &bi)| bi).collect();
        let ones: Vec<usize> =
            v.iter().zip(&b).filter(|(x, _)| **x == 1.0).map(|(_, &bi)| bi).collect();
        assert!(zeros.iter().all(|&z| z == zeros[0]));
        assert!(ones.iter().all(|&o| o == ones[0]));
        assert_ne!(zeros[0], ones[0]);
    }

    #[test]
    fn default_bins_cap_at_ten() {
        assert_eq!(default_bin_count(4), 2);
        assert_eq!(default_bin_count(81), 9);
        assert_eq!(default_bin_count(400), 10);
    }
}
