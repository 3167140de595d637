//! Biased empirical HSIC, `tr(KHLH) / (n-1)^2`, with a Gaussian input kernel
//! and a Gaussian or delta output kernel depending on the task.

use ndarray::{Array2, ArrayView2};

use crate::data::{median_pairwise_distance, Dataset, Target};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutputKernel {
    Gaussian { width: f64 },
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsicConfig {
    pub width_x: f64,
    pub output_kernel: OutputKernel,
}

/// Config with both widths set by the median heuristic: the input width from
/// the given (possibly weighted or subset) feature matrix, the output width
/// from the target values; classification uses the delta kernel.
pub fn hsic_config_for(features: &ArrayView2<f64>, target: &Target) -> Result<HsicConfig> {
    let width_x = positive_or_one(median_pairwise_distance(features)?);
    let output_kernel = match target {
        Target::Class { .. } => OutputKernel::Delta,
        Target::Real(y) => {
            let row = y.view().insert_axis(ndarray::Axis(0));
            OutputKernel::Gaussian { width: positive_or_one(median_pairwise_distance(&row)?) }
        }
    };
    Ok(HsicConfig { width_x, output_kernel })
}

fn positive_or_one(width: f64) -> f64 {
    if width > 1e-12 {
        width
    } else {
        1.0
    }
}

/// HSIC of the dataset's features (already restricted or weighted by the
/// caller) against its target.
pub fn hsic(data: &Dataset, cfg: &HsicConfig) -> f64 {
    hsic_of(&data.features(), data.target(), cfg)
}

pub fn hsic_of(features: &ArrayView2<f64>, target: &Target, cfg: &HsicConfig) -> f64 {
    let n = features.ncols();
    assert!(n >= 2, "hsic needs at least two samples");
    let k = gaussian_gram(features, cfg.width_x);
    let l = output_gram(target, cfg.output_kernel);
    let kc = double_center(&k);
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += kc[(i, j)] * l[(i, j)];
        }
    }
    acc / ((n - 1) as f64).powi(2)
}

pub(crate) fn gaussian_gram(points: &ArrayView2<f64>, width: f64) -> Array2<f64> {
    let n = points.ncols();
    let denom = 2.0 * width * width;
    let mut k = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        k[(i, i)] = 1.0;
        let a = points.column(i);
        for j in i + 1..n {
            let b = points.column(j);
            let d2: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum();
            let v = (-d2 / denom).exp();
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    k
}

pub(crate) fn output_gram(target: &Target, kernel: OutputKernel) -> Array2<f64> {
    let n = target.len();
    let mut l = Array2::<f64>::zeros((n, n));
    match (target, kernel) {
        (Target::Class { labels, .. }, OutputKernel::Delta) => {
            for i in 0..n {
                for j in 0..n {
                    l[(i, j)] = f64::from(labels[i] == labels[j]);
                }
            }
        }
        (_, OutputKernel::Delta) => {
            for i in 0..n {
                for j in 0..n {
                    l[(i, j)] = f64::from(target.value(i) == target.value(j));
                }
            }
        }
        (_, OutputKernel::Gaussian { width }) => {
            let denom = 2.0 * width * width;
            for i in 0..n {
                for j in 0..n {
                    let d = target.value(i) - target.value(j);
                    l[(i, j)] = (-d * d / denom).exp();
                }
            }
        }
    }
    l
}

/// `H G H` with `H = I - 11^T/n`.
fn double_center(g: &Array2<f64>) -> Array2<f64> {
    let n = g.nrows();
    let nf = n as f64;
    let row_means: Vec<f64> = (0..n).map(|i| g.row(i).sum() / nf).collect();
    let grand = row_means.iter().sum::<f64>() / nf;
    let mut out = g.clone();
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] += grand - row_means[i] - row_means[j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Target;
    use ndarray::{array, Array1};
    use rand::{Rng, SeedableRng};

    /// Three-expectation expansion of the same statistic, computed by literal
    /// sums: tr(KHLH) = T1 - 2 T2 / n + T3 / n^2.
    fn hsic_triple_sum(k: &Array2<f64>, l: &Array2<f64>) -> f64 {
        let n = k.nrows();
        let mut t1 = 0.0;
        for i in 0..n {
            for j in 0..n {
                t1 += k[(i, j)] * l[(i, j)];
            }
        }
        let mut t2 = 0.0;
        for i in 0..n {
            let krow: f64 = k.row(i).sum();
            let lrow: f64 = l.row(i).sum();
            t2 += krow * lrow;
        }
        let t3 = k.sum() * l.sum();
        let nf = n as f64;
        (t1 - 2.0 * t2 / nf + t3 / nf.powi(2)) / (nf - 1.0).powi(2)
    }

    #[test]
    fn matches_triple_sum_oracle_on_random_fixtures() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for trial in 0..20 {
            let n = 5 + (trial % 40);
            let xs = Array2::from_shape_fn((2, n), |_| rng.random::<f64>() * 4.0 - 2.0);
            let ys: Array1<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0).collect();
            let target = Target::Real(ys);
            let cfg = HsicConfig {
                width_x: 0.7,
                output_kernel: OutputKernel::Gaussian { width: 1.3 },
            };
            let fast = hsic_of(&xs.view(), &target, &cfg);
            let k = gaussian_gram(&xs.view(), cfg.width_x);
            let l = output_gram(&target, cfg.output_kernel);
            let slow = hsic_triple_sum(&k, &l);
            assert!((fast - slow).abs() < 1e-10, "trial {trial}: {fast} vs {slow}");
        }
    }

    #[test]
    fn constant_target_gives_zero() {
        let xs = array![[0.0, 1.0, 2.0, 3.0]];
        let target = Target::Real(array![5.0, 5.0, 5.0, 5.0]);
        let cfg = HsicConfig { width_x: 1.0, output_kernel: OutputKernel::Gaussian { width: 1.0 } };
        let v = hsic_of(&xs.view(), &target, &cfg);
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn self_dependence_three_points() {
        // x = y = (0, 1, 2), width 1 on both sides: frozen tr(KHKH)/4.
        let xs = array![[0.0, 1.0, 2.0]];
        let target = Target::Real(array![0.0, 1.0, 2.0]);
        let cfg = HsicConfig { width_x: 1.0, output_kernel: OutputKernel::Gaussian { width: 1.0 } };
        let v = hsic_of(&xs.view(), &target, &cfg);
        assert!(v > 0.0);
        assert!((v - 0.20088300629712985).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn invariant_under_joint_permutation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 12;
        let xs = Array2::from_shape_fn((3, n), |_| rng.random::<f64>());
        let ys: Array1<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let cfg = HsicConfig { width_x: 0.9, output_kernel: OutputKernel::Gaussian { width: 0.8 } };
        let base = hsic_of(&xs.view(), &Target::Real(ys.clone()), &cfg);
        let perm: Vec<usize> = (0..n).rev().collect();
        let xp = xs.select(ndarray::Axis(1), &perm);
        let yp: Array1<f64> = perm.iter().map(|&i| ys[i]).collect();
        let permuted = hsic_of(&xp.view(), &Target::Real(yp), &cfg);
        assert!((base - permuted).abs() < 1e-12);
        assert!(base >= -1e-12);
    }
}
