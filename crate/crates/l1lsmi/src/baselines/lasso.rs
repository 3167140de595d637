//! Lasso selection: cyclic coordinate descent with soft thresholding, and a
//! bisection over the penalty so the support lands on the requested size.
//! Works for regression targets and binary classification (labels recoded to
//! +/-1); the intercept is handled by centering the target.

use ndarray::{Array1, ArrayView2};

use crate::config::SelectorConfig;
use crate::data::{Dataset, FeatureIndexSet, Target};
use crate::error::{Error, Result};
use crate::selector::{SelectionDiagnostics, SelectionResult};

fn soft_threshold(z: f64, gamma: f64) -> f64 {
    if z > gamma {
        z - gamma
    } else if z < -gamma {
        z + gamma
    } else {
        0.0
    }
}

/// Minimizes `||y - w^T X||^2 + lambda ||w||_1` by coordinate descent.
/// Soft thresholding produces exact zeros, so the support is read off
/// directly.
fn coordinate_descent(
    x: &ArrayView2<f64>,
    y: &Array1<f64>,
    lambda: f64,
    max_sweeps: usize,
) -> Array1<f64> {
    let m = x.nrows();
    let n = x.ncols();
    let norms: Vec<f64> = (0..m).map(|j| x.row(j).dot(&x.row(j))).collect();
    let mut w = Array1::<f64>::zeros(m);
    let mut residual = y.clone(); // y - w^T X, starts at y for w = 0
    for _ in 0..max_sweeps {
        let mut max_change = 0.0_f64;
        for j in 0..m {
            if norms[j] <= 0.0 {
                continue;
            }
            let old = w[j];
            let row = x.row(j);
            // rho = <x_j, residual + old * x_j>
            let mut rho = row.dot(&residual);
            rho += old * norms[j];
            let new = soft_threshold(rho, lambda / 2.0) / norms[j];
            if new != old {
                let delta = new - old;
                for i in 0..n {
                    residual[i] -= delta * row[i];
                }
                w[j] = new;
                max_change = max_change.max(delta.abs());
            }
        }
        if max_change < 1e-10 {
            break;
        }
    }
    w
}

fn support_of(w: &Array1<f64>) -> Vec<usize> {
    w.iter().enumerate().filter(|(_, &v)| v != 0.0).map(|(j, _)| j + 1).collect()
}

pub fn lasso_select(data: &Dataset, k: usize, cfg: &SelectorConfig) -> Result<SelectionResult> {
    let m = data.num_features();
    let y_raw: Array1<f64> = match data.target() {
        Target::Real(y) => y.clone(),
        Target::Class { labels, classes } => {
            if *classes != 2 {
                return Err(Error::TaskMismatch(format!(
                    "lasso handles regression or binary classification, got {classes} classes"
                )));
            }
            labels.iter().map(|&l| if l == 1 { -1.0 } else { 1.0 }).collect()
        }
    };
    let mean = y_raw.sum() / y_raw.len() as f64;
    let y = y_raw.mapv(|v| v - mean);
    let x = data.features();

    let lambda_max = (0..m)
        .map(|j| 2.0 * x.row(j).dot(&y).abs())
        .fold(0.0_f64, f64::max);
    if lambda_max <= 0.0 {
        return Err(Error::Numerical(
            "all features are orthogonal to the target; lasso path is empty".into(),
        ));
    }

    // Support size shrinks (roughly monotonically) in lambda; bisect for k.
    let mut lo = 0.0_f64;
    let mut hi = lambda_max;
    let mut best: Option<(usize, Array1<f64>)> = None; // (|size - k| winner)
    let mut exact: Option<Array1<f64>> = None;
    for _ in 0..cfg.lasso_bisection_steps {
        let mid = 0.5 * (lo + hi);
        let w = coordinate_descent(&x, &y, mid, cfg.lasso_max_sweeps);
        let size = support_of(&w).len();
        let better = match &best {
            None => true,
            Some((bs, _)) => {
                let d_new = size.abs_diff(k);
                let d_old = bs.abs_diff(k);
                d_new < d_old || (d_new == d_old && size < *bs)
            }
        };
        if better {
            best = Some((size, w.clone()));
        }
        if size == k {
            exact = Some(w);
            break;
        } else if size > k {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let (weights, fallback) = match exact {
        Some(w) => (w, false),
        None => {
            let (_, w) = best.expect("bisection ran at least once");
            (w, true)
        }
    };
    let support = support_of(&weights);
    let selected = FeatureIndexSet::new(support, m)?;
    let mut diagnostics = SelectionDiagnostics { fallback, ..Default::default() };
    if fallback {
        diagnostics.flags.push(format!(
            "no penalty produced exactly {k} features; returning the nearest support of size {}",
            selected.len()
        ));
    }
    Ok(SelectionResult {
        selected,
        scores: weights.iter().map(|v| v.abs()).collect(),
        diagnostics,
    })
}
