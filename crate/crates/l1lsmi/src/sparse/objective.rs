//! Weighted objectives and their exact gradients at a fixed model.
//!
//! For LSMI the model is (centers, sigma, lambda); the coefficients are refit
//! at every weight vector, and by the envelope identity for the ridge
//! solution the total derivative reduces to the partial derivatives of the
//! quadratic pieces at the fitted alpha:
//!
//!   grad_j = alpha^T d(h)/dw_j - (1/2) alpha^T d(H)/dw_j alpha,
//!   d(phi_x^l(x_i))/dw_j = phi_x^l(x_i) * (-w_j (x_{j,i} - x_{j,c(l)})^2 / sigma^2).
//!
//! Everything is assembled from Gram-sized matrix products; no b x n x m
//! tensor is materialized.

use ndarray::{Array1, Array2, Axis};

use crate::data::{median_pairwise_distance, Dataset};
use crate::error::{Error, Result};
use crate::measures::{hsic_config_for, Basis, BasisFeatures, HsicConfig};
use crate::measures::{lsmi_fit, LsmiFit};

/// Fixed LSMI model during gradient steps between model re-selections.
#[derive(Debug, Clone)]
pub struct LsmiWeightModel {
    pub centers: Vec<usize>,
    pub sigma: f64,
    pub lambda: f64,
}

/// Fixed HSIC model: input width plus the doubly centered output Gram, which
/// never depends on the weights.
#[derive(Debug, Clone)]
pub struct HsicWeightModel {
    pub width_x: f64,
    pub centered_output: Array2<f64>,
}

/// A measure with its period-fixed model, evaluable at any weight vector.
#[derive(Debug, Clone)]
pub enum WeightObjective {
    Lsmi(LsmiWeightModel),
    Hsic(HsicWeightModel),
}

impl WeightObjective {
    pub fn eval(&self, data: &Dataset, w: &Array1<f64>) -> Result<(f64, Array1<f64>)> {
        match self {
            WeightObjective::Lsmi(model) => lsmi_objective_and_gradient(data, w, model),
            WeightObjective::Hsic(model) => hsic_objective_and_gradient(data, w, model),
        }
    }
}

/// LSMI value of `diag(w) X` against the target, with its gradient in `w`.
pub fn lsmi_objective_and_gradient(
    data: &Dataset,
    w: &Array1<f64>,
    model: &LsmiWeightModel,
) -> Result<(f64, Array1<f64>)> {
    let n = data.num_samples();
    let nf = n as f64;
    let xw = data.weighted_features(w);
    let basis = Basis { centers: model.centers.clone(), sigma: model.sigma };
    let feats = basis.features(&xw.view(), data.target());
    let fit: LsmiFit = lsmi_fit(&feats, model.lambda)?;
    let alpha = &fit.alpha;

    let BasisFeatures { phi_x, phi_y } = feats;
    let gy = phi_y.dot(&phi_y.t());

    // s1[l, i] = alpha_l phi_x[l, i] phi_y[l, i]      (from d(h)/dw)
    // s2[l, i] = alpha_l phi_x[l, i] * sum_k Gy[l, k] alpha_k phi_x[k, i]
    //                                                  (from alpha^T d(H)/dw alpha)
    // combined[l, i] = s2 / n^2 - s1 / n, so one weighted-distance pass covers
    // both terms.
    let mut gy_alpha = gy;
    for (mut col, &a) in gy_alpha.axis_iter_mut(Axis(1)).zip(alpha.iter()) {
        col.mapv_inplace(|v| v * a);
    }
    let mix = gy_alpha.dot(&phi_x);
    let b = phi_x.nrows();
    let mut combined = Array2::<f64>::zeros((b, n));
    let inv_n = 1.0 / nf;
    let inv_n2 = inv_n * inv_n;
    for l in 0..b {
        let al = alpha[l];
        for i in 0..n {
            let px = phi_x[(l, i)];
            let s1 = al * px * phi_y[(l, i)];
            let s2 = al * px * mix[(l, i)];
            combined[(l, i)] = s2 * inv_n2 - s1 * inv_n;
        }
    }

    let t = weighted_sq_dist_sums(&data.features().to_owned(), &model.centers, &combined);
    let inv_sigma2 = 1.0 / (model.sigma * model.sigma);
    let mut grad = Array1::<f64>::zeros(w.len());
    for j in 0..w.len() {
        grad[j] = w[j] * inv_sigma2 * t[j];
    }
    check_gradient_finite(&grad)?;
    Ok((fit.value, grad))
}

/// Builds the HSIC model at the current weights: width from the median
/// pairwise distance of `diag(w) X`, output kernel per task with its own
/// median-width (or delta), centered once.
pub fn hsic_weight_model(data: &Dataset, w: &Array1<f64>) -> Result<HsicWeightModel> {
    let xw = data.weighted_features(w);
    let width = {
        let s = median_pairwise_distance(&xw.view())?;
        if s > 1e-12 {
            s
        } else {
            1.0
        }
    };
    let cfg: HsicConfig = hsic_config_for(&data.features(), data.target())?;
    let l = crate::measures::output_gram(data.target(), cfg.output_kernel);
    Ok(HsicWeightModel { width_x: width, centered_output: double_center(&l) })
}

/// HSIC of `diag(w) X` against the target with its gradient in `w`, at a
/// fixed input width.
pub fn hsic_objective_and_gradient(
    data: &Dataset,
    w: &Array1<f64>,
    model: &HsicWeightModel,
) -> Result<(f64, Array1<f64>)> {
    let n = data.num_samples();
    let scale = 1.0 / ((n - 1) as f64).powi(2);
    let xw = data.weighted_features(w);
    let k = crate::measures::gaussian_gram(&xw.view(), model.width_x);

    let mut value = 0.0;
    let mut a = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let prod = k[(i, j)] * model.centered_output[(i, j)];
            value += prod;
            a[(i, j)] = prod;
        }
    }
    value *= scale;

    // T_j = sum_{i,i'} A[i,i'] (x_{j,i} - x_{j,i'})^2, A symmetric
    let x = data.features();
    let x2 = x.mapv(|v| v * v);
    let row_sums: Array1<f64> = a.sum_axis(Axis(1));
    let term1 = x2.dot(&row_sums);
    let xa = x.dot(&a);
    let mut grad = Array1::<f64>::zeros(w.len());
    let inv_sigma2 = 1.0 / (model.width_x * model.width_x);
    for j in 0..w.len() {
        let mut rowdot = 0.0;
        for i in 0..n {
            rowdot += x[(j, i)] * xa[(j, i)];
        }
        let t_j = 2.0 * (term1[j] - rowdot);
        grad[j] = -w[j] * inv_sigma2 * t_j * scale;
    }
    check_gradient_finite(&grad)?;
    Ok((value, grad))
}

/// For each feature j: `sum_{l,i} weights[l,i] * (x_{j,i} - x_{j,c(l)})^2`,
/// expanded into three Gram-sized products.
fn weighted_sq_dist_sums(
    x: &Array2<f64>,
    centers: &[usize],
    weights: &Array2<f64>,
) -> Array1<f64> {
    let x2 = x.mapv(|v| v * v);
    let xc = x.select(Axis(1), centers);
    let xc2 = xc.mapv(|v| v * v);
    let col_sums: Array1<f64> = weights.sum_axis(Axis(0));
    let row_sums: Array1<f64> = weights.sum_axis(Axis(1));
    let term1 = x2.dot(&col_sums);
    let term3 = xc2.dot(&row_sums);
    let cross = xc.dot(weights); // m x n
    let m = x.nrows();
    let n = x.ncols();
    let mut out = Array1::<f64>::zeros(m);
    for j in 0..m {
        let mut rowdot = 0.0;
        for i in 0..n {
            rowdot += x[(j, i)] * cross[(j, i)];
        }
        out[j] = term1[j] - 2.0 * rowdot + term3[j];
    }
    out
}

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

fn check_gradient_finite(grad: &Array1<f64>) -> Result<()> {
    if let Some((j, v)) = grad.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::numerical(format!(
            "non-finite gradient {v} at feature {}",
            j + 1
        )));
    }
    Ok(())
}
