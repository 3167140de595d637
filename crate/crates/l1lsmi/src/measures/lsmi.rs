//! Least-squares estimation of squared-loss mutual information.
//!
//! The density ratio p(x,y) / (p(x) p(y)) is modeled as a nonnegative linear
//! combination of product-kernel basis functions; the ridge-regularized
//! least-squares coefficients have a closed form, and the estimate is
//! `h^T alpha / 2 - 1/2`. Model selection for the shared kernel width and the
//! ridge parameter runs K-fold cross validation on a grid, with widths scaled
//! from the median pairwise distance of the current inputs.

use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::basis::{Basis, BasisFeatures};
use crate::data::{median_pairwise_distance, Target};
use crate::error::{Error, Result};
use crate::linalg::{add_ridge, solve_spd};

/// Cross-validation candidates. Widths are `sigma_scales * sigma_med`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CvGrid {
    pub sigma_scales: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub folds: usize,
}

impl Default for CvGrid {
    fn default() -> Self {
        CvGrid {
            sigma_scales: vec![0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.5, 2.0],
            lambdas: vec![1e-3, 1e-2, 1e-1, 1.0],
            folds: 5,
        }
    }
}

impl CvGrid {
    pub fn validate(&self) -> Result<()> {
        if self.sigma_scales.is_empty() || self.lambdas.is_empty() {
            return Err(Error::Config("cv grid must not be empty".into()));
        }
        if self.sigma_scales.iter().chain(&self.lambdas).any(|&v| !(v > 0.0)) {
            return Err(Error::Config("cv grid entries must be positive".into()));
        }
        if self.folds < 2 {
            return Err(Error::Config("cv needs at least 2 folds".into()));
        }
        Ok(())
    }
}

/// Fitted ridge coefficients together with the quadratic-form pieces.
#[derive(Debug, Clone)]
pub struct LsmiFit {
    /// `(1/n^2) sum_i sum_j phi(x_i, y_j) phi(x_i, y_j)^T`, evaluated through
    /// the factorized Gram form.
    pub h_matrix: Array2<f64>,
    /// `(1/n) sum_i phi(x_i, y_i)`.
    pub h_vector: Array1<f64>,
    pub alpha: Array1<f64>,
    /// The estimate `h^T alpha / 2 - 1/2`. May be slightly negative on finite
    /// samples; never clipped.
    pub value: f64,
}

/// A fitted density-ratio model: basis centers, shared width, ridge, and
/// coefficients.
#[derive(Debug, Clone)]
pub struct LsmiModel {
    pub centers: Vec<usize>,
    pub sigma: f64,
    pub lambda: f64,
    pub alpha: Array1<f64>,
}

impl LsmiModel {
    pub fn basis_count(&self) -> usize {
        self.centers.len()
    }

    pub fn basis(&self) -> Basis {
        Basis { centers: self.centers.clone(), sigma: self.sigma }
    }
}

/// Outcome of cross-validated model selection plus the final full-data fit.
#[derive(Debug, Clone)]
pub struct LsmiEstimate {
    pub model: LsmiModel,
    pub fit: LsmiFit,
    pub sigma_med: f64,
    pub cv_score: f64,
}

impl LsmiEstimate {
    pub fn value(&self) -> f64 {
        self.fit.value
    }
}

/// Solves the ridge system for the given basis evaluations.
///
/// `H` is assembled as `(Phi_x Phi_x^T) .* (Phi_y Phi_y^T) / n^2`, which
/// equals the literal double sum over sample pairs because the basis
/// factorizes over x and y.
pub fn lsmi_fit(features: &BasisFeatures, lambda: f64) -> Result<LsmiFit> {
    let gx = gram(&features.phi_x);
    let gy = gram(&features.phi_y);
    let n = features.phi_x.ncols();
    let h_matrix = hadamard_scaled(&gx, &gy, 1.0 / (n as f64 * n as f64));
    let h_vector = diag_mean(&features.phi_x, &features.phi_y);
    let alpha = solve_alpha(&h_matrix, &h_vector, lambda)?;
    let value = 0.5 * h_vector.dot(&alpha) - 0.5;
    if !value.is_finite() {
        return Err(Error::numerical("non-finite LSMI value"));
    }
    Ok(LsmiFit { h_matrix, h_vector, alpha, value })
}

fn solve_alpha(
    h_matrix: &Array2<f64>,
    h_vector: &Array1<f64>,
    lambda: f64,
) -> Result<Array1<f64>> {
    if !(lambda > 0.0) {
        return Err(Error::invalid_input("ridge parameter must be positive"));
    }
    let ridged = add_ridge(&h_matrix.view(), lambda);
    let alpha = solve_spd(&ridged.view(), &h_vector.view()).map_err(|e| {
        let diag_min =
            (0..h_matrix.nrows()).map(|i| h_matrix[(i, i)]).fold(f64::INFINITY, f64::min);
        Error::numerical(format!(
            "ridge solve failed (b = {}, lambda = {lambda:.3e}, min diag = {diag_min:.3e}): {e}",
            h_matrix.nrows()
        ))
    })?;
    if alpha.iter().any(|v| !v.is_finite()) {
        return Err(Error::numerical("non-finite ridge coefficients"));
    }
    Ok(alpha)
}

fn gram(phi: &Array2<f64>) -> Array2<f64> {
    phi.dot(&phi.t())
}

fn hadamard_scaled(a: &Array2<f64>, b: &Array2<f64>, scale: f64) -> Array2<f64> {
    let mut out = a.clone();
    out.zip_mut_with(b, |x, &y| *x *= y);
    out * scale
}

fn diag_mean(phi_x: &Array2<f64>, phi_y: &Array2<f64>) -> Array1<f64> {
    let n = phi_x.ncols() as f64;
    let mut h = Array1::<f64>::zeros(phi_x.nrows());
    for (l, acc) in h.iter_mut().enumerate() {
        let mut s = 0.0;
        for i in 0..phi_x.ncols() {
            s += phi_x[(l, i)] * phi_y[(l, i)];
        }
        *acc = s / n;
    }
    h
}

/// K-fold cross-validated selection of `(sigma, lambda)` followed by a fit on
/// all samples. Ties prefer the smoother model: larger width, then larger
/// ridge. Centers and fold assignment are drawn from `rng`, so the outcome is
/// a pure function of the dataset and the RNG state.
pub fn lsmi_cv_select(
    xw: &ArrayView2<f64>,
    target: &Target,
    basis_count: usize,
    grid: &CvGrid,
    rng: &mut ChaCha8Rng,
) -> Result<LsmiEstimate> {
    grid.validate()?;
    let n = xw.ncols();
    if n < grid.folds {
        return Err(Error::invalid_input(format!(
            "cv needs at least {} samples, got {n}",
            grid.folds
        )));
    }
    let b = basis_count.min(n);
    let centers = Basis::choose_centers(n, b, rng)?;
    let sigma_med = {
        let s = median_pairwise_distance(xw)?;
        if s > 1e-12 {
            s
        } else {
            1.0
        }
    };
    let folds = assign_folds(n, grid.folds, rng);
    let is_classification = matches!(target, Target::Class { .. });

    // Delta output kernels do not depend on sigma; hoist them out of the loop.
    let mut cached_y: Option<FoldedGrams> = None;
    let mut best: Option<(f64, f64, f64)> = None; // (score, sigma, lambda)
    let mut any_finite = false;

    let mut scales = grid.sigma_scales.clone();
    scales.sort_unstable_by(f64::total_cmp);
    let mut lambdas = grid.lambdas.clone();
    lambdas.sort_unstable_by(f64::total_cmp);

    for &scale in &scales {
        let sigma = scale * sigma_med;
        let basis = Basis { centers: centers.clone(), sigma };
        let phi_x = basis.phi_x(xw);
        let folded_x = FoldedGrams::new(&phi_x, &folds, grid.folds);
        let folded_y = if is_classification {
            if cached_y.is_none() {
                cached_y = Some(FoldedGrams::new(&basis.phi_y(target), &folds, grid.folds));
            }
            cached_y.as_ref().unwrap().clone()
        } else {
            FoldedGrams::new(&basis.phi_y(target), &folds, grid.folds)
        };
        let h_folds = fold_h_vectors(&phi_x, &folded_y.phi, &folds, grid.folds);

        for &lambda in &lambdas {
            if let Some(score) =
                cv_score(&folded_x, &folded_y, &h_folds, lambda, grid.folds, n, &folds)
            {
                any_finite = true;
                let better = match best {
                    None => true,
                    Some((bs, bsig, blam)) => {
                        score < bs
                            || (score == bs
                                && (sigma > bsig || (sigma == bsig && lambda > blam)))
                    }
                };
                if better {
                    best = Some((score, sigma, lambda));
                }
            }
        }
    }

    let (cv_score, sigma, lambda) = best.ok_or_else(|| {
        Error::numerical("no (sigma, lambda) candidate produced a finite CV score")
    })?;
    if !any_finite {
        return Err(Error::numerical("all CV candidates were non-finite"));
    }

    let basis = Basis { centers: centers.clone(), sigma };
    let fit = lsmi_fit(&basis.features(xw, target), lambda)?;
    let model = LsmiModel { centers, sigma, lambda, alpha: fit.alpha.clone() };
    Ok(LsmiEstimate { model, fit, sigma_med, cv_score })
}

/// Deterministic fold assignment: a shuffled permutation chunked into K
/// nearly equal parts.
fn assign_folds(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut fold_of = vec![0usize; n];
    for (pos, &sample) in perm.iter().enumerate() {
        fold_of[sample] = pos * k / n;
    }
    fold_of
}

/// Per-fold basis Grams plus their total, so train-side Grams come from a
/// subtraction instead of a second pass.
#[derive(Debug, Clone)]
struct FoldedGrams {
    phi: Array2<f64>,
    per_fold: Vec<Array2<f64>>,
    total: Array2<f64>,
}

impl FoldedGrams {
    fn new(phi: &Array2<f64>, fold_of: &[usize], k: usize) -> Self {
        let b = phi.nrows();
        let mut per_fold = Vec::with_capacity(k);
        let mut total = Array2::<f64>::zeros((b, b));
        for fold in 0..k {
            let idx: Vec<usize> =
                fold_of.iter().enumerate().filter(|(_, &f)| f == fold).map(|(i, _)| i).collect();
            let cols = phi.select(Axis(1), &idx);
            let g = cols.dot(&cols.t());
            total += &g;
            per_fold.push(g);
        }
        FoldedGrams { phi: phi.clone(), per_fold, total }
    }
}

fn fold_h_vectors(
    phi_x: &Array2<f64>,
    phi_y: &Array2<f64>,
    fold_of: &[usize],
    k: usize,
) -> (Vec<Array1<f64>>, Array1<f64>, Vec<usize>) {
    let b = phi_x.nrows();
    let n = phi_x.ncols();
    let mut per_fold = vec![Array1::<f64>::zeros(b); k];
    let mut counts = vec![0usize; k];
    for i in 0..n {
        let f = fold_of[i];
        counts[f] += 1;
        for l in 0..b {
            per_fold[f][l] += phi_x[(l, i)] * phi_y[(l, i)];
        }
    }
    let mut total = Array1::<f64>::zeros(b);
    for v in &per_fold {
        total += v;
    }
    (per_fold, total, counts)
}

fn cv_score(
    fx: &FoldedGrams,
    fy: &FoldedGrams,
    h_folds: &(Vec<Array1<f64>>, Array1<f64>, Vec<usize>),
    lambda: f64,
    k: usize,
    n: usize,
    _fold_of: &[usize],
) -> Option<f64> {
    let (h_per_fold, h_total, counts) = h_folds;
    let mut score = 0.0;
    for fold in 0..k {
        let n_te = counts[fold];
        let n_tr = n - n_te;
        if n_te == 0 || n_tr == 0 {
            return None;
        }
        let gx_tr = &fx.total - &fx.per_fold[fold];
        let gy_tr = &fy.total - &fy.per_fold[fold];
        let h_tr_mat = hadamard_scaled(&gx_tr, &gy_tr, 1.0 / (n_tr as f64 * n_tr as f64));
        let h_tr_vec = (h_total - &h_per_fold[fold]) / n_tr as f64;
        let ridged = add_ridge(&h_tr_mat.view(), lambda);
        let alpha = solve_spd(&ridged.view(), &h_tr_vec.view()).ok()?;
        let h_te_mat = hadamard_scaled(
            &fx.per_fold[fold],
            &fy.per_fold[fold],
            1.0 / (n_te as f64 * n_te as f64),
        );
        let h_te_vec = &h_per_fold[fold] / n_te as f64;
        let j = 0.5 * alpha.dot(&h_te_mat.dot(&alpha)) - h_te_vec.dot(&alpha);
        if !j.is_finite() {
            return None;
        }
        score += j;
    }
    let score = score / k as f64;
    score.is_finite().then_some(score)
}
