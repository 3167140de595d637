//! Quadratic-programming feature selection: minimize
//! `(1-alpha)/2 w^T Q w - alpha f^T w` over the probability simplex, with
//! `Q_ij = |rho(X_i, X_j)|`, `f_i = |rho(X_i, Y)|`, and the recommended
//! trade-off `alpha = mean(Q) / (mean(Q) + mean(f))`. Solved by projected
//! gradient descent with a fixed `1/L` step, reusing the simplex projection.

use ndarray::{Array1, Array2};

use crate::config::SelectorConfig;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::measures::{pearson, pearson_feature_score};
use crate::selector::SelectionResult;
use crate::sparse::project_simplex;

use super::ranking::top_k_by_score;

#[derive(Debug, Clone)]
pub struct QpfsProblem {
    pub q: Array2<f64>,
    pub f: Array1<f64>,
    pub alpha: f64,
}

impl QpfsProblem {
    pub fn from_dataset(data: &Dataset) -> Self {
        let m = data.num_features();
        let x = data.features();
        let mut q = Array2::<f64>::zeros((m, m));
        for i in 0..m {
            q[(i, i)] = 1.0;
            for j in i + 1..m {
                let v = pearson(&x.row(i), &x.row(j)).rho.abs().clamp(0.0, 1.0);
                q[(i, j)] = v;
                q[(j, i)] = v;
            }
        }
        let f: Array1<f64> =
            (0..m).map(|j| pearson_feature_score(data, j).clamp(0.0, 1.0)).collect();
        let q_mean = q.sum() / (m * m) as f64;
        let f_mean = f.sum() / m as f64;
        let alpha = if q_mean + f_mean > 0.0 { q_mean / (q_mean + f_mean) } else { 1.0 };
        QpfsProblem { q, f, alpha }
    }

    fn objective(&self, w: &Array1<f64>) -> f64 {
        0.5 * (1.0 - self.alpha) * w.dot(&self.q.dot(w)) - self.alpha * self.f.dot(w)
    }
}

pub fn qpfs(data: &Dataset, k: usize, cfg: &SelectorConfig) -> Result<SelectionResult> {
    let problem = QpfsProblem::from_dataset(data);
    qpfs_with_alpha(data, k, problem.alpha, cfg)
}

/// QPFS with an explicit trade-off. At `alpha = 1` the quadratic term drops
/// out and the solution degenerates to pure relevance ranking, which is
/// exactly Pearson ranking; that limit is taken analytically.
pub fn qpfs_with_alpha(
    data: &Dataset,
    k: usize,
    alpha: f64,
    cfg: &SelectorConfig,
) -> Result<SelectionResult> {
    let mut problem = QpfsProblem::from_dataset(data);
    problem.alpha = alpha;
    let m = data.num_features();

    if alpha >= 1.0 - 1e-12 {
        let scores = problem.f.to_vec();
        let selected = top_k_by_score(&scores, k, m);
        return Ok(SelectionResult::ranked(selected, scores));
    }

    // Lipschitz constant of the gradient: (1-alpha) ||Q||_2 <= (1-alpha) m
    // (entries of Q are in [0,1]); the Frobenius norm is a tighter usable
    // bound.
    let frob = problem.q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let lipschitz = ((1.0 - alpha) * frob).max(1e-12);
    let step = 1.0 / lipschitz;

    let mut w = Array1::<f64>::from_elem(m, 1.0 / m as f64);
    let mut prev_obj = problem.objective(&w);
    let mut converged = false;
    let mut last_decrease = f64::INFINITY;
    for _ in 0..cfg.qpfs_max_iters {
        let grad = &problem.q.dot(&w) * (1.0 - alpha) - &(&problem.f * alpha);
        let proposal = &w - &(&grad * step);
        w = project_simplex(&proposal.view(), 1.0);
        let obj = problem.objective(&w);
        last_decrease = prev_obj - obj;
        if last_decrease < cfg.qpfs_tol {
            converged = true;
            break;
        }
        prev_obj = obj;
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "qpfs projected gradient: last objective decrease {last_decrease:.3e} after {} iterations",
            cfg.qpfs_max_iters
        )));
    }
    // exact feasibility after the final projection
    w = project_simplex(&w.view(), 1.0);
    let scores = w.to_vec();
    let selected = top_k_by_score(&scores, k, m);
    Ok(SelectionResult::ranked(selected, scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::rank_pearson;
    use crate::data::{parse_csv, TaskKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_regression(seed: u64, m: usize, n: usize) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut text = String::new();
        for _ in 0..n {
            for _ in 0..m {
                text.push_str(&format!("{},", rng.random::<f64>() * 4.0 - 2.0));
            }
            text.push_str(&format!("{}\n", rng.random::<f64>() * 2.0 - 1.0));
        }
        parse_csv(&text, TaskKind::Regression).unwrap()
    }

    #[test]
    fn alpha_one_equals_pearson_ranking() {
        let cfg = SelectorConfig::default();
        for seed in 0..20 {
            let data = random_regression(seed, 6, 40);
            let qp = qpfs_with_alpha(&data, 3, 1.0, &cfg).unwrap();
            let pc = rank_pearson(&data, 3);
            assert_eq!(qp.selected, pc.selected, "seed {seed}");
        }
    }

    #[test]
    fn two_dimensional_closed_form() {
        // Q = I, f = (1, 0): the simplex minimizer pushes weight onto
        // feature 1; for alpha >= 1/2 it is the vertex (1, 0)
        let text = "1,0,0.5\n-1,0,-0.5\n0.5,0,0.25\n-0.5,0,-0.25\n0.25,0,0.125\n-0.25,0,-0.125\n";
        let data = parse_csv(text, TaskKind::Regression).unwrap();
        let cfg = SelectorConfig::default();
        let r = qpfs_with_alpha(&data, 1, 0.7, &cfg).unwrap();
        assert_eq!(r.selected.indices(), &[1]);
        let w1 = r.scores[0];
        let expected = (0.5_f64 + 0.7 / (2.0 * 0.3)).min(1.0);
        assert!((w1 - expected).abs() < 1e-6, "w1 = {w1}, expected {expected}");
        // simplex feasibility is exact
        let total: f64 = r.scores.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(r.scores.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn objective_non_increasing() {
        let data = random_regression(3, 8, 60);
        let problem = QpfsProblem::from_dataset(&data);
        let alpha = problem.alpha;
        let frob = problem.q.iter().map(|v| v * v).sum::<f64>().sqrt();
        let step = 1.0 / ((1.0 - alpha) * frob);
        let mut w = Array1::<f64>::from_elem(8, 1.0 / 8.0);
        let mut prev = problem.objective(&w);
        for _ in 0..500 {
            let grad = &problem.q.dot(&w) * (1.0 - alpha) - &(&problem.f * alpha);
            let proposal = &w - &(&grad * step);
            w = project_simplex(&proposal.view(), 1.0);
            let obj = problem.objective(&w);
            assert!(obj <= prev + 1e-12);
            prev = obj;
        }
    }
}
