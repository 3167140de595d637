//! Product-kernel basis for the density-ratio model. Each basis function is
//! centered on a sample: Gaussian in the (weighted) inputs, and Gaussian or
//! delta in the output depending on the task, both sharing one width.

use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand_chacha::ChaCha8Rng;

use crate::data::Target;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    pub centers: Vec<usize>,
    pub sigma: f64,
}

/// Basis evaluations over all samples: `phi_x` and `phi_y` are `b x n`; the
/// full basis value is their elementwise product.
#[derive(Debug, Clone)]
pub struct BasisFeatures {
    pub phi_x: Array2<f64>,
    pub phi_y: Array2<f64>,
}

impl Basis {
    /// Draws `b` distinct center sample indices.
    pub fn choose_centers(n: usize, b: usize, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
        if b > n {
            return Err(Error::invalid_input(format!(
                "basis count {b} exceeds sample count {n}"
            )));
        }
        Ok(rand::seq::index::sample(rng, n, b).into_vec())
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Gaussian kernel values between every sample and every center, computed
    /// on the already-weighted inputs: `exp(-||x_i - x_c||^2 / (2 sigma^2))`.
    pub fn phi_x(&self, xw: &ArrayView2<f64>) -> Array2<f64> {
        let b = self.centers.len();
        let n = xw.ncols();
        let sq: Array1<f64> = xw
            .axis_iter(Axis(1))
            .map(|col| col.iter().map(|v| v * v).sum())
            .collect();
        let center_cols = xw.select(Axis(1), &self.centers);
        // ||a - c||^2 = ||a||^2 + ||c||^2 - 2 c.a, via one gemm
        let cross = center_cols.t().dot(xw);
        let denom = 2.0 * self.sigma * self.sigma;
        let mut out = Array2::<f64>::zeros((b, n));
        for (l, &c) in self.centers.iter().enumerate() {
            for i in 0..n {
                let d2 = (sq[c] + sq[i] - 2.0 * cross[(l, i)]).max(0.0);
                out[(l, i)] = (-d2 / denom).exp();
            }
        }
        out
    }

    /// Output-side values: delta kernel on class labels, Gaussian with the
    /// shared width on regression targets.
    pub fn phi_y(&self, target: &Target) -> Array2<f64> {
        let b = self.centers.len();
        let n = target.len();
        let mut out = Array2::<f64>::zeros((b, n));
        match target {
            Target::Class { labels, .. } => {
                for (l, &c) in self.centers.iter().enumerate() {
                    for i in 0..n {
                        out[(l, i)] = f64::from(labels[i] == labels[c]);
                    }
                }
            }
            Target::Real(y) => {
                let denom = 2.0 * self.sigma * self.sigma;
                for (l, &c) in self.centers.iter().enumerate() {
                    for i in 0..n {
                        let d = y[i] - y[c];
                        out[(l, i)] = (-d * d / denom).exp();
                    }
                }
            }
        }
        out
    }

    pub fn features(&self, xw: &ArrayView2<f64>, target: &Target) -> BasisFeatures {
        BasisFeatures { phi_x: self.phi_x(xw), phi_y: self.phi_y(target) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::SeedableRng;

    #[test]
    fn own_center_evaluates_to_one() {
        let x = array![[0.0, 1.0, 2.0], [1.0, -1.0, 0.5]];
        let basis = Basis { centers: vec![1], sigma: 0.8 };
        let phx = basis.phi_x(&x.view());
        assert!((phx[(0, 1)] - 1.0).abs() < 1e-12);
        let target = Target::Class { labels: vec![1, 2, 1], classes: 2 };
        let phy = basis.phi_y(&target);
        assert_eq!(phy[(0, 1)], 1.0);
        // mismatched label kills the product kernel
        assert_eq!(phy[(0, 0)], 0.0);
    }

    #[test]
    fn zero_weights_collapse_inputs() {
        let xw = array![[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
        let basis = Basis { centers: vec![0, 2], sigma: 1.0 };
        let phx = basis.phi_x(&xw.view());
        assert!(phx.iter().all(|&v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn centers_are_distinct_and_bounded() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let c = Basis::choose_centers(10, 10, &mut rng).unwrap();
        let mut sorted = c.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 10);
        assert!(Basis::choose_centers(5, 6, &mut rng).is_err());
    }
}
