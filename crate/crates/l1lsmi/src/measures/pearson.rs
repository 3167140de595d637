use ndarray::ArrayView1;

use crate::data::{Dataset, Target};

/// Sample correlation with a flag for constant inputs, which are defined to
/// score 0 so that rankings place them last.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PearsonValue {
    pub rho: f64,
    pub degenerate: bool,
}

pub fn pearson(x: &ArrayView1<f64>, y: &ArrayView1<f64>) -> PearsonValue {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "pearson needs at least two samples");
    let n = x.len() as f64;
    let mx = x.sum() / n;
    let my = y.sum() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y.iter()) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return PearsonValue { rho: 0.0, degenerate: true };
    }
    let rho = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    PearsonValue { rho, degenerate: false }
}

/// Ranking score of feature `j` against the target: `|rho|` for regression;
/// for classification the maximum `|rho|` against the one-hot indicator of
/// each class.
pub fn pearson_feature_score(data: &Dataset, j: usize) -> f64 {
    let x = data.features().row(j).to_owned();
    match data.target() {
        Target::Real(y) => pearson(&x.view(), &y.view()).rho.abs(),
        Target::Class { labels, classes } => {
            let mut best = 0.0_f64;
            for c in 1..=*classes {
                let indicator: ndarray::Array1<f64> =
                    labels.iter().map(|&l| if l == c { 1.0 } else { 0.0 }).collect();
                let v = pearson(&x.view(), &indicator.view());
                if !v.degenerate {
                    best = best.max(v.rho.abs());
                }
            }
            best
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn exact_linear_is_one() {
        let x = array![1.0, 2.0, 3.0];
        let y = array![2.0, 4.0, 6.0];
        let v = pearson(&x.view(), &y.view());
        assert!((v.rho - 1.0).abs() < 1e-12);
        assert!(!v.degenerate);
    }

    #[test]
    fn hand_computed_value() {
        let x = array![1.0, 2.0, 3.0];
        let y = array![6.0, 4.0, 5.0];
        let v = pearson(&x.view(), &y.view());
        assert!((v.rho + 0.5).abs() < 1e-12);
    }

    #[test]
    fn constant_input_is_degenerate_zero() {
        let x = array![1.0, 2.0, 3.0];
        let y = array![7.0, 7.0, 7.0];
        let v = pearson(&x.view(), &y.view());
        assert_eq!(v.rho, 0.0);
        assert!(v.degenerate);
    }

    #[test]
    fn symmetric_and_affine_equivariant() {
        let x = array![0.3, -1.2, 2.0, 0.7];
        let y = array![1.0, 0.2, -0.4, 2.2];
        let a = pearson(&x.view(), &y.view()).rho;
        let b = pearson(&y.view(), &x.view()).rho;
        assert!((a - b).abs() < 1e-12);
        let scaled = x.mapv(|v| -3.0 * v + 1.0);
        let c = pearson(&scaled.view(), &y.view()).rho;
        assert!((c + a).abs() < 1e-12);
    }
}
