//! Seeded toy-data generators: `and-or` (redundant copies of the target),
//! `quad` (non-linear regression), and `xor` (pure feature interaction).
//! Each is a pure function of `(name, n, seed)`; draws happen feature row by
//! feature row so the output is bit-identical across runs and platforms.

use std::str::FromStr;

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::{Deserialize, Serialize};

use super::{Dataset, FeatureIndexSet, Target};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ToyName {
    AndOr,
    Quad,
    Xor,
}

impl ToyName {
    pub const ALL: [ToyName; 3] = [ToyName::AndOr, ToyName::Quad, ToyName::Xor];

    /// Indices of the features the target actually depends on.
    pub fn true_features(self) -> Vec<usize> {
        match self {
            ToyName::AndOr => vec![1, 2, 3, 4],
            ToyName::Quad | ToyName::Xor => vec![1, 2],
        }
    }

    pub fn num_features(self) -> usize {
        10
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ToyName::AndOr => "and-or",
            ToyName::Quad => "quad",
            ToyName::Xor => "xor",
        }
    }
}

impl FromStr for ToyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "and-or" | "andor" => Ok(ToyName::AndOr),
            "quad" => Ok(ToyName::Quad),
            "xor" => Ok(ToyName::Xor),
            other => Err(Error::invalid_input(format!(
                "unknown toy dataset {other:?} (expected and-or, quad, or xor)"
            ))),
        }
    }
}

impl std::fmt::Display for ToyName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToySpec {
    pub name: ToyName,
    pub n: usize,
    pub seed: u64,
}

/// Generates the dataset along with its true feature set.
pub fn generate_toy(spec: &ToySpec) -> Result<(Dataset, FeatureIndexSet)> {
    if spec.n == 0 {
        return Err(Error::invalid_input("toy dataset needs n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let data = match spec.name {
        ToyName::AndOr => gen_and_or(spec.n, &mut rng)?,
        ToyName::Quad => gen_quad(spec.n, &mut rng)?,
        ToyName::Xor => gen_xor(spec.n, &mut rng)?,
    };
    let truth = FeatureIndexSet::new(spec.name.true_features(), data.num_features())?;
    Ok((data, truth))
}

/// Y = (X1 and X2) or (X3 and X4); X1..X7 ~ Bernoulli(0.5); X8..X10 copy Y
/// with a 0.2 chance of a bit flip.
fn gen_and_or(n: usize, rng: &mut ChaCha8Rng) -> Result<Dataset> {
    let mut x = Array2::<f64>::zeros((10, n));
    for j in 0..7 {
        for i in 0..n {
            x[(j, i)] = if rng.random_bool(0.5) { 1.0 } else { 0.0 };
        }
    }
    let y: Vec<usize> = (0..n)
        .map(|i| {
            let on = (x[(0, i)] > 0.5 && x[(1, i)] > 0.5) || (x[(2, i)] > 0.5 && x[(3, i)] > 0.5);
            usize::from(on)
        })
        .collect();
    for j in 7..10 {
        for i in 0..n {
            let flip = rng.random_bool(0.2);
            let bit = if flip { 1 - y[i] } else { y[i] };
            x[(j, i)] = bit as f64;
        }
    }
    let labels: Vec<usize> = y.iter().map(|&b| b + 1).collect();
    Dataset::new(x, Target::Class { labels, classes: 2 })
}

/// Y = (X1^2 + X2) / (0.5 + (X2 + 1.5)^2) + 0.1 eps; X1..X8, eps ~ N(0,1);
/// X9 = 0.5 X1 + U(-1,1); X10 = 0.5 X2 + U(-1,1).
fn gen_quad(n: usize, rng: &mut ChaCha8Rng) -> Result<Dataset> {
    let normal = Normal::new(0.0, 1.0).expect("valid normal");
    let uniform = Uniform::new(-1.0, 1.0).expect("valid uniform");
    let mut x = Array2::<f64>::zeros((10, n));
    for j in 0..8 {
        for i in 0..n {
            x[(j, i)] = normal.sample(rng);
        }
    }
    let eps: Vec<f64> = (0..n).map(|_| normal.sample(rng)).collect();
    let y: Array1<f64> = (0..n)
        .map(|i| {
            let x1 = x[(0, i)];
            let x2 = x[(1, i)];
            (x1 * x1 + x2) / (0.5 + (x2 + 1.5) * (x2 + 1.5)) + 0.1 * eps[i]
        })
        .collect();
    for i in 0..n {
        x[(8, i)] = 0.5 * x[(0, i)] + uniform.sample(rng);
    }
    for i in 0..n {
        x[(9, i)] = 0.5 * x[(1, i)] + uniform.sample(rng);
    }
    Dataset::new(x, Target::Real(y))
}

/// Y = xor(X1, X2); X1..X5 ~ Bernoulli(0.5); X6..X10 ~ Bernoulli(0.75).
fn gen_xor(n: usize, rng: &mut ChaCha8Rng) -> Result<Dataset> {
    let mut x = Array2::<f64>::zeros((10, n));
    for j in 0..5 {
        for i in 0..n {
            x[(j, i)] = if rng.random_bool(0.5) { 1.0 } else { 0.0 };
        }
    }
    for j in 5..10 {
        for i in 0..n {
            x[(j, i)] = if rng.random_bool(0.75) { 1.0 } else { 0.0 };
        }
    }
    let labels: Vec<usize> = (0..n)
        .map(|i| {
            let a = x[(0, i)] > 0.5;
            let b = x[(1, i)] > 0.5;
            usize::from(a != b) + 1
        })
        .collect();
    Dataset::new(x, Target::Class { labels, classes: 2 })
}
