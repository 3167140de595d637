//! Small dense solves for the ridge systems (`b <= 100`), kept dependency-free
//! so the crate builds on any target.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};

/// Solve `A x = b` for symmetric positive-definite `A` via Cholesky, falling
/// back to partially pivoted Gaussian elimination when the factorization
/// breaks down (possible for nearly singular `A` despite the ridge term).
pub fn solve_spd(a: &ArrayView2<f64>, b: &ArrayView1<f64>) -> Result<Array1<f64>> {
    debug_assert_eq!(a.nrows(), a.ncols());
    debug_assert_eq!(a.nrows(), b.len());
    if let Some(x) = cholesky_solve(a, b) {
        return Ok(x);
    }
    pivoted_solve(a, b)
}

fn cholesky_solve(a: &ArrayView2<f64>, b: &ArrayView1<f64>) -> Option<Array1<f64>> {
    let n = a.nrows();
    // Lower-triangular factor, row-major in a flat buffer.
    let mut l = vec![0.0_f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > 0.0) || !s.is_finite() {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    // L y = b
    let mut y = b.to_owned();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= l[i * n + k] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    // L^T x = y
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k * n + i] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    if y.iter().all(|v| v.is_finite()) {
        Some(y)
    } else {
        None
    }
}

fn pivoted_solve(a: &ArrayView2<f64>, b: &ArrayView1<f64>) -> Result<Array1<f64>> {
    let n = a.nrows();
    let mut m = a.to_owned();
    let mut x = b.to_owned();
    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, m[(r, col)].abs()))
            .max_by(|u, v| u.1.total_cmp(&v.1))
            .unwrap();
        if !pivot.is_finite() || pivot < f64::EPSILON {
            return Err(Error::numerical(format!(
                "singular {n}x{n} system: pivot {pivot:.3e} at column {col}"
            )));
        }
        if pivot_row != col {
            for c in 0..n {
                m.swap((pivot_row, c), (col, c));
            }
            x.swap(pivot_row, col);
        }
        for r in col + 1..n {
            let factor = m[(r, col)] / m[(col, col)];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                m[(r, c)] -= factor * m[(col, c)];
            }
            x[r] -= factor * x[col];
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= m[(i, k)] * x[k];
        }
        x[i] = s / m[(i, i)];
    }
    if x.iter().all(|v| v.is_finite()) {
        Ok(x)
    } else {
        Err(Error::numerical(format!(
            "non-finite solution from pivoted solve of {n}x{n} system"
        )))
    }
}

/// `A + lambda I` without mutating `A`.
pub fn add_ridge(a: &ArrayView2<f64>, lambda: f64) -> Array2<f64> {
    let mut out = a.to_owned();
    for i in 0..out.nrows() {
        out[(i, i)] += lambda;
    }
    out
}
