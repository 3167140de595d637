//! Euclidean projections: onto the positive orthant of the l1-ball and onto
//! the probability-simplex-style set `{u >= 0, 1^T u = r}` by the
//! sort-and-threshold rule.

use ndarray::{Array1, ArrayView1};

use crate::error::{Error, Result};

/// `argmin { ||u - v||_2 : u >= 0, 1^T u <= r }`. Negative coordinates are
/// clipped first; if the clipped point is inside the ball it is returned
/// unchanged, otherwise it is projected onto the simplex of radius `r`.
pub fn project_l1_positive(v: &ArrayView1<f64>, r: f64) -> Result<Array1<f64>> {
    if !(r > 0.0) {
        return Err(Error::invalid_input("projection radius must be positive"));
    }
    let clipped = v.mapv(|x| x.max(0.0));
    if clipped.sum() <= r {
        Ok(clipped)
    } else {
        Ok(project_simplex(&clipped.view(), r))
    }
}

/// Projection onto `{u >= 0, 1^T u = r}`: sort descending, find the largest
/// prefix whose running mean excess stays below its smallest member, subtract
/// the resulting threshold, clip at zero.
pub fn project_simplex(v: &ArrayView1<f64>, r: f64) -> Array1<f64> {
    debug_assert!(r > 0.0);
    let mut sorted: Vec<f64> = v.iter().copied().collect();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (idx, &mu) in sorted.iter().enumerate() {
        cumsum += mu;
        let candidate = (cumsum - r) / (idx + 1) as f64;
        if mu - candidate > 0.0 {
            theta = candidate;
        } else {
            break;
        }
    }
    v.mapv(|x| (x - theta).max(0.0))
}
