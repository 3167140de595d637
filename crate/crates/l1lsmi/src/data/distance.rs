use ndarray::ArrayView2;

use crate::error::{Error, Result};

/// Median of the `n(n-1)/2` pairwise Euclidean distances between the columns
/// of `points` (`d` rows by `n` columns). The even-count median is the mean of
/// the two central order statistics. Returns 0 when all points coincide; the
/// caller must guard against using that as a kernel width.
pub fn median_pairwise_distance(points: &ArrayView2<f64>) -> Result<f64> {
    let n = points.ncols();
    if n < 2 {
        return Err(Error::invalid_input(
            "median pairwise distance needs at least two points",
        ));
    }
    let mut dists = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        let a = points.column(i);
        for j in i + 1..n {
            let b = points.column(j);
            let d2: f64 = a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| (x - y) * (x - y))
                .sum();
            dists.push(d2.sqrt());
        }
    }
    dists.sort_unstable_by(f64::total_cmp);
    let k = dists.len();
    Ok(if k % 2 == 1 {
        dists[k / 2]
    } else {
        0.5 * (dists[k / 2 - 1] + dists[k / 2])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn one_dimensional_median() {
        let pts = array![[0.0, 1.0, 3.0]];
        // distances {1, 2, 3} -> median 2
        assert_eq!(median_pairwise_distance(&pts.view()).unwrap(), 2.0);
    }

    #[test]
    fn identical_points_give_zero() {
        let pts = array![[2.0, 2.0]];
        assert_eq!(median_pairwise_distance(&pts.view()).unwrap(), 0.0);
    }

    #[test]
    fn pythagorean_distance() {
        let pts = array![[0.0, 3.0], [0.0, 4.0]];
        assert_eq!(median_pairwise_distance(&pts.view()).unwrap(), 5.0);
    }

    #[test]
    fn single_point_errors() {
        let pts = array![[1.0]];
        assert!(median_pairwise_distance(&pts.view()).is_err());
    }
}
