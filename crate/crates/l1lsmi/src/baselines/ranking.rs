use crate::data::{Dataset, FeatureIndexSet};
use crate::measures::pearson_feature_score;
use crate::selector::SelectionResult;

/// Top-k features by absolute Pearson correlation with the target (maximum
/// over one-hot class indicators for classification). Ties go to the lower
/// index.
pub fn rank_pearson(data: &Dataset, k: usize) -> SelectionResult {
    let m = data.num_features();
    let scores: Vec<f64> = (0..m).map(|j| pearson_feature_score(data, j)).collect();
    let selected = top_k_by_score(&scores, k, m);
    SelectionResult::ranked(selected, scores)
}

/// Shared ranking rule: descending score, ascending index on ties.
pub(crate) fn top_k_by_score(scores: &[f64], k: usize, m: usize) -> FeatureIndexSet {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let picked: Vec<usize> = order.into_iter().take(k).map(|j| j + 1).collect();
    FeatureIndexSet::new(picked, m).expect("ranked indices are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Target, TaskKind};
    use ndarray::{array, Array2};

    #[test]
    fn perfect_feature_is_selected() {
        let y = array![1.0, -0.5, 2.0, 0.25];
        let mut x = Array2::zeros((4, 4));
        x.row_mut(0).assign(&array![0.3, 0.1, 0.2, 0.9]);
        x.row_mut(1).assign(&array![1.0, 1.2, 0.8, 1.1]);
        x.row_mut(2).assign(&y); // exact copy of the target
        x.row_mut(3).assign(&array![0.0, 1.0, 0.0, 1.0]);
        let data = Dataset::new(x, Target::Real(y)).unwrap();
        let r = rank_pearson(&data, 1);
        assert_eq!(r.selected.indices(), &[3]);
    }

    #[test]
    fn tie_break_prefers_lower_index() {
        let y = array![1.0, 2.0, 3.0, 4.0];
        let mut x = Array2::zeros((3, 4));
        x.row_mut(0).assign(&array![5.0, 5.0, 5.0, 5.0]); // degenerate
        x.row_mut(1).assign(&y);
        x.row_mut(2).assign(&y); // identical twin
        let data = Dataset::new(x, Target::Real(y)).unwrap();
        let r = rank_pearson(&data, 1);
        assert_eq!(r.selected.indices(), &[2]);
    }

    #[test]
    fn permutation_equivariant() {
        let text = "0.1,0.9,0.3,1\n0.4,0.1,0.6,0\n0.9,0.5,0.2,1\n0.2,0.8,0.7,0\n0.6,0.3,0.1,1\n";
        let data = crate::data::parse_csv(text, TaskKind::Classification).unwrap();
        let r = rank_pearson(&data, 2);
        // permute features (reverse rows) and compare
        let perm: Vec<usize> = (0..3).rev().collect();
        let xp = data.features().select(ndarray::Axis(0), &perm);
        let dp = Dataset::new(xp, data.target().clone()).unwrap();
        let rp = rank_pearson(&dp, 2);
        let remapped: Vec<usize> = rp.selected.iter().map(|i| 3 - i + 1).collect();
        let mut remapped_sorted = remapped;
        remapped_sorted.sort_unstable();
        assert_eq!(remapped_sorted, r.selected.indices());
    }
}
