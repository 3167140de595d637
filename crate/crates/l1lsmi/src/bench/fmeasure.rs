use crate::data::FeatureIndexSet;
use crate::error::{Error, Result};

/// `f = 2pr / (p + r)` with precision and recall taken against the known true
/// feature set; empty or disjoint selections score 0.
pub fn f_measure(selected: &FeatureIndexSet, truth: &FeatureIndexSet) -> Result<f64> {
    if truth.is_empty() {
        return Err(Error::invalid_input("true feature set must not be empty"));
    }
    if selected.is_empty() {
        return Ok(0.0);
    }
    let hits = selected.intersection_size(truth) as f64;
    if hits == 0.0 {
        return Ok(0.0);
    }
    let p = hits / selected.len() as f64;
    let r = hits / truth.len() as f64;
    Ok(2.0 * p * r / (p + r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> FeatureIndexSet {
        FeatureIndexSet::new(v.to_vec(), 10).unwrap()
    }

    #[test]
    fn perfect_selection_scores_one() {
        assert_eq!(f_measure(&set(&[1, 2]), &set(&[1, 2])).unwrap(), 1.0);
    }

    #[test]
    fn superset_scores_two_thirds() {
        let f = f_measure(&set(&[1, 2, 3, 4]), &set(&[1, 2])).unwrap();
        assert!((f - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_overlap_scores_quarter() {
        let f = f_measure(&set(&[8, 9, 10, 1]), &set(&[1, 2, 3, 4])).unwrap();
        assert!((f - 0.25).abs() < 1e-12);
    }

    #[test]
    fn empty_cases() {
        assert_eq!(f_measure(&FeatureIndexSet::empty(), &set(&[1])).unwrap(), 0.0);
        assert_eq!(f_measure(&set(&[5]), &set(&[1])).unwrap(), 0.0);
        assert!(f_measure(&set(&[1]), &FeatureIndexSet::empty()).is_err());
    }

    #[test]
    fn symmetric_when_both_nonempty() {
        let a = set(&[1, 2, 3]);
        let b = set(&[2, 3, 4, 5]);
        let ab = f_measure(&a, &b).unwrap();
        let ba = f_measure(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-15);
    }
}
