//! Property tests for the algebraic invariants of the building blocks.

use l1lsmi::data::{
    median_pairwise_distance, parse_csv, standardize, to_csv_string, Dataset, FeatureIndexSet,
    Target, TaskKind,
};
use l1lsmi::bench::f_measure;
use l1lsmi::measures::{discrete_mi, pearson};
use l1lsmi::sparse::project_l1_positive;
use ndarray::{Array1, Array2, Axis};
use proptest::prelude::*;

fn finite_vec(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0..5.0f64, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_feasible_idempotent_and_order_preserving(
        v in finite_vec(1..12),
        r in 0.01..4.0f64,
    ) {
        let v = Array1::from(v);
        let u = project_l1_positive(&v.view(), r).unwrap();
        prop_assert!(u.iter().all(|&x| x >= 0.0));
        prop_assert!(u.sum() <= r + 1e-12);
        let again = project_l1_positive(&u.view(), r).unwrap();
        for (a, b) in u.iter().zip(again.iter()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        for i in 0..v.len() {
            for j in 0..v.len() {
                if v[i] >= v[j] {
                    prop_assert!(u[i] >= u[j] - 1e-12);
                }
            }
        }
    }

    #[test]
    fn standardize_is_idempotent(
        rows in prop::collection::vec(finite_vec(4..20), 1..6),
    ) {
        let n = rows[0].len();
        prop_assume!(rows.iter().all(|r| r.len() == n));
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let x = Array2::from_shape_vec((rows.len(), n), flat).unwrap();
        let data = Dataset::new(x, Target::Real(Array1::zeros(n))).unwrap();
        let (once, _) = standardize(&data);
        let (twice, _) = standardize(&once);
        for (a, b) in once.features().iter().zip(twice.features().iter()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn median_distance_is_permutation_and_translation_invariant(
        cols in prop::collection::vec(finite_vec(3..4), 2..12),
        shift in finite_vec(3..4),
    ) {
        let d = 3;
        let n = cols.len();
        let mut x = Array2::<f64>::zeros((d, n));
        for (i, col) in cols.iter().enumerate() {
            for j in 0..d {
                x[(j, i)] = col[j];
            }
        }
        let base = median_pairwise_distance(&x.view()).unwrap();
        let perm: Vec<usize> = (0..n).rev().collect();
        let xp = x.select(Axis(1), &perm);
        let permuted = median_pairwise_distance(&xp.view()).unwrap();
        prop_assert!((base - permuted).abs() < 1e-12);
        let mut xs = x.clone();
        for j in 0..d {
            for i in 0..n {
                xs[(j, i)] += shift[j];
            }
        }
        let shifted = median_pairwise_distance(&xs.view()).unwrap();
        prop_assert!((base - shifted).abs() < 1e-9);
    }

    #[test]
    fn pearson_is_symmetric_and_sign_equivariant(
        (x, y) in (3usize..30).prop_flat_map(|n| (finite_vec(n..n + 1), finite_vec(n..n + 1))),
        a in -3.0..3.0f64,
    ) {
        prop_assume!(a.abs() > 1e-3);
        let xv = Array1::from(x);
        let yv = Array1::from(y);
        let xy = pearson(&xv.view(), &yv.view());
        let yx = pearson(&yv.view(), &xv.view());
        prop_assert!((xy.rho - yx.rho).abs() < 1e-12);
        let scaled = xv.mapv(|v| a * v + 1.0);
        let s = pearson(&scaled.view(), &yv.view());
        if !xy.degenerate && !s.degenerate {
            prop_assert!((s.rho - a.signum() * xy.rho).abs() < 1e-9);
        }
    }

    #[test]
    fn discrete_mi_is_symmetric_and_nonnegative(
        (x, y) in (2usize..60).prop_flat_map(|n| (
            prop::collection::vec(0usize..4, n..n + 1),
            prop::collection::vec(0usize..4, n..n + 1),
        )),
    ) {
        let xy = discrete_mi(&x, &y);
        let yx = discrete_mi(&y, &x);
        prop_assert!(xy >= 0.0);
        prop_assert!((xy - yx).abs() < 1e-12);
    }

    #[test]
    fn f_measure_is_symmetric_for_nonempty_sets(
        a in prop::collection::btree_set(1usize..15, 1..8),
        b in prop::collection::btree_set(1usize..15, 1..8),
    ) {
        let sa = FeatureIndexSet::new(a.into_iter().collect(), 20).unwrap();
        let sb = FeatureIndexSet::new(b.into_iter().collect(), 20).unwrap();
        let ab = f_measure(&sa, &sb).unwrap();
        let ba = f_measure(&sb, &sa).unwrap();
        prop_assert!((ab - ba).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&ab));
    }

    #[test]
    fn csv_round_trips_exactly(
        rows in prop::collection::vec(finite_vec(3..6), 2..10),
        classification in any::<bool>(),
    ) {
        let width = rows[0].len();
        prop_assume!(rows.iter().all(|r| r.len() == width));
        let mut text = String::new();
        for row in &rows {
            let cells: Vec<String> = row[..width - 1].iter().map(|v| v.to_string()).collect();
            let target = if classification {
                ((row[width - 1].abs() * 10.0) as usize % 3).to_string()
            } else {
                row[width - 1].to_string()
            };
            text.push_str(&format!("{},{}\n", cells.join(","), target));
        }
        let task = if classification { TaskKind::Classification } else { TaskKind::Regression };
        let data = parse_csv(&text, task).unwrap();
        let rendered = to_csv_string(&data);
        let reloaded = parse_csv(&rendered, task).unwrap();
        prop_assert_eq!(data, reloaded);
    }
}
