//! Browser bindings for the interactive demo page. Each export runs one
//! self-contained computation on a seeded toy dataset and returns its result
//! as a JSON string for the page's canvas renderers.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::wasm_bindgen;

use l1lsmi::config::SelectorConfig;
use l1lsmi::data::{generate_toy, standardize, Target, ToySpec};
use l1lsmi::bench::enumerate_andor_lsmi;
use l1lsmi::sparse::{ascend, random_feasible_weights, Measure};

fn parse_toy(name: &str) -> Result<l1lsmi::data::ToyName, String> {
    name.parse().map_err(|e: l1lsmi::Error| e.to_string())
}

fn demo_config() -> SelectorConfig {
    // trimmed for interactive latency; the CLI uses the full defaults
    let mut cfg = SelectorConfig::default();
    cfg.basis_count = 60;
    cfg.ascent.restarts = 6;
    cfg.ascent.max_iters = 40;
    cfg
}

/// Samples a toy dataset and returns two standardized feature columns plus
/// the target, for a scatter plot: `{"x": [...], "y": [...], "label": [...],
/// "truth": [...], "task": "class"|"reg"}`.
#[wasm_bindgen]
pub fn toy_scatter(
    name: &str,
    n: usize,
    seed: u64,
    feature_a: usize,
    feature_b: usize,
) -> Result<String, String> {
    let toy = parse_toy(name)?;
    let (data, truth) =
        generate_toy(&ToySpec { name: toy, n, seed }).map_err(|e| e.to_string())?;
    let (data, _) = standardize(&data);
    let m = data.num_features();
    if feature_a == 0 || feature_a > m || feature_b == 0 || feature_b > m {
        return Err(format!("feature axes must be in 1..={m}"));
    }
    let xs: Vec<f64> = data.features().row(feature_a - 1).to_vec();
    let ys: Vec<f64> = data.features().row(feature_b - 1).to_vec();
    let (labels, task): (Vec<f64>, &str) = match data.target() {
        Target::Class { labels, .. } => (labels.iter().map(|&l| l as f64).collect(), "class"),
        Target::Real(y) => (y.to_vec(), "reg"),
    };
    Ok(serde_json::json!({
        "x": xs,
        "y": ys,
        "label": labels,
        "truth": truth.indices(),
        "task": task,
    })
    .to_string())
}

/// Runs one multi-restart projected ascent at the given l1 radius and
/// returns the winning restart's weight path:
/// `{"weights": [[w1..wm], ...], "objective": [...], "support": [...],
///   "truth": [...]}`.
#[wasm_bindgen]
pub fn weight_paths(name: &str, n: usize, seed: u64, radius: f64) -> Result<String, String> {
    let toy = parse_toy(name)?;
    if !(radius > 0.0) {
        return Err("radius must be positive".into());
    }
    let (data, truth) =
        generate_toy(&ToySpec { name: toy, n, seed }).map_err(|e| e.to_string())?;
    let (data, _) = standardize(&data);
    let cfg = demo_config();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77);
    let start = random_feasible_weights(data.num_features(), radius, &mut rng);
    let run =
        ascend(&data, &start, &cfg, Measure::Lsmi, &mut rng).map_err(|e| e.to_string())?;
    let support = run.weights.support(cfg.ascent.nonzero_eps);
    Ok(serde_json::json!({
        "weights": run.weight_trace,
        "objective": run.trace,
        "support": support.indices(),
        "final_weights": run.weights.values().to_vec(),
        "truth": truth.indices(),
    })
    .to_string())
}

/// Scores all 35 four-feature subsets of the and-or candidates by LSMI:
/// `{"rows": [{"subset": [..], "value": v}, ...]}` sorted descending.
#[wasm_bindgen]
pub fn andor_table(n: usize, seed: u64) -> Result<String, String> {
    let cfg = demo_config();
    let rows = enumerate_andor_lsmi(n, seed, &cfg).map_err(|e| e.to_string())?;
    let rows_json: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "subset": r.subset.indices(),
                "value": r.value,
            })
        })
        .collect();
    Ok(serde_json::json!({ "rows": rows_json }).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scatter_json_has_expected_fields() {
        let out = toy_scatter("xor", 80, 3, 1, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["x"].as_array().unwrap().len(), 80);
        assert_eq!(v["task"], "class");
        assert_eq!(v["truth"].as_array().unwrap().len(), 2);
        assert!(toy_scatter("xor", 80, 3, 0, 2).is_err());
        assert!(toy_scatter("parity", 80, 3, 1, 2).is_err());
    }

    #[test]
    fn weight_paths_json_is_consistent() {
        let out = weight_paths("quad", 100, 5, 2.0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let weights = v["weights"].as_array().unwrap();
        let objective = v["objective"].as_array().unwrap();
        assert_eq!(weights.len(), objective.len());
        assert_eq!(weights[0].as_array().unwrap().len(), 10);
    }

    #[test]
    fn andor_rows_are_sorted() {
        let out = andor_table(100, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 35);
        let values: Vec<f64> = rows.iter().map(|r| r["value"].as_f64().unwrap()).collect();
        for pair in values.windows(2) {
            assert!(pair[0] >= pair[1]);
        }
    }
}
