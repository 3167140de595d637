//! Greedy forward/backward subset search under a dependence measure.
//!
//! Every subset evaluation draws its randomness from an RNG keyed by the
//! subset itself (plus one base seed), so a subset's measure value does not
//! depend on when the greedy loop happens to evaluate it. That keeps forward
//! paths nested across k and makes traces exactly reproducible.

use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::SelectorConfig;
use crate::data::{Dataset, FeatureIndexSet};
use crate::error::Result;
use crate::measures::{hsic, hsic_config_for, lsmi_cv_select};
use crate::rng::subset_rng;
use crate::selector::{SelectionDiagnostics, SelectionResult};
use crate::sparse::Measure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequentialStep {
    pub step: usize,
    /// Feature added (forward) or removed (backward), 1-based.
    pub index: usize,
    /// Measure value of the subset after this step.
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SequentialTrace {
    pub steps: Vec<SequentialStep>,
}

/// Measure value of a fixed subset. HSIC uses widths from the median
/// heuristic of the subset itself; LSMI runs CV model selection.
pub fn evaluate_subset(
    data: &Dataset,
    subset: &FeatureIndexSet,
    measure: Measure,
    cfg: &SelectorConfig,
    base_seed: u64,
) -> Result<f64> {
    let restricted = data.restrict(subset);
    match measure {
        Measure::Hsic => {
            let hc = hsic_config_for(&restricted.features(), restricted.target())?;
            Ok(hsic(&restricted, &hc))
        }
        Measure::Lsmi => {
            let mut rng = subset_rng(base_seed, subset.indices());
            let est = lsmi_cv_select(
                &restricted.features(),
                restricted.target(),
                cfg.basis_count,
                &cfg.cv,
                &mut rng,
            )?;
            Ok(est.value())
        }
    }
}

/// Greedy add (from the empty set) or greedy remove (from the full set) until
/// the subset has `k` features; ties go to the lower candidate index.
pub fn sequential_search(
    data: &Dataset,
    k: usize,
    direction: Direction,
    measure: Measure,
    cfg: &SelectorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(SelectionResult, SequentialTrace)> {
    let m = data.num_features();
    let base_seed = rng.next_u64();
    let mut trace = SequentialTrace::default();
    let mut scores = vec![0.0_f64; m];

    let mut current: Vec<usize> = match direction {
        Direction::Forward => Vec::new(),
        Direction::Backward => (1..=m).collect(),
    };

    let mut step = 0;
    loop {
        let done = match direction {
            Direction::Forward => current.len() >= k,
            Direction::Backward => current.len() <= k,
        };
        if done {
            break;
        }
        step += 1;
        let candidates: Vec<usize> = match direction {
            Direction::Forward => (1..=m).filter(|i| !current.contains(i)).collect(),
            Direction::Backward => current.clone(),
        };
        let mut best: Option<(f64, usize)> = None;
        for &cand in &candidates {
            let mut subset = current.clone();
            match direction {
                Direction::Forward => subset.push(cand),
                Direction::Backward => subset.retain(|&i| i != cand),
            }
            let value = if subset.is_empty() {
                0.0
            } else {
                let set = FeatureIndexSet::new(subset, m)?;
                evaluate_subset(data, &set, measure, cfg, base_seed)?
            };
            let better = match best {
                None => true,
                // strictly greater: equal values keep the earlier (lower) index
                Some((bv, _)) => value > bv,
            };
            if better {
                best = Some((value, cand));
            }
        }
        let (value, chosen) = best.expect("at least one candidate per step");
        match direction {
            Direction::Forward => {
                current.push(chosen);
                scores[chosen - 1] = value;
            }
            Direction::Backward => {
                current.retain(|&i| i != chosen);
                scores[chosen - 1] = -(step as f64); // removal order, earlier = worse
            }
        }
        trace.steps.push(SequentialStep { step, index: chosen, value });
    }

    if direction == Direction::Backward {
        // features never removed rank highest
        for &i in &current {
            scores[i - 1] = 1.0;
        }
    }
    let selected = FeatureIndexSet::new(current, m)?;
    let result = SelectionResult {
        selected,
        scores,
        diagnostics: SelectionDiagnostics::default(),
    };
    Ok((result, trace))
}
