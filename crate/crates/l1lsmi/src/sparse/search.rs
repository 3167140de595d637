//! Radius binary search for a k-feature subset.
//!
//! The radius starts at 0.1 and doubles until the solved support exceeds k
//! (returning immediately on an exact hit), then bisects the bracket. When
//! the budget runs out, all probed supports are ranked by closeness to k
//! (preferring smaller on ties) and then by subset measure value, and the
//! head of that list is returned with a fallback flag.

use rand_chacha::ChaCha8Rng;

use super::ascent::{ascend, random_feasible_weights};
use super::Measure;
use crate::clock::Stopwatch;
use crate::config::SelectorConfig;
use crate::data::{Dataset, FeatureIndexSet};
use crate::error::{Error, Result};
use crate::measures::{hsic, hsic_config_for, lsmi_cv_select};
use crate::selector::{RadiusProbe, SelectionDiagnostics, SelectionResult};

/// One solved radius with everything needed for the final ranking.
#[derive(Debug, Clone)]
pub struct SolvedRadius {
    pub radius: f64,
    pub support: FeatureIndexSet,
    /// Measure value of the support as a plain subset (not the weighted
    /// objective); used by the fallback ordering.
    pub subset_score: f64,
    pub weights: Vec<f64>,
    pub objective_trace: Vec<f64>,
}

pub struct SearchBudget {
    pub max_solves: usize,
    pub max_seconds: f64,
}

/// Runs the radius search with an arbitrary solver, which makes the control
/// flow testable with stub solvers.
pub fn search_with_solver<F>(
    k: usize,
    budget: &SearchBudget,
    mut solve: F,
) -> Result<(usize, Vec<SolvedRadius>, bool)>
where
    F: FnMut(f64) -> Result<SolvedRadius>,
{
    let watch = Stopwatch::start();
    let mut tried: Vec<SolvedRadius> = Vec::new();
    let exhausted = |tried: &Vec<SolvedRadius>, watch: &Stopwatch| {
        tried.len() >= budget.max_solves || watch.elapsed_secs() > budget.max_seconds
    };

    let mut radius = 0.1;
    loop {
        radius *= 2.0;
        let probe = solve(radius)?;
        let size = probe.support.len();
        tried.push(probe);
        if size == k {
            return Ok((tried.len() - 1, tried, false));
        }
        if size > k {
            break;
        }
        if exhausted(&tried, &watch) {
            return fallback(k, tried);
        }
    }

    let mut r_high = radius;
    let mut r_low = radius / 2.0;
    while !exhausted(&tried, &watch) {
        let r_mid = 0.5 * (r_high + r_low);
        let probe = solve(r_mid)?;
        let size = probe.support.len();
        tried.push(probe);
        if size == k {
            return Ok((tried.len() - 1, tried, false));
        }
        if size < k {
            r_low = r_mid;
        } else {
            r_high = r_mid;
        }
    }
    fallback(k, tried)
}

/// Ascending sort by (|size - k|, size - k, -score); stable, so earlier
/// probes win remaining ties.
fn fallback(k: usize, tried: Vec<SolvedRadius>) -> Result<(usize, Vec<SolvedRadius>, bool)> {
    if tried.iter().all(|p| p.support.is_empty()) {
        return Err(Error::NonConvergence(
            "no radius produced a nonempty support".into(),
        ));
    }
    let ik = k as i64;
    let mut order: Vec<usize> = (0..tried.len()).collect();
    order.sort_by(|&a, &b| {
        let key = |p: &SolvedRadius| {
            let size = p.support.len() as i64;
            ((size - ik).abs(), size - ik)
        };
        key(&tried[a])
            .cmp(&key(&tried[b]))
            .then_with(|| tried[b].subset_score.total_cmp(&tried[a].subset_score))
    });
    Ok((order[0], tried, true))
}

/// Measure value of a fixed subset, used to rank fallback candidates.
fn subset_score(
    data: &Dataset,
    subset: &FeatureIndexSet,
    measure: Measure,
    cfg: &SelectorConfig,
    rng: &mut ChaCha8Rng,
) -> f64 {
    if subset.is_empty() {
        return f64::NEG_INFINITY;
    }
    let restricted = data.restrict(subset);
    let value = match measure {
        Measure::Lsmi => lsmi_cv_select(
            &restricted.features(),
            restricted.target(),
            cfg.basis_count,
            &cfg.cv,
            rng,
        )
        .map(|est| est.value()),
        Measure::Hsic => hsic_config_for(&restricted.features(), restricted.target())
            .map(|hc| hsic(&restricted, &hc)),
    };
    value.unwrap_or(f64::NEG_INFINITY)
}

/// Selects `k` features by binary search over the l1 radius, solving the
/// weighted maximization with a fresh random feasible start at every probe.
pub fn search_k_features(
    data: &Dataset,
    k: usize,
    cfg: &SelectorConfig,
    measure: Measure,
    rng: &mut ChaCha8Rng,
) -> Result<SelectionResult> {
    let m = data.num_features();
    if k == 0 || k > m {
        return Err(Error::invalid_input(format!("k must be in 1..={m}, got {k}")));
    }
    cfg.validate()?;
    let budget =
        SearchBudget { max_solves: cfg.search_max_solves, max_seconds: cfg.search_max_seconds };
    let mut flags: Vec<String> = Vec::new();
    let solve = |radius: f64| -> Result<SolvedRadius> {
        let start = random_feasible_weights(m, radius, rng);
        let run = ascend(data, &start, cfg, measure, rng)?;
        let support = run.weights.support(cfg.ascent.nonzero_eps);
        let score = subset_score(data, &support, measure, cfg, rng);
        Ok(SolvedRadius {
            radius,
            support,
            subset_score: score,
            weights: run.weights.values().to_vec(),
            objective_trace: run.trace,
        })
    };
    let (chosen, tried, fallback_taken) = search_with_solver(k, &budget, solve)?;
    if fallback_taken {
        flags.push(format!(
            "no radius produced exactly {k} features within the budget; returning the closest candidate"
        ));
    }
    Ok(assemble_result(chosen, tried, fallback_taken, flags))
}

fn assemble_result(
    chosen: usize,
    tried: Vec<SolvedRadius>,
    fallback_taken: bool,
    flags: Vec<String>,
) -> SelectionResult {
    let radius_trace: Vec<RadiusProbe> = tried
        .iter()
        .map(|p| RadiusProbe {
            radius: p.radius,
            support: p.support.clone(),
            subset_score: p.subset_score,
        })
        .collect();
    let winner = &tried[chosen];
    SelectionResult {
        selected: winner.support.clone(),
        scores: winner.weights.clone(),
        diagnostics: SelectionDiagnostics {
            radius_trace,
            objective_trace: winner.objective_trace.clone(),
            flags,
            fallback: fallback_taken,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stub_probe(radius: f64, size: usize, score: f64) -> SolvedRadius {
        let support =
            FeatureIndexSet::new((1..=size).collect(), 64).expect("stub support fits");
        SolvedRadius {
            radius,
            support,
            subset_score: score,
            weights: vec![0.0; 64],
            objective_trace: vec![],
        }
    }

    fn budget(max_solves: usize) -> SearchBudget {
        SearchBudget { max_solves, max_seconds: f64::INFINITY }
    }

    #[test]
    fn doubling_returns_on_exact_hit() {
        // support size = floor(r), k = 3: radii 0.2, 0.4, 0.8, 1.6, 3.2 and
        // the last one hits exactly
        let (chosen, tried, fb) = search_with_solver(3, &budget(30), |r| {
            Ok(stub_probe(r, r as usize, 0.0))
        })
        .unwrap();
        let radii: Vec<f64> = tried.iter().map(|p| p.radius).collect();
        assert_eq!(radii, vec![0.2, 0.4, 0.8, 1.6, 3.2]);
        assert_eq!(tried[chosen].support.len(), 3);
        assert!((tried[chosen].radius - 3.2).abs() < 1e-12);
        assert!(!fb);
    }

    #[test]
    fn bisection_finds_k_between_brackets() {
        // same stub, k = 2: doubling overshoots at 3.2 (size 3), bracket
        // [1.6, 3.2], midpoint 2.4 gives size 2
        let (chosen, tried, fb) = search_with_solver(2, &budget(30), |r| {
            Ok(stub_probe(r, r as usize, 0.0))
        })
        .unwrap();
        let radii: Vec<f64> = tried.iter().map(|p| p.radius).collect();
        let expected = [0.2, 0.4, 0.8, 1.6, 3.2, 2.4];
        assert_eq!(radii.len(), expected.len());
        for (got, want) in radii.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "radius {got} vs {want}");
        }
        assert_eq!(tried[chosen].support.len(), 2);
        assert!((tried[chosen].radius - 2.4).abs() < 1e-12);
        assert!(!fb);
    }

    #[test]
    fn fallback_prefers_smaller_then_higher_score() {
        // solver only ever produces sizes 2 and 4 for k = 3; sizes tie on
        // distance, the smaller support must win, and among size-2 probes the
        // higher subset score wins
        let (chosen, tried, fb) = search_with_solver(3, &budget(6), |r| {
            if r < 1.0 {
                Ok(stub_probe(r, 2, r)) // score grows with r
            } else {
                Ok(stub_probe(r, 4, 10.0))
            }
        })
        .unwrap();
        assert!(fb);
        let winner = &tried[chosen];
        assert_eq!(winner.support.len(), 2);
        let best_size2 = tried
            .iter()
            .filter(|p| p.support.len() == 2)
            .map(|p| p.subset_score)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(winner.subset_score, best_size2);
    }

    #[test]
    fn all_empty_supports_is_an_error() {
        let out = search_with_solver(2, &budget(4), |r| Ok(stub_probe(r, 0, 0.0)));
        assert!(out.is_err());
    }

    #[test]
    fn exact_k_probe_always_wins_when_present() {
        // k = 5 with a solver that hits 5 somewhere in the middle
        let sizes = [1usize, 7, 5];
        let mut call = 0;
        let (chosen, tried, fb) = search_with_solver(5, &budget(30), move |r| {
            let s = sizes[call.min(sizes.len() - 1)];
            call += 1;
            Ok(stub_probe(r, s, 0.0))
        })
        .unwrap();
        assert!(!fb);
        assert_eq!(tried[chosen].support.len(), 5);
    }
}
