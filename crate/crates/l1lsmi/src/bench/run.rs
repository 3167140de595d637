//! Trial execution. Every trial derives its RNG streams from
//! `(master seed, method, dataset, trial)` alone, so results are independent
//! of scheduling, the parallelism degree, and of which other methods run.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;

use super::{f_measure, BenchConfig, BenchDataset, TrialReport};
use crate::clock::Stopwatch;
use crate::config::SelectorConfig;
use crate::data::{generate_toy, load_csv, standardize, Dataset, FeatureIndexSet, ToySpec};
use crate::error::Result;
use crate::rng::{stream_rng, stream_seed};
use crate::selector::{select, Method};

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateCell {
    pub method: Method,
    pub dataset: String,
    /// Mean F-measure over successful trials (None when truth is unknown).
    pub mean: Option<f64>,
    /// Population standard deviation over the same trials.
    pub std: Option<f64>,
    pub trials: usize,
    pub failures: usize,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub reports: Vec<TrialReport>,
    pub aggregate: Vec<AggregateCell>,
}

struct LoadedDataset {
    name: String,
    data: DatasetSource,
    k: usize,
}

enum DatasetSource {
    Toy(crate::data::ToyName),
    Fixed { data: Dataset, truth: Option<FeatureIndexSet> },
}

pub fn run_benchmark(cfg: &BenchConfig, selector_cfg: &SelectorConfig) -> Result<BenchOutcome> {
    cfg.validate()?;
    selector_cfg.validate()?;

    let mut datasets = Vec::with_capacity(cfg.datasets.len());
    for spec in &cfg.datasets {
        datasets.push(load_dataset(spec)?);
    }

    struct Job {
        method: Method,
        dataset_index: usize,
        trial: usize,
    }
    let mut jobs = Vec::new();
    for method in &cfg.methods {
        for (dataset_index, _) in datasets.iter().enumerate() {
            for trial in 0..cfg.trials {
                jobs.push(Job { method: *method, dataset_index, trial });
            }
        }
    }

    let run_one = |job: &Job| -> TrialReport {
        let ds = &datasets[job.dataset_index];
        let label = format!("{}/{}/{}", job.method, ds.name, job.trial);
        let data_seed = stream_seed(cfg.master_seed, &format!("{label}/data"));
        let mut selector_rng = stream_rng(cfg.master_seed, &format!("{label}/select"));

        let mut diagnostics = BTreeMap::new();
        let watch = Stopwatch::start();
        let outcome = (|| -> Result<(FeatureIndexSet, Option<f64>)> {
            let (data, truth) = materialize(ds, cfg.n_per_trial, data_seed)?;
            let (data, _) = standardize(&data);
            let result = select(&data, ds.k, job.method, selector_cfg, &mut selector_rng)?;
            let f = match &truth {
                Some(t) => Some(f_measure(&result.selected, t)?),
                None => None,
            };
            Ok((result.selected, f))
        })();
        let wall = if cfg.record_timings { watch.elapsed_secs() } else { 0.0 };

        match outcome {
            Ok((selected, f)) => TrialReport {
                method: job.method,
                dataset: ds.name.clone(),
                trial: job.trial,
                seed: data_seed,
                k: ds.k,
                selected,
                f_measure: f,
                wall_time_s: wall,
                diagnostics,
            },
            Err(e) => {
                diagnostics.insert("error".into(), e.to_string());
                TrialReport {
                    method: job.method,
                    dataset: ds.name.clone(),
                    trial: job.trial,
                    seed: data_seed,
                    k: ds.k,
                    selected: FeatureIndexSet::empty(),
                    f_measure: None,
                    wall_time_s: wall,
                    diagnostics,
                }
            }
        }
    };

    let reports = run_ordered(cfg.parallelism, &jobs, run_one);
    let aggregate = aggregate(&reports);
    Ok(BenchOutcome { reports, aggregate })
}

/// Runs `f` over all jobs with up to `degree` worker threads, returning
/// results in job order regardless of scheduling.
fn run_ordered<J: Sync, T: Send>(
    degree: usize,
    jobs: &[J],
    f: impl Fn(&J) -> T + Sync,
) -> Vec<T> {
    if degree <= 1 || jobs.len() <= 1 {
        return jobs.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..degree.min(jobs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let out = f(&jobs[i]);
                *slots[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every job ran"))
        .collect()
}

fn load_dataset(spec: &BenchDataset) -> Result<LoadedDataset> {
    match spec {
        BenchDataset::Toy { toy, k } => Ok(LoadedDataset {
            name: toy.to_string(),
            k: k.unwrap_or_else(|| toy.true_features().len()),
            data: DatasetSource::Toy(*toy),
        }),
        BenchDataset::Csv { csv, task, k } => {
            let data = load_csv(csv, *task)?;
            Ok(LoadedDataset {
                name: spec.name(),
                k: *k,
                data: DatasetSource::Fixed { data, truth: None },
            })
        }
    }
}

/// Produces the concrete dataset for one trial: toys are drawn fresh from the
/// trial seed; fixed datasets are subsampled to `n_per_trial` when larger.
fn materialize(
    ds: &LoadedDataset,
    n_per_trial: usize,
    seed: u64,
) -> Result<(Dataset, Option<FeatureIndexSet>)> {
    match &ds.data {
        DatasetSource::Toy(name) => {
            let (data, truth) = generate_toy(&ToySpec { name: *name, n: n_per_trial, seed })?;
            Ok((data, Some(truth)))
        }
        DatasetSource::Fixed { data, truth } => {
            let n = data.num_samples();
            if n_per_trial >= n {
                return Ok((data.clone(), truth.clone()));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            use rand::SeedableRng;
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            idx.truncate(n_per_trial);
            idx.sort_unstable();
            let x = data.features().select(ndarray::Axis(1), &idx);
            let target = match data.target() {
                crate::data::Target::Real(y) => {
                    crate::data::Target::Real(idx.iter().map(|&i| y[i]).collect())
                }
                crate::data::Target::Class { labels, classes } => crate::data::Target::Class {
                    labels: idx.iter().map(|&i| labels[i]).collect(),
                    classes: *classes,
                },
            };
            Ok((Dataset::new(x, target)?, truth.clone()))
        }
    }
}

fn aggregate(reports: &[TrialReport]) -> Vec<AggregateCell> {
    let mut order: Vec<(Method, String)> = Vec::new();
    for r in reports {
        let key = (r.method, r.dataset.clone());
        if !order.contains(&key) {
            order.push(key);
        }
    }
    order
        .into_iter()
        .map(|(method, dataset)| {
            let cell: Vec<&TrialReport> = reports
                .iter()
                .filter(|r| r.method == method && r.dataset == dataset)
                .collect();
            let failures = cell.iter().filter(|r| r.failed()).count();
            let values: Vec<f64> = cell
                .iter()
                .filter(|r| !r.failed())
                .filter_map(|r| r.f_measure)
                .collect();
            let (mean, std) = if values.is_empty() {
                (None, None)
            } else {
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                    / values.len() as f64;
                (Some(mean), Some(var.sqrt()))
            };
            AggregateCell { method, dataset, mean, std, trials: cell.len(), failures }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ToyName;

    fn tiny_cfg(parallelism: usize) -> (BenchConfig, SelectorConfig) {
        let bench = BenchConfig {
            methods: vec![Method::Pc, Method::Mrmr],
            datasets: vec![BenchDataset::Toy { toy: ToyName::Xor, k: None }],
            trials: 2,
            n_per_trial: 120,
            parallelism,
            master_seed: 7,
            record_timings: false,
        };
        (bench, SelectorConfig::default())
    }

    #[test]
    fn aggregate_mean_matches_trial_mean() {
        let (bench, sel) = tiny_cfg(1);
        let out = run_benchmark(&bench, &sel).unwrap();
        assert_eq!(out.reports.len(), 4);
        let pc: Vec<f64> = out
            .reports
            .iter()
            .filter(|r| r.method == Method::Pc)
            .map(|r| r.f_measure.unwrap())
            .collect();
        let expected = pc.iter().sum::<f64>() / pc.len() as f64;
        let cell = &out.aggregate[0];
        assert_eq!(cell.method, Method::Pc);
        assert!((cell.mean.unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn parallel_degree_does_not_change_results() {
        let (bench1, sel) = tiny_cfg(1);
        let (bench4, _) = tiny_cfg(4);
        let a = run_benchmark(&bench1, &sel).unwrap();
        let b = run_benchmark(&bench4, &sel).unwrap();
        assert_eq!(a.reports, b.reports);
    }

    #[test]
    fn adding_a_method_keeps_other_results() {
        let (mut bench, sel) = tiny_cfg(1);
        let base = run_benchmark(&bench, &sel).unwrap();
        bench.methods.push(Method::Relieff);
        let extended = run_benchmark(&bench, &sel).unwrap();
        for r in &base.reports {
            assert!(extended.reports.contains(r), "missing {r:?}");
        }
    }

    #[test]
    fn selector_errors_are_counted_not_dropped() {
        // relieff on a regression task fails per trial
        let bench = BenchConfig {
            methods: vec![Method::Relieff],
            datasets: vec![BenchDataset::Toy { toy: ToyName::Quad, k: None }],
            trials: 2,
            n_per_trial: 80,
            parallelism: 1,
            master_seed: 1,
            record_timings: false,
        };
        let out = run_benchmark(&bench, &SelectorConfig::default()).unwrap();
        assert_eq!(out.reports.len(), 2);
        assert!(out.reports.iter().all(|r| r.failed()));
        assert_eq!(out.aggregate[0].failures, 2);
        assert!(out.aggregate[0].mean.is_none());
    }
}
