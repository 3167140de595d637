use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::ChaCha8Rng;

use l1lsmi::bench::{
    emit_report, enumerate_andor_lsmi, render_markdown, run_benchmark, ReportFormat,
};
use l1lsmi::data::{
    generate_toy, load_csv, standardize, write_csv, FeatureIndexSet, Target, TaskKind, ToySpec,
};
use l1lsmi::measures::lsmi_cv_select;
use l1lsmi::rng::stream_rng;
use l1lsmi::{select, Config, Method};

#[derive(Parser)]
#[command(
    name = "l1lsmi",
    version,
    about = "Feature selection via l1-constrained squared-loss mutual information, with baselines and a benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TaskArg {
    /// Regression target.
    Reg,
    /// Classification target (labels remapped to 1..C).
    Class,
}

impl From<TaskArg> for TaskKind {
    fn from(t: TaskArg) -> TaskKind {
        match t {
            TaskArg::Reg => TaskKind::Regression,
            TaskArg::Class => TaskKind::Classification,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a toy dataset (and-or, quad, xor) and write it as CSV.
    Gen {
        /// Toy dataset name: and-or, quad, or xor.
        toy: String,
        #[arg(long, default_value_t = 400)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path (samples as rows, target last).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one selector on a CSV dataset and print the chosen features.
    Select {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum)]
        task: TaskArg,
        /// One of: l1lsmi l1hsic pc fhsic bhsic flsmi blsmi mrmr qpfs lasso relieff.
        #[arg(long)]
        method: String,
        #[arg(long)]
        k: usize,
        /// TOML config overriding estimator/optimizer defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the benchmark described by a config file and write reports.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Output directory for trials.csv, report.json, summary.md.
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a fixed feature subset with the cross-validated LSMI estimator.
    Lsmi {
        #[arg(long)]
        data: PathBuf,
        /// Comma-separated 1-based feature indices, e.g. 1,2,3.
        #[arg(long)]
        features: String,
        /// Target interpretation; inferred from the file when omitted.
        #[arg(long, value_enum)]
        task: Option<TaskArg>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Score all 35 four-feature subsets of the and-or candidates by LSMI.
    AndorTable {
        #[arg(long, default_value_t = 400)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn load_config(path: &Option<PathBuf>) -> anyhow::Result<Config> {
    match path {
        Some(p) => Config::from_toml_file(p).with_context(|| format!("loading {}", p.display())),
        None => Ok(Config::default()),
    }
}

/// Treat integer-valued targets with few distinct values as class labels.
fn infer_task(path: &PathBuf) -> anyhow::Result<TaskKind> {
    let as_reg = load_csv(path, TaskKind::Regression)?;
    let Target::Real(y) = as_reg.target() else { unreachable!() };
    let mut distinct: Vec<f64> = Vec::new();
    let mut integral = true;
    for &v in y.iter() {
        if v.fract() != 0.0 {
            integral = false;
            break;
        }
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    Ok(if integral && distinct.len() >= 2 && distinct.len() <= 20 {
        TaskKind::Classification
    } else {
        TaskKind::Regression
    })
}

fn run() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Gen { toy, n, seed, out } => {
            let spec = ToySpec { name: toy.parse()?, n, seed };
            let (data, truth) = generate_toy(&spec)?;
            write_csv(&data, &out)?;
            println!(
                "wrote {} ({} features x {} samples), true features {}",
                out.display(),
                data.num_features(),
                data.num_samples(),
                truth
            );
        }
        Command::Select { data, task, method, k, config, seed } => {
            let cfg = load_config(&config)?;
            let method: Method = method.parse()?;
            let dataset = load_csv(&data, task.into())?;
            let (dataset, _) = standardize(&dataset);
            let mut rng: ChaCha8Rng = stream_rng(seed, &format!("select/{method}"));
            let result = select(&dataset, k, method, &cfg.selector, &mut rng)?;
            let joined: Vec<String> = result.selected.iter().map(|i| i.to_string()).collect();
            println!("selected: {}", joined.join(","));
            let scores: Vec<String> = result.scores.iter().map(|s| format!("{s:.6}")).collect();
            println!("scores: {}", scores.join(" "));
            for flag in &result.diagnostics.flags {
                println!("note: {flag}");
            }
        }
        Command::Bench { config, out } => {
            let cfg = Config::from_toml_file(&config)
                .with_context(|| format!("loading {}", config.display()))?;
            let Some(bench_cfg) = cfg.bench else {
                bail!("config file has no [bench] section");
            };
            std::fs::create_dir_all(&out)?;
            let outcome = run_benchmark(&bench_cfg, &cfg.selector)?;
            emit_report(
                &outcome.reports,
                &outcome.aggregate,
                ReportFormat::Csv,
                out.join("trials.csv"),
            )?;
            emit_report(
                &outcome.reports,
                &outcome.aggregate,
                ReportFormat::Json,
                out.join("report.json"),
            )?;
            emit_report(
                &outcome.reports,
                &outcome.aggregate,
                ReportFormat::Markdown,
                out.join("summary.md"),
            )?;
            print!("{}", render_markdown(&outcome.aggregate));
            println!("reports written to {}", out.display());
        }
        Command::Lsmi { data, features, task, config, seed } => {
            let cfg = load_config(&config)?;
            let task_kind: TaskKind = match task {
                Some(t) => t.into(),
                None => {
                    let inferred = infer_task(&data)?;
                    println!(
                        "task: {} (inferred)",
                        match inferred {
                            TaskKind::Regression => "reg",
                            TaskKind::Classification => "class",
                        }
                    );
                    inferred
                }
            };
            let dataset = load_csv(&data, task_kind)?;
            let (dataset, _) = standardize(&dataset);
            let indices: Vec<usize> = features
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .context("features must be comma-separated 1-based indices")?;
            let subset = FeatureIndexSet::new(indices, dataset.num_features())?;
            let restricted = dataset.restrict(&subset);
            let mut rng = stream_rng(seed, "lsmi-subset");
            let est = lsmi_cv_select(
                &restricted.features(),
                restricted.target(),
                cfg.selector.basis_count,
                &cfg.selector.cv,
                &mut rng,
            )?;
            println!("subset: {subset}");
            println!("lsmi: {:.6}", est.value());
            println!(
                "sigma: {:.6} (median distance {:.6}), lambda: {}",
                est.model.sigma, est.sigma_med, est.model.lambda
            );
        }
        Command::AndorTable { n, seed, config } => {
            let cfg = load_config(&config)?;
            let rows = enumerate_andor_lsmi(n, seed, &cfg.selector)?;
            println!("{:<12} lsmi", "subset");
            for row in &rows {
                let joined: Vec<String> = row.subset.iter().map(|i| i.to_string()).collect();
                println!("{:<12} {:.3}", joined.join(","), row.value);
            }
        }
    }
    Ok(())
}
