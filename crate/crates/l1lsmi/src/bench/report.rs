//! Report emission: per-trial CSV and JSON, and a markdown grid of
//! `mean (std)` aggregates with datasets as rows and methods as columns.

use std::collections::BTreeMap;
use std::path::Path;

use super::run::AggregateCell;
use super::TrialReport;
use crate::data::FeatureIndexSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::invalid_input(format!("unknown report format {other:?}"))),
        }
    }
}

pub fn emit_report(
    reports: &[TrialReport],
    aggregate: &[AggregateCell],
    format: ReportFormat,
    path: impl AsRef<Path>,
) -> Result<()> {
    if reports.is_empty() {
        return Err(Error::invalid_input("no reports to emit"));
    }
    let text = match format {
        ReportFormat::Csv => render_csv(reports),
        ReportFormat::Json => render_json(reports)?,
        ReportFormat::Markdown => render_markdown(aggregate),
    };
    std::fs::write(path.as_ref(), text)?;
    Ok(())
}

const CSV_HEADER: &str = "method,dataset,trial,seed,k,selected,f_measure,wall_time_s";

pub fn render_csv(reports: &[TrialReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let selected = r
            .selected
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let f = r.f_measure.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.method, r.dataset, r.trial, r.seed, r.k, selected, f, r.wall_time_s
        ));
    }
    out
}

pub fn render_json(reports: &[TrialReport]) -> Result<String> {
    serde_json::to_string_pretty(reports)
        .map_err(|e| Error::numerical(format!("json serialization failed: {e}")))
}

/// Parses a CSV produced by [`render_csv`]. Diagnostics are not part of the
/// CSV schema, so they come back empty.
pub fn parse_reports_csv(text: &str) -> Result<Vec<TrialReport>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => {
            return Err(Error::CsvParse {
                line: 1,
                message: format!("expected header {CSV_HEADER:?}"),
            })
        }
    }
    let mut reports = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::CsvParse {
                line: idx + 1,
                message: format!("expected 8 fields, found {}", fields.len()),
            });
        }
        let parse_err = |message: String| Error::CsvParse { line: idx + 1, message };
        let method = fields[0].parse().map_err(|_| parse_err(format!("bad method {:?}", fields[0])))?;
        let trial = fields[2].parse().map_err(|_| parse_err("bad trial".into()))?;
        let seed = fields[3].parse().map_err(|_| parse_err("bad seed".into()))?;
        let k = fields[4].parse().map_err(|_| parse_err("bad k".into()))?;
        let selected_indices: Vec<usize> = if fields[5].is_empty() {
            Vec::new()
        } else {
            fields[5]
                .split(';')
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_err("bad selected list".into()))?
        };
        let max_index = selected_indices.iter().copied().max().unwrap_or(0);
        let selected = FeatureIndexSet::new(selected_indices, max_index)?;
        let f_measure = if fields[6].is_empty() {
            None
        } else {
            Some(fields[6].parse().map_err(|_| parse_err("bad f_measure".into()))?)
        };
        let wall_time_s = fields[7].parse().map_err(|_| parse_err("bad wall_time".into()))?;
        reports.push(TrialReport {
            method,
            dataset: fields[1].to_string(),
            trial,
            seed,
            k,
            selected,
            f_measure,
            wall_time_s,
            diagnostics: BTreeMap::new(),
        });
    }
    Ok(reports)
}

/// Markdown grid: one row per dataset, one column per method, `mean (std)`
/// cells; failures are annotated.
pub fn render_markdown(aggregate: &[AggregateCell]) -> String {
    let mut methods: Vec<String> = Vec::new();
    let mut datasets: Vec<String> = Vec::new();
    for cell in aggregate {
        let m = cell.method.to_string();
        if !methods.contains(&m) {
            methods.push(m);
        }
        if !datasets.contains(&cell.dataset) {
            datasets.push(cell.dataset.clone());
        }
    }
    let mut out = String::from("| dataset |");
    for m in &methods {
        out.push_str(&format!(" {m} |"));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in &methods {
        out.push_str("---|");
    }
    out.push('\n');
    for d in &datasets {
        out.push_str(&format!("| {d} |"));
        for m in &methods {
            let cell = aggregate
                .iter()
                .find(|c| c.dataset == *d && c.method.to_string() == *m);
            let text = match cell {
                Some(c) => {
                    let mut s = match (c.mean, c.std) {
                        (Some(mean), Some(std)) => format!("{mean:.2} ({std:.2})"),
                        _ => "--".to_string(),
                    };
                    if c.failures > 0 {
                        s.push_str(&format!(" [{} failed]", c.failures));
                    }
                    s
                }
                None => String::new(),
            };
            out.push_str(&format!(" {text} |"));
        }
        out.push('\n');
    }
    out
}
