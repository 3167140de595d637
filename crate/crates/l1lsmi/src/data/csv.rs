//! Numeric CSV ingestion and export. Samples are rows, the target is the last
//! column, and a header row is auto-detected by its first line failing to
//! parse as numbers. Quoting is not supported; this is a matrix format, not a
//! general CSV dialect.

use std::path::Path;

use ndarray::{Array1, Array2};

use super::{Dataset, Target, TaskKind};
use crate::error::{Error, Result};

/// Loads `path` into a Dataset, transposing to the feature-major layout.
/// Classification targets are remapped to contiguous `1..=C` in order of
/// first appearance.
pub fn load_csv(path: impl AsRef<Path>, task: TaskKind) -> Result<Dataset> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_csv(&text, task)
}

/// Parses CSV text directly (same rules as [`load_csv`]).
pub fn parse_csv(text: &str, task: TaskKind) -> Result<Dataset> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let cells: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            cells.iter().map(|c| c.parse::<f64>()).collect();
        match parsed {
            Ok(values) => {
                if rows.is_empty() {
                    width = values.len();
                } else if values.len() != width {
                    return Err(Error::CsvParse {
                        line: line_no,
                        message: format!("expected {width} cells, found {}", values.len()),
                    });
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::CsvParse {
                        line: line_no,
                        message: "non-finite value".into(),
                    });
                }
                rows.push(values);
            }
            Err(_) => {
                // Only the first line may be non-numeric (header).
                if idx == 0 {
                    continue;
                }
                let bad = cells
                    .iter()
                    .find(|c| c.parse::<f64>().is_err())
                    .copied()
                    .unwrap_or("");
                return Err(Error::CsvParse {
                    line: line_no,
                    message: format!("non-numeric cell {bad:?}"),
                });
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::CsvParse { line: 1, message: "no data rows".into() });
    }
    if width < 2 {
        return Err(Error::CsvParse {
            line: 1,
            message: "need at least one feature column and one target column".into(),
        });
    }

    let n = rows.len();
    let m = width - 1;
    let mut features = Array2::<f64>::zeros((m, n));
    for (i, row) in rows.iter().enumerate() {
        for j in 0..m {
            features[(j, i)] = row[j];
        }
    }
    let raw_target: Vec<f64> = rows.iter().map(|r| r[m]).collect();
    let target = match task {
        TaskKind::Regression => Target::Real(Array1::from(raw_target)),
        TaskKind::Classification => {
            let mut order: Vec<f64> = Vec::new();
            let mut labels = Vec::with_capacity(n);
            for &v in &raw_target {
                let pos = order.iter().position(|&u| u == v).unwrap_or_else(|| {
                    order.push(v);
                    order.len() - 1
                });
                labels.push(pos + 1);
            }
            Target::Class { labels, classes: order.len() }
        }
    };
    Dataset::new(features, target)
}

/// Writes a Dataset back out in the same sample-per-row layout (no header).
/// Floats are printed with the shortest round-trippable representation, so a
/// write/load cycle reproduces the dataset exactly.
pub fn write_csv(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path.as_ref(), to_csv_string(data))?;
    Ok(())
}

/// The CSV text [`write_csv`] would write.
pub fn to_csv_string(data: &Dataset) -> String {
    let mut out = String::new();
    render_csv(data, &mut out);
    out
}

pub(crate) fn render_csv(data: &Dataset, out: &mut String) {
    use std::fmt::Write;
    let x = data.features();
    for i in 0..data.num_samples() {
        for j in 0..data.num_features() {
            let _ = write!(out, "{},", x[(j, i)]);
        }
        match data.target() {
            Target::Real(y) => {
                let _ = writeln!(out, "{}", y[i]);
            }
            Target::Class { labels, .. } => {
                let _ = writeln!(out, "{}", labels[i]);
            }
        }
    }
}
