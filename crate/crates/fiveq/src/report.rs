//! Report serialization: versioned JSON, flat CSV and plain text tables.

use std::fmt::Write;

use fiveq_core::experiments::{ExperimentReport, Table};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct DocumentRef<'a> {
    schema_version: u32,
    #[serde(flatten)]
    report: &'a ExperimentReport,
}

#[derive(Deserialize)]
struct Document {
    schema_version: u32,
    #[serde(flatten)]
    report: ExperimentReport,
}

pub fn to_json(report: &ExperimentReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&DocumentRef {
        schema_version: SCHEMA_VERSION,
        report,
    })?;
    s.push('\n');
    Ok(s)
}

/// Parse a report written by [`to_json`]; also returns its schema version.
pub fn from_json(text: &str) -> Result<(u32, ExperimentReport)> {
    let doc: Document = serde_json::from_str(text)?;
    Ok((doc.schema_version, doc.report))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    section: &'a str,
    name: &'a str,
    row: &'a str,
    column: &'a str,
    mean: f64,
    std: f64,
    expected: Option<f64>,
}

/// One line per quantity, table cell and flag.
pub fn to_csv(report: &ExperimentReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for q in &report.quantities {
        w.serialize(CsvRow {
            section: "quantity",
            name: &q.name,
            row: "",
            column: "",
            mean: q.mean,
            std: q.std,
            expected: q.expected,
        })?;
    }
    for t in &report.tables {
        for (r, row) in t.rows.iter().enumerate() {
            for (c, col) in t.columns.iter().enumerate() {
                let cell = t.cells[r][c];
                w.serialize(CsvRow {
                    section: "table",
                    name: &t.title,
                    row,
                    column: col,
                    mean: cell.value,
                    std: cell.std,
                    expected: None,
                })?;
            }
        }
    }
    for f in &report.flags {
        w.serialize(CsvRow {
            section: "flag",
            name: &f.name,
            row: "",
            column: "",
            mean: if f.value { 1.0 } else { 0.0 },
            std: 0.0,
            expected: None,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn pm(mean: f64, std: f64) -> String {
    format!("{mean:.3}±{std:.3}")
}

fn render_table(out: &mut String, t: &Table) {
    let corner = format!("{} \\ {}", t.row_header, t.column_header);
    let mut widths = vec![corner.chars().count()];
    let cells: Vec<Vec<String>> = t
        .cells
        .iter()
        .map(|row| row.iter().map(|e| pm(e.value, e.std)).collect())
        .collect();
    widths[0] = t.rows.iter().map(|r| r.chars().count()).fold(widths[0], usize::max);
    for (c, col) in t.columns.iter().enumerate() {
        let w = cells
            .iter()
            .map(|row| row[c].chars().count())
            .fold(col.len(), usize::max);
        widths.push(w);
    }
    writeln!(out, "{}", t.title).unwrap();
    let mut header = format!("{corner:<w$}", w = widths[0]);
    for (c, col) in t.columns.iter().enumerate() {
        write!(header, " | {col:^w$}", w = widths[c + 1]).unwrap();
    }
    writeln!(out, "{header}").unwrap();
    writeln!(out, "{}", "-".repeat(header.chars().count())).unwrap();
    for (r, row) in t.rows.iter().enumerate() {
        write!(out, "{row:<w$}", w = widths[0]).unwrap();
        for (c, cell) in cells[r].iter().enumerate() {
            write!(out, " | {cell:^w$}", w = widths[c + 1]).unwrap();
        }
        out.push('\n');
    }
}

/// Human-readable report. Outcome tables print as input × outcome grids;
/// Mermin reports add an LR / QM / measured row.
pub fn to_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let noise = &report.metadata.noise;
    writeln!(
        out,
        "{}: {} runs x {} shots, backend {}, noise p1={} p2={} p_read={}, seed {}",
        report.name,
        report.runs,
        report.shots,
        report.metadata.backend,
        noise.p1,
        noise.p2,
        noise.p_read,
        report.metadata.seed
    )
    .unwrap();
    out.push('\n');
    for t in &report.tables {
        render_table(&mut out, t);
        out.push('\n');
    }
    if let Some(n) = report.name.strip_prefix("mermin-") {
        let lr = report.quantity("LR bound").map(|q| q.mean);
        let m = report.quantity(&format!("<M{n}>"));
        if let (Some(lr), Some(m)) = (lr, m) {
            writeln!(out, "{:<9} | {:>3} | {:>7} | measured", "", "LR", "QM").unwrap();
            writeln!(
                out,
                "{:<9} | {:>3} | {:>7.4} | {}",
                format!("{n} qubits"),
                lr,
                m.expected.unwrap_or(f64::NAN),
                pm(m.mean, m.std)
            )
            .unwrap();
            out.push('\n');
        }
    }
    let width = report
        .quantities
        .iter()
        .map(|q| q.name.chars().count())
        .max()
        .unwrap_or(0);
    for q in &report.quantities {
        write!(out, "{:<width$}  {}", q.name, pm(q.mean, q.std)).unwrap();
        if let Some(e) = q.expected {
            write!(out, "  (ideal {e:.4})").unwrap();
        }
        out.push('\n');
    }
    for f in &report.flags {
        writeln!(out, "{}: {}", f.name, if f.value { "yes" } else { "no" }).unwrap();
    }
    out
}

pub fn render(report: &ExperimentReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Table => Ok(to_table(report)),
    }
}
