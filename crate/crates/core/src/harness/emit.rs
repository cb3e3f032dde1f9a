//! Regenerated tables in markdown, CSV or JSON, with mismatches annotated inline.

use super::report::{CellReport, CellStatus, Report, ReportRow, Summary};
use crate::error::{Error, Result};
use crate::numeric::format_complex;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<TableFormat> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::Parse(format!("unknown table format '{}', expected md, csv or json", s))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Everything `emit_tables` writes, in the shape of the JSON output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSet {
    pub tables: Vec<Table>,
    pub summary: Summary,
}

/// Orders with parameter and arithmetic tables.
const ORDERS: [u32; 5] = [3, 4, 5, 6, 7];
/// Orders shown in the co-volume and simple-axis grids.
const GRID_ORDERS: [u32; 4] = [3, 4, 5, 6];

fn render(cell: Option<&CellReport>) -> String {
    let Some(c) = cell else { return "--".to_string() };
    let mut text = match &c.status {
        CellStatus::Match => c.computed.clone().or_else(|| c.expected.clone()).unwrap_or_default(),
        CellStatus::Mismatch { computed, expected } => format!("{} [MISMATCH: printed {}]", computed, expected),
        CellStatus::Skipped { .. } => {
            c.expected.clone().or_else(|| c.computed.clone()).unwrap_or_else(|| "--".to_string())
        }
    };
    if let Some(flag) = &c.flag {
        text.push_str(&format!(" [flag: {}]", flag));
    }
    text
}

fn rows_for(report: &Report, n: u32) -> impl Iterator<Item = &ReportRow> {
    report.rows.iter().filter(move |r| r.n == n)
}

fn parameter_table(report: &Report, n: u32) -> Table {
    Table {
        title: format!("Parameters and axial distances, order {}", n),
        columns: vec!["i".into(), "gamma".into(), "p".into(), "delta".into()],
        rows: rows_for(report, n)
            .map(|r| vec![r.i.to_string(), format_complex(r.gamma.0, r.gamma.1, 4), r.poly.clone(), render(r.cell("delta"))])
            .collect(),
    }
}

fn arithmetic_table(report: &Report, n: u32) -> Table {
    Table {
        title: format!("Arithmetic data and containing co-volume, order {}", n),
        columns: ["i", "q", "d", "Ram_f", "delta", "V"].iter().map(|s| s.to_string()).collect(),
        rows: rows_for(report, n)
            .map(|r| {
                vec![
                    r.i.to_string(),
                    render(r.cell("q")),
                    render(r.cell("disc")),
                    render(r.cell("ramf")),
                    render(r.cell("delta")),
                    render(r.cell("volume")),
                ]
            })
            .collect(),
    }
}

fn grid_table(report: &Report, title: &str, column: &str) -> Table {
    let max_i = report.rows.iter().filter(|r| GRID_ORDERS.contains(&r.n)).map(|r| r.i).max().unwrap_or(0);
    let mut columns = vec!["i".to_string()];
    columns.extend(GRID_ORDERS.iter().map(|n| format!("G_{{{},i}}", n)));
    let rows = (1..=max_i)
        .map(|i| {
            let mut row = vec![i.to_string()];
            row.extend(GRID_ORDERS.iter().map(|&n| match report.row(n, i) {
                Some(r) => render(r.cell(column)),
                None => String::new(),
            }));
            row
        })
        .collect();
    Table { title: title.to_string(), columns, rows }
}

/// The twelve regenerated tables in a fixed order.
pub fn build_tables(report: &Report) -> TableSet {
    let mut tables: Vec<Table> = ORDERS.iter().map(|&n| parameter_table(report, n)).collect();
    tables.extend(ORDERS.iter().map(|&n| arithmetic_table(report, n)));
    tables.push(grid_table(report, "Co-volumes of the two-generator groups", "covolume"));
    tables.push(grid_table(report, "Whether f has a simple axis", "simple"));
    TableSet { tables, summary: report.summary.clone() }
}

fn markdown(set: &TableSet) -> String {
    let mut out = String::new();
    for t in &set.tables {
        out.push_str(&format!("## {}\n\n", t.title));
        out.push_str(&format!("| {} |\n", t.columns.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(t.columns.len())));
        for r in &t.rows {
            let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out.push('\n');
    }
    let s = &set.summary;
    out.push_str(&format!(
        "rows: {}, matches: {}, mismatches: {} ({} unexpected), skipped: {}, flagged: {}\n",
        s.rows, s.matches, s.mismatches, s.unexpected_mismatches, s.skipped, s.flagged
    ));
    out
}

fn csv_text(set: &TableSet) -> Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invalid(e.to_string());
    for t in &set.tables {
        w.write_record([&t.title]).map_err(io)?;
        w.write_record(&t.columns).map_err(io)?;
        for r in &t.rows {
            w.write_record(r).map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

pub fn emit_tables(report: &Report, format: TableFormat) -> Result<String> {
    let set = build_tables(report);
    match format {
        TableFormat::Markdown => Ok(markdown(&set)),
        TableFormat::Csv => csv_text(&set),
        TableFormat::Json => serde_json::to_string_pretty(&set).map_err(|e| Error::Invalid(e.to_string())),
    }
}
