//! Catalog ingestion, the per-row pipeline and table emission.

pub mod catalog;

pub use catalog::{builtin_catalog, parse_catalog, Annotation, CatalogRow, Cell, Expected, RamCell};
pub mod report;

pub use report::{run_catalog, run_row, CellReport, CellStatus, Report, ReportRow, RowKind, RunOptions, Summary};
pub mod emit;

pub use emit::{build_tables, emit_tables, Table, TableFormat, TableSet};
