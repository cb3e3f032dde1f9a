//! The per-row pipeline and the diff of computed values against the catalog.

use super::catalog::{CatalogRow, Cell, RamCell};
use crate::certify::{certify_params, DiscretenessCertificate};
use crate::error::{Error, Result};
use crate::geometry::{axial_distance, classify_simple, simple_axis_search, SimpleVerdict, DEFAULT_MAX_SYLLABLES};
use crate::numeric::Cpx;
use crate::params::GroupParams;
use crate::quatalg::{order_disc_support, ramification_report, RamificationReport, SymbolForm};
use crate::volume::{cubic_covolume, quartic_covolume, zeta2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Absolute tolerance for axial distances.
pub const DELTA_TOLERANCE: f64 = 5e-4;
/// Relative tolerance for volumes.
pub const VOLUME_TOLERANCE: f64 = 0.01;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub precision: u32,
    pub max_syllables: usize,
    pub prime_bound: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { precision: 128, max_syllables: DEFAULT_MAX_SYLLABLES, prime_bound: 100_000 }
    }
}

/// What kind of group a row's parameters give.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Kleinian,
    /// Real gamma outside `[beta, 0]`.
    Fuchsian,
    /// Real gamma inside `(beta, 0)`: a finite spherical group.
    Finite,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellStatus {
    Match,
    Mismatch { computed: String, expected: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellReport {
    pub column: &'static str,
    pub computed: Option<String>,
    pub expected: Option<String>,
    #[serde(flatten)]
    pub status: CellStatus,
    /// Known disagreement in the printed values, carried from the catalog.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    /// Whether a mismatch here is anticipated by the catalog.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub expected_mismatch: bool,
}

impl CellReport {
    fn new(column: &'static str, computed: Option<String>, expected: Option<String>, status: CellStatus) -> Self {
        CellReport { column, computed, expected, status, flag: None, expected_mismatch: false }
    }

    fn skipped(column: &'static str, computed: Option<String>, expected: Option<String>, reason: &str) -> Self {
        CellReport::new(column, computed, expected, CellStatus::Skipped { reason: reason.to_string() })
    }

    fn compared(column: &'static str, computed: String, expected: String, ok: bool) -> Self {
        let status = if ok {
            CellStatus::Match
        } else {
            CellStatus::Mismatch { computed: computed.clone(), expected: expected.clone() }
        };
        CellReport::new(column, Some(computed), Some(expected), status)
    }

    pub fn is_unexpected_mismatch(&self) -> bool {
        matches!(self.status, CellStatus::Mismatch { .. }) && !self.expected_mismatch
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub n: u32,
    pub i: u32,
    pub kind: RowKind,
    pub gamma: (f64, f64),
    /// The defining polynomial as listed in the catalog.
    pub poly: String,
    pub min_poly: String,
    pub discreteness: Option<DiscretenessCertificate>,
    pub delta: f64,
    pub field_discriminant: Option<String>,
    pub ramification: Option<RamificationReport>,
    pub order_disc_support: Option<Vec<u64>>,
    pub volume: Option<f64>,
    pub simple: Option<SimpleVerdict>,
    pub cells: Vec<CellReport>,
}

impl ReportRow {
    pub fn cell(&self, column: &str) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.column == column)
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Number(x) => format!("{}", x),
        Cell::Label(s) => s.clone(),
    }
}

fn ram_text(v: &[u64]) -> String {
    if v.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", v.iter().map(|x| format!("P{}", x)).collect::<Vec<_>>().join(", "))
    }
}

fn ram_cell_text(c: &RamCell) -> String {
    match c {
        RamCell::Norms(v) => ram_text(v),
        RamCell::Label(s) => s.clone(),
    }
}

fn kind_reason(kind: RowKind) -> Option<&'static str> {
    match kind {
        RowKind::Kleinian => None,
        RowKind::Fuchsian => Some("Fuchsian"),
        RowKind::Finite => Some("finite group"),
    }
}

/// Container co-volume when the order discriminant is exactly the ramification and a
/// formula exists for the field degree.
fn container_volume(
    deg: usize,
    disc: &rug::Integer,
    report: &RamificationReport,
    support: Option<&Vec<u64>>,
    field: &crate::numfield::NumberField,
    prime_bound: u64,
    prec: u32,
) -> std::result::Result<f64, String> {
    if deg > 4 {
        return Err("degree > 4".into());
    }
    let Some(ram) = report.finite_status.norms() else {
        return Err("finite ramification undetermined".into());
    };
    let Some(support) = support else {
        return Err("order discriminant support undetermined".into());
    };
    let mut ram_sorted = ram.clone();
    ram_sorted.sort_unstable_by(|a, b| b.cmp(a));
    if *support != ram_sorted {
        return Err("order discriminant differs from the ramified primes".into());
    }
    let z = zeta2(field, prime_bound, prec).map_err(|e| e.to_string())?;
    let v = match (deg, ram.len()) {
        (4, 0) => quartic_covolume(disc, &z.value),
        (3, 1) => cubic_covolume(disc, &z.value, ram[0]),
        _ => return Err(format!("no formula for degree {} with {} ramified primes", deg, ram.len())),
    };
    v.map(|x| x.to_f64()).map_err(|e| e.to_string())
}

fn annotate(mut cell: CellReport, row: &CatalogRow) -> CellReport {
    let Some(a) = row.annotation(cell.column) else { return cell };
    if a.kind != "expected_mismatch" {
        return cell;
    }
    cell.flag = Some(a.note.clone());
    cell.expected_mismatch = true;
    if let (Some(alts), Some(c)) = (&a.alternatives, cell.computed.as_ref().and_then(|c| c.parse::<f64>().ok())) {
        if alts.iter().any(|x| (c - x).abs() <= VOLUME_TOLERANCE * x.abs()) {
            cell.status = CellStatus::Match;
        }
    }
    cell
}

/// Runs every computation for one catalog row and compares with its expected cells.
pub fn run_row(row: &CatalogRow, opts: &RunOptions) -> Result<ReportRow> {
    let id = row.id();
    let wrap = |e: Error| Error::Invalid(format!("row {}: {}", id, e));
    let prec = opts.precision;
    let gp = GroupParams::new(row.n, row.gamma_poly().map_err(wrap)?, row.gamma_approx, prec).map_err(wrap)?;
    let gamma = gp.gamma();
    let beta = Cpx::real(gp.beta().clone());
    let kind = if !gp.gamma_is_real() {
        RowKind::Kleinian
    } else if gamma.re < 0 && gamma.re > beta.re {
        RowKind::Finite
    } else {
        RowKind::Fuchsian
    };
    let mut cells = Vec::new();
    let ex = &row.expected;

    let discreteness = certify_params(&gp);
    cells.push(match &discreteness {
        Ok(c) if c.passed() => CellReport::new("discrete", Some("pass".into()), None, CellStatus::Match),
        Ok(_) => CellReport::new(
            "discrete",
            Some("inconclusive".into()),
            None,
            CellStatus::Mismatch { computed: "inconclusive".into(), expected: "pass".into() },
        ),
        Err(e) => CellReport::new(
            "discrete",
            Some(e.to_string()),
            None,
            CellStatus::Mismatch { computed: e.to_string(), expected: "pass".into() },
        ),
    });

    let delta = axial_distance(&gamma, &beta, &Cpx::from_f64(-4.0, 0.0, prec)).map_err(wrap)?.to_f64();
    cells.push(match ex.delta {
        Some(e) => CellReport::compared("delta", format!("{:.4}", delta), format!("{}", e), (delta - e).abs() < DELTA_TOLERANCE),
        None => CellReport::skipped("delta", Some(format!("{:.4}", delta)), None, "not printed"),
    });

    let min_poly = gp.min_poly.to_string();
    cells.push(match &ex.q {
        Some(q) => CellReport::compared("q", min_poly.clone(), q.to_string(), *q == gp.min_poly),
        None => CellReport::skipped("q", Some(min_poly.clone()), None, "not printed"),
    });

    let tf = gp.trace_field().map_err(wrap)?;
    let deg = tf.field.degree();
    let disc = tf.field.discriminant();
    let disc_text = disc.as_ref().ok().map(|d| d.value.to_string());
    let skip_reason = kind_reason(kind);
    cells.push(match (&ex.disc, skip_reason, &disc) {
        (e, Some(r), _) => CellReport::skipped("disc", disc_text.clone(), e.as_ref().map(cell_text), r),
        (None, None, _) => CellReport::skipped("disc", disc_text.clone(), None, "not printed"),
        (Some(e), None, Err(err)) => CellReport::skipped("disc", None, Some(cell_text(e)), &err.to_string()),
        (Some(e), None, Ok(d)) => {
            let ok = e.number().map(|x| d.value == x as i64).unwrap_or(false);
            CellReport::compared("disc", d.value.to_string(), cell_text(e), ok)
        }
    });

    let report = ramification_report(row.n, &tf, SymbolForm::TraceSquares);
    let ram = report.as_ref().ok().and_then(|r| r.finite_status.norms());
    cells.push(match (&ex.ramf, skip_reason, &report, &ram) {
        (e, Some(r), _, _) => CellReport::skipped("ramf", None, e.as_ref().map(ram_cell_text), r),
        (None, None, _, _) => CellReport::skipped("ramf", ram.as_deref().map(ram_text), None, "not printed"),
        (Some(e), None, Err(err), _) => CellReport::skipped("ramf", None, Some(ram_cell_text(e)), &err.to_string()),
        (Some(e), None, Ok(_), None) => CellReport::skipped("ramf", None, Some(ram_cell_text(e)), "undetermined"),
        (Some(e), None, Ok(_), Some(got)) => {
            let ok = match e {
                RamCell::Norms(v) => {
                    let mut a = v.clone();
                    let mut b = got.clone();
                    a.sort_unstable();
                    b.sort_unstable();
                    a == b
                }
                RamCell::Label(_) => false,
            };
            CellReport::compared("ramf", ram_text(got), ram_cell_text(e), ok)
        }
    });

    let support = order_disc_support(row.n, &tf.gamma, &tf.beta).ok().flatten();
    let volume = match (skip_reason, &disc, &report) {
        (Some(r), _, _) => Err(r.to_string()),
        (None, Err(e), _) | (None, _, Err(e)) => Err(e.to_string()),
        (None, Ok(d), Ok(r)) => {
            container_volume(deg, &d.value, r, support.as_ref(), &tf.field, opts.prime_bound, prec)
        }
    };
    let vol_text = volume.as_ref().ok().map(|v| format!("{:.4}", v));
    cells.push(match (&ex.volume, &volume) {
        (e, Err(reason)) => CellReport::skipped("volume", None, e.as_ref().map(cell_text), reason),
        (None, Ok(_)) => CellReport::skipped("volume", vol_text.clone(), None, "not printed"),
        (Some(e), Ok(v)) => match e.number() {
            Some(x) => {
                let c = CellReport::compared("volume", format!("{:.4}", v), cell_text(e), (v - x).abs() <= VOLUME_TOLERANCE * x);
                annotate(c, row)
            }
            None => CellReport::compared("volume", format!("{:.4}", v), cell_text(e), false),
        },
    });

    cells.push(CellReport::skipped(
        "covolume",
        None,
        ex.covolume.as_ref().map(cell_text),
        "computed by an external fundamental-domain program",
    ));

    let simple = match &report {
        Ok(r) => simple_axis_search(&gp, opts.max_syllables).and_then(|s| classify_simple(row.n, &tf, r, &s)),
        Err(e) => Err(Error::Invalid(e.to_string())),
    };
    cells.push(match (&ex.simple, skip_reason, &simple) {
        (e, Some(r), _) => CellReport::skipped("simple", None, e.as_ref().map(cell_text), r),
        (None, None, s) => CellReport::skipped("simple", s.as_ref().ok().map(|v| v.label().to_string()), None, "not printed"),
        (Some(e), None, Err(err)) => CellReport::skipped("simple", None, Some(cell_text(e)), &err.to_string()),
        (Some(e), None, Ok(SimpleVerdict::Unknown { reason })) => {
            CellReport::skipped("simple", Some("?".into()), Some(cell_text(e)), reason)
        }
        (Some(e), None, Ok(v)) => {
            let exp = cell_text(e);
            CellReport::compared("simple", v.label().to_string(), exp.clone(), exp == v.label())
        }
    });

    let cells = cells.into_iter().map(|c| annotate_flag_only(c, row)).collect();
    Ok(ReportRow {
        id,
        n: row.n,
        i: row.i,
        kind,
        gamma: gamma.to_f64(),
        poly: gp.poly.to_string(),
        min_poly,
        discreteness: discreteness.ok(),
        delta,
        field_discriminant: disc_text,
        ramification: report.ok(),
        order_disc_support: support,
        volume: volume.ok(),
        simple: simple.ok(),
        cells,
    })
}

/// Attaches catalog notes of kind `expected_mismatch` to cells not already annotated.
fn annotate_flag_only(cell: CellReport, row: &CatalogRow) -> CellReport {
    if cell.flag.is_some() {
        return cell;
    }
    match row.annotation(cell.column) {
        Some(a) if a.kind == "expected_mismatch" => {
            let mut c = cell;
            c.flag = Some(a.note.clone());
            c.expected_mismatch = true;
            c
        }
        _ => cell,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub unexpected_mismatches: usize,
    pub skipped: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl Report {
    pub fn new(mut rows: Vec<ReportRow>) -> Report {
        rows.sort_by_key(|r| (r.n, r.i));
        let mut s = Summary { rows: rows.len(), ..Summary::default() };
        for c in rows.iter().flat_map(|r| &r.cells) {
            match c.status {
                CellStatus::Match => s.matches += 1,
                CellStatus::Mismatch { .. } => s.mismatches += 1,
                CellStatus::Skipped { .. } => s.skipped += 1,
            }
            if c.is_unexpected_mismatch() {
                s.unexpected_mismatches += 1;
            }
            if c.flag.is_some() {
                s.flagged += 1;
            }
        }
        Report { rows, summary: s }
    }

    pub fn row(&self, n: u32, i: u32) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.n == n && r.i == i)
    }

    /// Process exit code: 0 when no mismatch is unexpected.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.unexpected_mismatches > 0)
    }
}

/// Runs all rows in parallel and assembles the report in `(n, i)` order.
pub fn run_catalog(rows: &[CatalogRow], opts: &RunOptions) -> Result<Report> {
    let out: Result<Vec<ReportRow>> = rows.par_iter().map(|r| run_row(r, opts)).collect();
    Ok(Report::new(out?))
}
