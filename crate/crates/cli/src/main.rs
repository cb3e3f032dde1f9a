use clap::{Parser, Subcommand};
use kleinian_core::error::{Error, Result};
use kleinian_core::geometry::{classify_simple, explore_csv, simple_axis_search, Grid, WordMap, DEFAULT_MAX_SYLLABLES};
use kleinian_core::harness::{builtin_catalog, emit_tables, parse_catalog, run_catalog, CatalogRow, RunOptions, TableFormat};
use kleinian_core::numeric::Cpx;
use kleinian_core::numfield::NumberField;
use kleinian_core::params::GroupParams;
use kleinian_core::polyalg::IntPoly;
use kleinian_core::quatalg::{ramification_report, SymbolForm};
use kleinian_core::volume::{cubic_covolume, quartic_covolume, zeta2};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Discreteness, arithmetic data and simple-axis tests for two-generator Kleinian groups.
#[derive(Parser)]
#[command(name = "kleinian", version)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on parameter rows in catalog JSON and print the report.
    Check { params: PathBuf },
    /// Regenerate the tables with inline diffs against the printed values.
    Table {
        /// Catalog JSON; the built-in catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Search for a word certifying that f is not simple, then classify.
    SimpleAxis {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_SYLLABLES)]
        max_syllables: usize,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Estimate zeta_K(2) and the co-volume of the containing group.
    Volume {
        /// Defining polynomial, e.g. "z^4+6z^3+12z^2+9z+1" or "[1,9,12,6,1]".
        #[arg(long)]
        poly: String,
        /// Norm of the ramified prime, for cubic fields.
        #[arg(long)]
        np: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        prime_bound: u64,
    },
    /// Iterate a word map over a grid of starting parameters and print CSV.
    Explore {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// cubic or conjugation.
        #[arg(long, default_value = "cubic")]
        map: String,
        /// re_min:re_max:im_min:im_max:steps
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
    },
}

fn read_rows(path: Option<&PathBuf>) -> Result<Vec<CatalogRow>> {
    let Some(path) = path else { return Ok(builtin_catalog()) };
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {}", path.display(), e)))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = if value.is_object() { serde_json::Value::Array(vec![value]) } else { value };
    parse_catalog(&rows.to_string())
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Invalid(e.to_string()))
}

fn run(cli: &Cli) -> Result<(String, u8)> {
    let prec = cli.precision_bits;
    let opts = RunOptions { precision: prec, ..RunOptions::default() };
    match &cli.command {
        Command::Check { params } => {
            let report = run_catalog(&read_rows(Some(params))?, &opts)?;
            Ok((pretty(&report)?, report.exit_code() as u8))
        }
        Command::Table { catalog, format } => {
            let format: TableFormat = format.parse()?;
            let report = run_catalog(&read_rows(catalog.as_ref())?, &opts)?;
            Ok((emit_tables(&report, format)?, report.exit_code() as u8))
        }
        Command::SimpleAxis { n, i, max_syllables, catalog } => {
            let rows = read_rows(catalog.as_ref())?;
            let row = rows
                .iter()
                .find(|r| r.n == *n && r.i == *i)
                .ok_or_else(|| Error::Invalid(format!("no catalog row ({},{})", n, i)))?;
            let gp = GroupParams::new(row.n, row.gamma_poly()?, row.gamma_approx, prec)?;
            let search = simple_axis_search(&gp, *max_syllables)?;
            let tf = gp.trace_field()?;
            let verdict = ramification_report(row.n, &tf, SymbolForm::TraceSquares)
                .and_then(|r| classify_simple(row.n, &tf, &r, &search));
            let out = json!({
                "id": row.id(),
                "witness_word": search.witness().map(|w| w.word.to_string()),
                "search": search,
                "simple": verdict.as_ref().map(|v| v.label()).unwrap_or("?"),
                "verdict": verdict.as_ref().ok(),
                "error": verdict.as_ref().err().map(|e| e.to_string()),
            });
            Ok((pretty(&out)?, 0))
        }
        Command::Volume { poly, np, prime_bound } => {
            let poly: IntPoly = poly.parse()?;
            let k = NumberField::new(poly.clone(), prec)?;
            let disc = k.discriminant()?;
            let z = zeta2(&k, *prime_bound, prec)?;
            let volume = match (k.degree(), np) {
                (4, None) => Some(quartic_covolume(&disc.value, &z.value)?),
                (3, Some(q)) => Some(cubic_covolume(&disc.value, &z.value, *q)?),
                (3, None) => return Err(Error::Invalid("a cubic field needs --np".into())),
                (4, Some(_)) => return Err(Error::Invalid("--np applies only to cubic fields".into())),
                _ => None,
            };
            let out = json!({
                "poly": poly.to_string(),
                "degree": k.degree(),
                "signature": k.signature(),
                "discriminant": disc.value.to_string(),
                "zeta2": z,
                "volume": volume.map(|v| v.to_f64()),
            });
            Ok((pretty(&out)?, 0))
        }
        Command::Explore { beta, map, grid, max_iter } => {
            let map: WordMap = map.parse()?;
            let grid: Grid = grid.parse()?;
            let beta = Cpx::from_f64(*beta, 0.0, prec);
            Ok((explore_csv(&beta, map, &grid, *max_iter), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            let written = out.write_all(text.as_bytes()).and_then(|_| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    out.write_all(b"\n")
                }
            });
            match written {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {}", e);
                    ExitCode::from(1)
                }
                _ => ExitCode::from(code),
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
