use crate::error::{Error, Result};
use crate::params::GammaPoly;
use crate::polyalg::{BivarIntPoly, IntPoly};
use serde::{Deserialize, Serialize};

/// A numeric table value or a printed label such as `Fuch.`, `S4` or `--`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Number(f64),
    Label(String),
}

impl Cell {
    pub fn number(&self) -> Option<f64> {
        match self {
            Cell::Number(x) => Some(*x),
            Cell::Label(_) => None,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Cell::Label(s) => Some(s),
            Cell::Number(_) => None,
        }
    }
}

/// Finite ramification as printed: norms of the ramified primes, or a label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RamCell {
    Norms(Vec<u64>),
    Label(String),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub delta: Option<f64>,
    pub q: Option<IntPoly>,
    pub disc: Option<Cell>,
    pub ramf: Option<RamCell>,
    pub volume: Option<Cell>,
    pub covolume: Option<Cell>,
    pub simple: Option<Cell>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub field: String,
    pub kind: String,
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternatives: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub n: u32,
    #[serde(default)]
    pub i: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bivar: Option<BivarIntPoly>,
    pub gamma_approx: (f64, f64),
    #[serde(default)]
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
}

impl CatalogRow {
    pub fn id(&self) -> String {
        format!("({},{})", self.n, self.i)
    }

    pub fn gamma_poly(&self) -> Result<GammaPoly> {
        match (&self.poly, &self.bivar) {
            (Some(p), None) => Ok(GammaPoly::Univariate(p.clone())),
            (None, Some(b)) => Ok(GammaPoly::Bivariate(b.clone())),
            _ => Err(Error::Parse(format!("row {} needs exactly one of poly, bivar", self.id()))),
        }
    }

    pub fn annotation(&self, field: &str) -> Option<&Annotation> {
        self.annotations.iter().find(|a| a.field == field)
    }
}

/// The catalog shipped with the library.
pub const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.json");

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRow>> {
    let rows: Vec<CatalogRow> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    for r in &rows {
        r.gamma_poly()?;
        if !(3..=7).contains(&r.n) {
            return Err(Error::Parse(format!("row {} has unsupported order", r.id())));
        }
    }
    Ok(rows)
}

pub fn builtin_catalog() -> Vec<CatalogRow> {
    parse_catalog(BUILTIN_CATALOG).expect("builtin catalog is valid")
}
