//! Classification of `f` as simple or not from a witness search and the invariant algebra.

use super::words::{SearchResult, Witness};
use crate::error::Result;
use crate::params::TraceField;
use crate::quatalg::{a5_quartic_rule, is_minus_one_minus_one_possible, RamificationReport, RuleOutcome};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SimpleVerdict {
    NonSimple { witness: Witness },
    Simple { obstruction: String },
    Unknown { reason: String },
}

impl SimpleVerdict {
    /// Table label: `Yes`, `No` or `?`.
    pub fn label(&self) -> &'static str {
        match self {
            SimpleVerdict::NonSimple { .. } => "No",
            SimpleVerdict::Simple { .. } => "Yes",
            SimpleVerdict::Unknown { .. } => "?",
        }
    }
}

/// Why no finite spherical subgroup can contain `f`, if one of the rules applies.
fn finite_subgroups_excluded(n: u32, tf: &TraceField, report: &RamificationReport) -> Result<Option<String>> {
    if n == 6 {
        return Ok(Some("no spherical triangle group has an element of order 6".into()));
    }
    if let RuleOutcome::RuledOut(why) = is_minus_one_minus_one_possible(report) {
        return Ok(Some(format!("algebra is not (-1,-1): {}", why)));
    }
    if n == 5 && tf.field.degree() == 4 {
        if let RuleOutcome::RuledOut(why) = a5_quartic_rule(tf, n, report)? {
            return Ok(Some(format!("no A5 subgroup over a quartic field: {}", why)));
        }
    }
    Ok(None)
}

/// Why no euclidean triangle subgroup can exist, if the algebra or field rules it out.
fn euclidean_subgroups_excluded(tf: &TraceField, report: &RamificationReport) -> Result<Option<String>> {
    let finite = report.finite_status.norms().map(|v| !v.is_empty()).unwrap_or(false);
    if finite || !report.real_ramified.is_empty() {
        return Ok(Some("algebra is ramified".into()));
    }
    let d = tf.field.discriminant()?.value;
    if tf.field.degree() != 2 || (d != -3 && d != -4) {
        return Ok(Some(format!("field with discriminant {} is neither Q(sqrt -1) nor Q(sqrt -3)", d)));
    }
    Ok(None)
}

/// Combines a witness search with the algebraic obstructions.
pub fn classify_simple(
    n: u32,
    tf: &TraceField,
    report: &RamificationReport,
    search: &SearchResult,
) -> Result<SimpleVerdict> {
    if let Some(w) = search.witness() {
        return Ok(SimpleVerdict::NonSimple { witness: w.clone() });
    }
    let finite = finite_subgroups_excluded(n, tf, report)?;
    let euclid = euclidean_subgroups_excluded(tf, report)?;
    Ok(match (finite, euclid) {
        (Some(a), Some(b)) => SimpleVerdict::Simple { obstruction: format!("{}; {}", a, b) },
        (None, _) => SimpleVerdict::Unknown { reason: "a finite spherical subgroup is not excluded".into() },
        (_, None) => SimpleVerdict::Unknown { reason: "a euclidean triangle subgroup is not excluded".into() },
    })
}
