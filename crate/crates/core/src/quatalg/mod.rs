//! Invariant quaternion algebras as Hilbert symbols and their ramification.

pub mod local;

pub use local::{candidate_primes, places_above, prime_support_above, LocalMethod, LocalPlace};

use crate::error::{Error, Result};
use crate::numeric::factor_integer;
use crate::numfield::{FieldElem, NumberField};
use crate::params::TraceField;
use rug::Integer;
use serde::Serialize;
use std::cmp::Ordering;
use std::sync::Arc;

/// Which presentation of the invariant algebra to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolForm {
    /// `(beta (beta + 4), gamma (gamma - beta))`.
    TraceSquares,
    /// `(beta(f^2), gamma (gamma + 4 sin^2(pi/n)))` with `beta(f^2) = (beta + 2)^2 - 4`.
    OrderTwoAngle,
}

/// The quaternion algebra `(a, b)` over the field containing `a` and `b`.
#[derive(Clone, Debug)]
pub struct HilbertSymbol {
    pub a: FieldElem,
    pub b: FieldElem,
    pub form: SymbolForm,
}

impl HilbertSymbol {
    pub fn new(a: FieldElem, b: FieldElem, form: SymbolForm) -> Result<HilbertSymbol> {
        if !Arc::ptr_eq(a.field(), b.field()) {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(HilbertSymbol { a, b, form })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.a.field()
    }

    /// Entries as polynomials in the field generator.
    pub fn entries(&self) -> (String, String) {
        (self.a.rep().to_string(), self.b.rep().to_string())
    }
}

/// The invariant quaternion algebra of the group with parameters `(gamma, beta, -4)`.
pub fn invariant_symbol(gamma: &FieldElem, beta: &FieldElem) -> Result<HilbertSymbol> {
    symbol_in_form(gamma, beta, SymbolForm::TraceSquares)
}

pub fn symbol_in_form(gamma: &FieldElem, beta: &FieldElem, form: SymbolForm) -> Result<HilbertSymbol> {
    if beta.is_zero() || beta.add_int(4).is_zero() {
        return Err(Error::Invalid("beta must differ from 0 and -4".into()));
    }
    if gamma.is_zero() {
        return Err(Error::Invalid("gamma = 0 gives an elementary group".into()));
    }
    if gamma == beta {
        return Err(Error::GammaEqualsBeta);
    }
    let (a, b) = match form {
        SymbolForm::TraceSquares => (beta.mul(&beta.add_int(4)), gamma.mul(&gamma.sub(beta))),
        SymbolForm::OrderTwoAngle => {
            let c = beta.add_int(2);
            let sin2 = beta.neg();
            (c.mul(&c).add_int(-4), gamma.mul(&gamma.add(&sin2)))
        }
    };
    HilbertSymbol::new(a, b, form)
}

/// Real embeddings at which both entries are negative.
pub fn real_ramification(s: &HilbertSymbol) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (idx, _) in s.field().real_embeddings() {
        let sa = s.a.sign_at_real(idx)?;
        let sb = s.b.sign_at_real(idx)?;
        if sa == Ordering::Less && sb == Ordering::Less {
            out.push(idx);
        }
    }
    Ok(out)
}

/// Generator of the discriminant of the order spanned by the group, as a field element.
pub fn order_disc_generator(n: u32, gamma: &FieldElem, beta: &FieldElem) -> Result<FieldElem> {
    let scale = match n {
        3 | 5 => 1,
        4 => 2,
        6 => 9,
        7 => return Err(Error::Unsupported("no order discriminant is available for n = 7".into())),
        _ => return Err(Error::UnsupportedOrder(n)),
    };
    Ok(gamma.mul(&gamma.sub(beta)).scale(&rug::Rational::from(scale)))
}

/// Field norm of the order-discriminant generator.
pub fn order_disc_norm(n: u32, gamma: &FieldElem, beta: &FieldElem) -> Result<Integer> {
    let x = order_disc_generator(n, gamma, beta)?;
    let nm = x.norm();
    if *nm.denom() != 1 {
        return Err(Error::Invalid(format!("order discriminant has non-integral norm {}", nm)));
    }
    Ok(nm.numer().clone())
}

/// Norms of the primes dividing the order discriminant, largest first, when every
/// prime above the rational primes involved can be decided.
pub fn order_disc_support(n: u32, gamma: &FieldElem, beta: &FieldElem) -> Result<Option<Vec<u64>>> {
    let x = order_disc_generator(n, gamma, beta)?;
    let norm = order_disc_norm(n, gamma, beta)?;
    if norm == 0 {
        return Err(Error::ZeroElement);
    }
    let mut out = Vec::new();
    for (p, _) in factor_integer(&Integer::from(norm.abs_ref())) {
        let q = p.to_u64().ok_or_else(|| Error::Unsupported(format!("prime {} is too large", p)))?;
        match prime_support_above(&x, q)? {
            Some(v) => out.extend(v),
            None => return Ok(None),
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Some(out))
}

/// Finite ramification as far as local symbols, the order discriminant and parity decide it.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FiniteStatus {
    Unramified,
    SinglePrime { norm: u64 },
    Primes { norms: Vec<u64> },
    /// Every undecided place is dyadic.
    DyadicOnlyCandidate,
    Undetermined,
}

impl FiniteStatus {
    /// Norms of the ramified primes when determined.
    pub fn norms(&self) -> Option<Vec<u64>> {
        match self {
            FiniteStatus::Unramified => Some(Vec::new()),
            FiniteStatus::SinglePrime { norm } => Some(vec![*norm]),
            FiniteStatus::Primes { norms } => Some(norms.clone()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteClassification {
    pub status: FiniteStatus,
    pub places: Vec<LocalPlace>,
}

/// Finite ramification of `s` given `|real_ramified|` and, when known, the norm of
/// the discriminant of an order in the algebra.
pub fn classify_finite_ramification(
    s: &HilbertSymbol,
    real_ramified: usize,
    disc_norm: Option<&Integer>,
) -> Result<FiniteClassification> {
    let mut places = Vec::new();
    for q in candidate_primes(&s.a, &s.b) {
        places.extend(places_above(&s.a, &s.b, q)?);
    }
    if let Some(d) = disc_norm.filter(|d| **d != 0) {
        let divisors: Vec<u64> = factor_integer(&Integer::from(d.abs_ref()))
            .into_iter()
            .filter_map(|(p, _)| p.to_u64())
            .collect();
        for p in places.iter_mut() {
            if !divisors.contains(&p.q) {
                if p.ramified == Some(true) {
                    return Err(Error::Invalid(format!(
                        "ramified prime of norm {} does not divide the order discriminant",
                        p.norm
                    )));
                }
                if p.ramified.is_none() {
                    p.ramified = Some(false);
                    p.method = LocalMethod::OrderDiscriminant;
                }
            }
        }
    }
    let open: Vec<usize> = places.iter().enumerate().filter(|(_, p)| p.ramified.is_none()).map(|(i, _)| i).collect();
    if open.len() == 1 {
        let known = real_ramified + places.iter().filter(|p| p.ramified == Some(true)).count();
        places[open[0]].ramified = Some(known % 2 == 1);
        places[open[0]].method = LocalMethod::Parity;
    }
    let status = if places.iter().all(|p| p.ramified.is_some()) {
        let mut norms: Vec<u64> = places.iter().filter(|p| p.ramified == Some(true)).map(|p| p.norm).collect();
        norms.sort_unstable_by(|a, b| b.cmp(a));
        match norms.len() {
            0 => FiniteStatus::Unramified,
            1 => FiniteStatus::SinglePrime { norm: norms[0] },
            _ => FiniteStatus::Primes { norms },
        }
    } else if places.iter().filter(|p| p.ramified.is_none()).all(|p| p.q == 2) {
        FiniteStatus::DyadicOnlyCandidate
    } else {
        FiniteStatus::Undetermined
    };
    Ok(FiniteClassification { status, places })
}

/// Real and finite ramification of the invariant algebra.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RamificationReport {
    pub form: SymbolForm,
    /// Entries of the symbol as polynomials in the field generator.
    pub symbol: (String, String),
    pub real_places: Vec<usize>,
    pub real_ramified: Vec<usize>,
    pub finite_status: FiniteStatus,
    pub finite_places: Vec<LocalPlace>,
    #[serde(serialize_with = "serialize_opt_integer")]
    pub order_disc_norm: Option<Integer>,
    /// Whether the number of ramified places is even, when every place is decided.
    pub parity_even: Option<bool>,
}

fn serialize_opt_integer<S: serde::Serializer>(v: &Option<Integer>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => crate::numeric::serialize_integer(x, s),
        None => s.serialize_none(),
    }
}

impl RamificationReport {
    pub fn real_unramified(&self) -> usize {
        self.real_places.len() - self.real_ramified.len()
    }
}

/// Ramification of the invariant algebra of a group with order-`n` generator.
pub fn ramification_report(n: u32, tf: &TraceField, form: SymbolForm) -> Result<RamificationReport> {
    let s = symbol_in_form(&tf.gamma, &tf.beta, form)?;
    let real_places: Vec<usize> = tf.field.real_embeddings().map(|(i, _)| i).collect();
    let real_ramified = real_ramification(&s)?;
    let disc = match order_disc_norm(n, &tf.gamma, &tf.beta) {
        Ok(d) => Some(d),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let fc = classify_finite_ramification(&s, real_ramified.len(), disc.as_ref())?;
    let parity_even = fc.status.norms().map(|v| (v.len() + real_ramified.len()) % 2 == 0);
    Ok(RamificationReport {
        form,
        symbol: s.entries(),
        real_places,
        real_ramified,
        finite_status: fc.status,
        finite_places: fc.places,
        order_disc_norm: disc,
        parity_even,
    })
}

/// Outcome of a rule that can exclude a finite subgroup or an algebra isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "reason", rename_all = "snake_case")]
pub enum RuleOutcome {
    RuledOut(String),
    Consistent,
}

impl RuleOutcome {
    pub fn is_ruled_out(&self) -> bool {
        matches!(self, RuleOutcome::RuledOut(_))
    }
}

/// Whether the algebra can be `(-1, -1)` over its field: that algebra ramifies at every
/// real place and at no finite prime of odd norm.
pub fn is_minus_one_minus_one_possible(report: &RamificationReport) -> RuleOutcome {
    if report.real_unramified() > 0 {
        return RuleOutcome::RuledOut(format!("{} real place(s) unramified", report.real_unramified()));
    }
    let odd: Vec<u64> = report
        .finite_places
        .iter()
        .filter(|p| p.ramified == Some(true) && p.q != 2)
        .map(|p| p.norm)
        .collect();
    if let Some(norm) = odd.first() {
        return RuleOutcome::RuledOut(format!("ramified at a prime of odd norm {}", norm));
    }
    RuleOutcome::Consistent
}

/// `sqrt 5` as an element of the field, found through `beta` when `n = 5`.
fn sqrt5_witness(tf: &TraceField, n: u32) -> Option<FieldElem> {
    if n != 5 {
        return None;
    }
    let r = tf.beta.scale(&rug::Rational::from(2)).add_int(5);
    let five = FieldElem::from_int(&tf.field, 5);
    (r.mul(&r) == five).then_some(r)
}

/// A group with an `A_5` subgroup over a quartic field has no finite ramification.
pub fn a5_quartic_rule(tf: &TraceField, n: u32, report: &RamificationReport) -> Result<RuleOutcome> {
    if tf.field.degree() != 4 {
        return Err(Error::Invalid(format!("field has degree {}, expected 4", tf.field.degree())));
    }
    if sqrt5_witness(tf, n).is_none() {
        return Err(Error::Unsupported("no sqrt 5 witness in the field".into()));
    }
    Ok(match report.finite_status.norms() {
        Some(v) if !v.is_empty() => RuleOutcome::RuledOut(format!("finite ramification at norms {:?}", v)),
        _ => RuleOutcome::Consistent,
    })
}
