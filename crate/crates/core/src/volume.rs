//! Dedekind zeta values at 2 by Euler products, and co-volume formulas.

use crate::error::{Error, Result};
use crate::numeric::pi;
use crate::numfield::{p_maximal_order, NumberField};
use crate::polyalg::{factor_degrees_mod_p, primes_up_to};
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};
use serde::{Serialize, Serializer};

/// Truncated Euler product for `zeta_K(2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaEstimate {
    #[serde(serialize_with = "serialize_float")]
    pub value: Float,
    pub prime_bound: u64,
    /// The true value lies in `[value, value + tail_bound]`.
    #[serde(serialize_with = "serialize_float")]
    pub tail_bound: Float,
    /// Primes dividing the index of `Z[theta]`, whose factors use the maximal order.
    pub index_primes: Vec<u64>,
}

fn serialize_float<S: Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(x.to_f64())
}

const CHUNK: usize = 256;

/// Residue degrees of the primes above `q`.
fn residue_degrees(k: &NumberField, q: u64, index: &[u64]) -> Result<Vec<usize>> {
    if index.contains(&q) {
        return Ok(p_maximal_order(k.poly(), q)?.residue_degrees());
    }
    Ok(factor_degrees_mod_p(k.poly(), q).into_iter().map(|(d, _)| d).collect())
}

/// `prod_{q <= prime_bound} prod_{P | q} (1 - N(P)^-2)^-1`.
pub fn zeta2(k: &NumberField, prime_bound: u64, prec: u32) -> Result<ZetaEstimate> {
    if prime_bound < 2 {
        return Err(Error::Invalid("prime bound must be at least 2".into()));
    }
    let index: Vec<u64> = if k.degree() > 1 {
        k.discriminant()?.index_primes.iter().map(|(q, _)| *q).collect()
    } else {
        Vec::new()
    };
    let primes = primes_up_to(prime_bound);
    let partials: Vec<Result<Float>> = primes
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = Float::with_val(prec, 1);
            for &q in chunk {
                for f in residue_degrees(k, q, &index)? {
                    let norm = Float::with_val(prec, Float::u_pow_u(q as u32, 2 * f as u32));
                    let factor = Float::with_val(prec, 1 - norm.recip());
                    acc /= factor;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut value = Float::with_val(prec, 1);
    for p in partials {
        value *= p?;
    }
    let tail_exp = Float::with_val(prec, k.degree() as u32) / Float::with_val(prec, prime_bound);
    let tail_bound = Float::with_val(prec, &value * Float::with_val(prec, tail_exp.exp_m1()));
    Ok(ZetaEstimate { value, prime_bound, tail_bound, index_primes: index })
}

/// `|d|^(3/2) zeta_K(2) / (2^7 pi^6)` for a quartic field with one complex place.
pub fn quartic_covolume(d: &Integer, zeta2: &Float) -> Result<Float> {
    if *d >= 0 {
        return Err(Error::Invalid("discriminant must be negative".into()));
    }
    let prec = zeta2.prec();
    let abs = Float::with_val(prec, Integer::from(d.abs_ref()));
    let num = Float::with_val(prec, abs.clone() * abs.sqrt()) * zeta2;
    Ok(num / (Float::with_val(prec, 128) * pi(prec).pow(6u32)))
}

/// `|d|^(3/2) zeta_K(2) (N(P) - 1) / (2^6 pi^4)` for a cubic field with one complex place.
pub fn cubic_covolume(d: &Integer, zeta2: &Float, np: u64) -> Result<Float> {
    if *d >= 0 {
        return Err(Error::Invalid("discriminant must be negative".into()));
    }
    if np < 2 {
        return Err(Error::Invalid("prime norm must be at least 2".into()));
    }
    let prec = zeta2.prec();
    let abs = Float::with_val(prec, Integer::from(d.abs_ref()));
    let num = Float::with_val(prec, abs.clone() * abs.sqrt()) * zeta2 * Float::with_val(prec, np - 1);
    Ok(num / (Float::with_val(prec, 64) * pi(prec).pow(4u32)))
}
