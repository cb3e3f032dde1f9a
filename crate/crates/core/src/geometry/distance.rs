//! Axial distances, the conjugation map and iteration of the word maps.

use crate::error::{Error, Result};
use crate::numeric::Cpx;
use crate::numfield::FieldElem;
use rug::Float;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Distance between the axes of `f` and `g` from `(gamma, beta(f), beta(g))`.
pub fn axial_distance(gamma: &Cpx, beta: &Cpx, beta2: &Cpx) -> Result<Float> {
    let prec = gamma.prec().max(beta.prec()).max(beta2.prec());
    let bb = beta.mul(beta2);
    if beta.is_zero() || beta2.is_zero() {
        return Err(Error::Invalid("parabolic generator (beta = 0)".into()));
    }
    let x = gamma.scale(&Float::with_val(prec, 4)).div(&bb);
    let c = Float::with_val(prec, x.add(&Cpx::one(prec)).abs() + x.abs());
    Ok(acosh_clamped(c) / 2u32)
}

/// Distance between the axes of `f` and `h f h^-1` where `gamma = gamma(f, h)`.
pub fn conj_axis_distance(gamma: &Cpx, beta: &Cpx) -> Result<Float> {
    if beta.is_zero() {
        return Err(Error::Invalid("parabolic generator (beta = 0)".into()));
    }
    let prec = gamma.prec().max(beta.prec());
    let c = Float::with_val(prec, gamma.sub(beta).abs() + gamma.abs()) / beta.abs();
    Ok(acosh_clamped(c))
}

fn acosh_clamped(c: Float) -> Float {
    if c <= 1 {
        Float::new(c.prec())
    } else {
        c.acosh()
    }
}

/// `gamma(f, h f h^-1) = gamma (gamma - beta)`.
pub fn conj_map(gamma: &Cpx, beta: &Cpx) -> Cpx {
    gamma.mul(&gamma.sub(beta))
}

/// Exact form of [`conj_map`] in the field containing both parameters.
pub fn conj_map_exact(gamma: &FieldElem, beta: &FieldElem) -> FieldElem {
    gamma.mul(&gamma.sub(beta))
}

/// The two polynomial maps in `gamma` realized by words in `f` and `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordMap {
    /// `gamma (1 + beta - gamma)^2`, realized by `h = gfgfg`.
    Cubic,
    /// `gamma (gamma - beta)`, realized by `g f g^-1`.
    Conjugation,
}

impl WordMap {
    pub fn apply(&self, gamma: &Cpx, beta: &Cpx) -> Cpx {
        match self {
            WordMap::Cubic => {
                let t = Cpx::one(gamma.prec()).add(beta).sub(gamma);
                gamma.mul(&t.mul(&t))
            }
            WordMap::Conjugation => conj_map(gamma, beta),
        }
    }

    /// The word whose commutator parameter with `f` is this map.
    pub fn word(&self) -> &'static str {
        match self {
            WordMap::Cubic => "gfgfg",
            WordMap::Conjugation => "gfg",
        }
    }
}

impl fmt::Display for WordMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordMap::Cubic => "cubic",
            WordMap::Conjugation => "conjugation",
        })
    }
}

impl FromStr for WordMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<WordMap> {
        match s {
            "cubic" => Ok(WordMap::Cubic),
            "conjugation" | "conj" => Ok(WordMap::Conjugation),
            _ => Err(Error::Parse(format!("unknown word map '{}', expected cubic or conjugation", s))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `|gamma_j|` fell below the zero threshold.
    ConvergesToZero,
    /// `|gamma_j|` exceeded the escape threshold.
    Escapes,
    /// `gamma_j` returned to an earlier value.
    Cycles,
    /// None of the above within the iteration budget.
    Bounded,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub points: Vec<(f64, f64)>,
    pub verdict: Verdict,
    /// First index `j` with `0 < |gamma_j| < 1`, which rules out discreteness.
    pub enters_unit_disc: Option<usize>,
    /// Smallest modulus reached.
    pub min_modulus: f64,
}

pub const ZERO_THRESHOLD: f64 = 1e-10;
pub const ESCAPE_THRESHOLD: f64 = 1e10;
const CYCLE_TOLERANCE: f64 = 1e-20;

/// Iterates `map` from `gamma0` for at most `max_iter` steps.
pub fn word_map_iterate(gamma0: &Cpx, beta: &Cpx, map: WordMap, max_iter: usize) -> Trajectory {
    let mut cur = gamma0.clone();
    let mut seen: Vec<Cpx> = vec![cur.clone()];
    let mut points = vec![cur.to_f64()];
    let mut enters = None;
    let mut min_modulus = f64::INFINITY;
    let mut verdict = Verdict::Bounded;
    for j in 0..=max_iter {
        let m = cur.abs().to_f64();
        min_modulus = min_modulus.min(m);
        if enters.is_none() && m > 0.0 && m < 1.0 - 1e-30 {
            enters = Some(j);
        }
        if m < ZERO_THRESHOLD {
            verdict = Verdict::ConvergesToZero;
            break;
        }
        if m > ESCAPE_THRESHOLD {
            verdict = Verdict::Escapes;
            break;
        }
        if j == max_iter {
            break;
        }
        cur = map.apply(&cur, beta);
        if seen.iter().any(|s| s.dist(&cur).to_f64() < CYCLE_TOLERANCE) {
            points.push(cur.to_f64());
            verdict = Verdict::Cycles;
            break;
        }
        seen.push(cur.clone());
        points.push(cur.to_f64());
    }
    Trajectory { points, verdict, enters_unit_disc: enters, min_modulus }
}

/// Rectangular sample grid in the `gamma` plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub steps: usize,
}

impl FromStr for Grid {
    type Err = Error;

    /// `re_min:re_max:im_min:im_max:steps`.
    fn from_str(s: &str) -> Result<Grid> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Parse(format!("grid '{}' is not re_min:re_max:im_min:im_max:steps", s));
        if parts.len() != 5 {
            return Err(bad());
        }
        let f = |i: usize| parts[i].trim().parse::<f64>().map_err(|_| bad());
        let steps: usize = parts[4].trim().parse().map_err(|_| bad())?;
        if steps == 0 {
            return Err(bad());
        }
        Ok(Grid { re: (f(0)?, f(1)?), im: (f(2)?, f(3)?), steps })
    }
}

impl Grid {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let at = |(lo, hi): (f64, f64), k: usize| {
            if self.steps == 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (self.steps - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.steps * self.steps);
        for a in 0..self.steps {
            for b in 0..self.steps {
                out.push((at(self.re, a), at(self.im, b)));
            }
        }
        out
    }
}

/// CSV of the verdict at each grid point.
pub fn explore_csv(beta: &Cpx, map: WordMap, grid: &Grid, max_iter: usize) -> String {
    let prec = beta.prec();
    let mut out = String::from("re,im,verdict,enters_unit_disc,min_modulus\n");
    for (re, im) in grid.points() {
        let t = word_map_iterate(&Cpx::from_f64(re, im, prec), beta, map, max_iter);
        let verdict = serde_json::to_value(t.verdict).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        let enters = t.enters_unit_disc.map(|j| j.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{:e}\n", re, im, verdict, enters, t.min_modulus));
    }
    out
}
