//! Words in the generators, their commutator parameters and the simple-axis search.

use super::matrix::{realize, Mat2C};
use crate::error::{Error, Result};
use crate::numeric::Cpx;
use crate::params::GroupParams;
use rayon::prelude::*;
use rug::Float;
use serde::{Serialize, Serializer};
use std::fmt;

/// A letter: `g` or a nonzero power of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    G,
    F(i32),
}

/// A reduced word with `g^2` and `f^n` collapsed and no two adjacent letters
/// from the same generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordSpec {
    letters: Vec<Letter>,
}

/// Representative of `e mod n` in `(-n/2, n/2]`.
fn symmetric_residue(e: i32, n: u32) -> i32 {
    let n = n as i32;
    let mut r = e.rem_euclid(n);
    if 2 * r > n {
        r -= n;
    }
    r
}

impl WordSpec {
    /// Reduces `letters` for an order-`n` generator `f`.
    pub fn new(letters: &[Letter], n: u32) -> WordSpec {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            let l = match l {
                Letter::F(e) => Letter::F(symmetric_residue(e, n)),
                g => g,
            };
            match (out.last().copied(), l) {
                (_, Letter::F(0)) => {}
                (Some(Letter::G), Letter::G) => {
                    out.pop();
                }
                (Some(Letter::F(a)), Letter::F(b)) => {
                    out.pop();
                    let c = symmetric_residue(a + b, n);
                    if c != 0 {
                        out.push(Letter::F(c));
                    }
                }
                _ => out.push(l),
            }
            while out.len() >= 2 {
                match (out[out.len() - 2], out[out.len() - 1]) {
                    (Letter::G, Letter::G) => {
                        out.truncate(out.len() - 2);
                    }
                    (Letter::F(a), Letter::F(b)) => {
                        out.truncate(out.len() - 2);
                        let c = symmetric_residue(a + b, n);
                        if c != 0 {
                            out.push(Letter::F(c));
                        }
                    }
                    _ => break,
                }
            }
        }
        WordSpec { letters: out }
    }

    /// `g f^e1 g f^e2 ... g`.
    pub fn from_exponents(exps: &[i32], n: u32) -> WordSpec {
        let mut letters = vec![Letter::G];
        for &e in exps {
            letters.push(Letter::F(e));
            letters.push(Letter::G);
        }
        WordSpec::new(&letters, n)
    }

    /// Parses words such as `gfgf^-1g`, `gf^2g` or `gfg^-1fg`, using `g^2 = 1`.
    pub fn parse(s: &str, n: u32) -> Result<WordSpec> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            match chars[i] {
                c @ ('g' | 'f') => {
                    i += 1;
                    let mut e = 1i32;
                    if i < chars.len() && chars[i] == '^' {
                        i += 1;
                        let start = i;
                        if i < chars.len() && chars[i] == '-' {
                            i += 1;
                        }
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        let tok: String = chars[start..i].iter().collect();
                        e = tok.parse().map_err(|_| Error::Parse(format!("bad exponent in {}", s)))?;
                    }
                    if c == 'f' {
                        letters.push(Letter::F(e));
                    } else if e.rem_euclid(2) == 1 {
                        letters.push(Letter::G);
                    }
                }
                c => return Err(Error::Parse(format!("unexpected '{}' in word {}", c, s))),
            }
        }
        Ok(WordSpec::new(&letters, n))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse word, using `g^-1 = g`.
    pub fn inverse(&self, n: u32) -> WordSpec {
        let letters: Vec<Letter> = self
            .letters
            .iter()
            .rev()
            .map(|l| match l {
                Letter::F(e) => Letter::F(-e),
                g => *g,
            })
            .collect();
        WordSpec::new(&letters, n)
    }

    pub fn evaluate(&self, f: &Mat2C, g: &Mat2C) -> Mat2C {
        let mut acc = Mat2C::identity(f.prec());
        for l in &self.letters {
            acc = match l {
                Letter::G => acc.mul(g),
                Letter::F(e) => acc.mul(&f.pow(*e)),
            };
        }
        acc
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return out.write_str("1");
        }
        for l in &self.letters {
            match l {
                Letter::G => out.write_str("g")?,
                Letter::F(1) => out.write_str("f")?,
                Letter::F(e) => write!(out, "f^{}", e)?,
            }
        }
        Ok(())
    }
}

impl Serialize for WordSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `gamma(f, h) = tr[F, H] - 2` for the word `h`.
pub fn gamma_of_word(f: &Mat2C, g: &Mat2C, w: &WordSpec) -> Cpx {
    f.commutator_parameter(&w.evaluate(f, g))
}

/// `gamma(f, h)` and `beta(h)` from the parameters, at doubling precision until two
/// successive evaluations agree to `tol`.
pub fn word_parameters(gamma: &Cpx, beta: &Cpx, w: &WordSpec, tol: f64) -> Result<(Cpx, Cpx)> {
    let mut prec = gamma.prec().max(beta.prec());
    let eval = |p: u32| -> Result<(Cpx, Cpx)> {
        let (f, g) = realize(&gamma.with_prec(p), &beta.with_prec(p))?;
        let h = w.evaluate(&f, &g);
        Ok((f.commutator_parameter(&h), h.beta()))
    };
    let mut prev = eval(prec)?;
    while prec <= 4096 {
        let next = eval(2 * prec)?;
        if next.0.dist(&prev.0).to_f64() < tol && next.1.dist(&prev.1).to_f64() < tol {
            return Ok(prev);
        }
        prev = next;
        prec *= 2;
    }
    Err(Error::PrecisionExhausted(prec))
}

/// Exponent order used by the canonical enumeration: `1, -1, 2, -2, ...`.
fn exponent_key(e: i32) -> (u32, bool) {
    (e.unsigned_abs(), e < 0)
}

/// Words `g f^e1 g ... f^ek g` with at most `max_syllables` letters, one per
/// inverse pair, sorted by length then exponent sequence.
pub fn enumerate_words(n: u32, max_syllables: usize) -> Vec<WordSpec> {
    let mut exps: Vec<i32> = (1..n as i32).map(|e| symmetric_residue(e, n)).collect();
    exps.sort_by_key(|&e| exponent_key(e));
    let max_f = max_syllables.saturating_sub(1) / 2;
    let mut out = Vec::new();
    if max_syllables == 0 {
        return out;
    }
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for k in 0..=max_f {
        for seq in &layer {
            let inv: Vec<i32> = seq.iter().rev().map(|e| symmetric_residue(-e, n)).collect();
            let key = |s: &[i32]| s.iter().map(|&e| exponent_key(e)).collect::<Vec<_>>();
            if key(&inv) < key(seq) {
                continue;
            }
            out.push(WordSpec::from_exponents(seq, n));
        }
        if k == max_f {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|seq| {
                exps.iter().map(move |&e| {
                    let mut s = seq.clone();
                    s.push(e);
                    s
                })
            })
            .collect();
    }
    out
}

/// How a word certifies that `f` is not simple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `gamma(f, h)` is real and inside `(beta(f), 0)`.
    Interval,
    /// `gamma(f, h) = beta(f)` and `beta(h) != -4`.
    EqualsBeta,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub word: WordSpec,
    pub kind: WitnessKind,
    pub gamma: (f64, f64),
    pub beta_h: (f64, f64),
    /// Small exact value matched by `gamma(f, h)`, if any.
    pub exact: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SearchResult {
    Witness(Witness),
    NoneFound { words_checked: usize, max_syllables: usize },
}

impl SearchResult {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchResult::Witness(w) => Some(w),
            SearchResult::NoneFound { .. } => None,
        }
    }
}

/// Residual below which a word's value is taken as exact.
pub const WITNESS_TOLERANCE: f64 = 1e-20;

fn exact_label(value: &Cpx, beta: &Cpx) -> Option<String> {
    let prec = value.prec();
    let candidates = [
        ("-1".to_string(), Cpx::from_f64(-1.0, 0.0, prec)),
        ("-2".to_string(), Cpx::from_f64(-2.0, 0.0, prec)),
        ("-3".to_string(), Cpx::from_f64(-3.0, 0.0, prec)),
        ("beta".to_string(), beta.clone()),
        ("beta+1".to_string(), beta.add(&Cpx::from_f64(1.0, 0.0, prec))),
        ("beta+2".to_string(), beta.add(&Cpx::from_f64(2.0, 0.0, prec))),
    ];
    candidates.into_iter().find(|(_, c)| value.dist(c).to_f64() < WITNESS_TOLERANCE).map(|(l, _)| l)
}

fn classify_word(gamma_h: &Cpx, beta_h: &Cpx, beta: &Cpx) -> Option<WitnessKind> {
    let tol = WITNESS_TOLERANCE;
    if gamma_h.dist(beta).to_f64() < tol {
        let four = Cpx::from_f64(4.0, 0.0, beta_h.prec());
        return (beta_h.add(&four).abs().to_f64() > tol).then_some(WitnessKind::EqualsBeta);
    }
    let re = gamma_h.re.to_f64();
    let b = beta.re.to_f64();
    let inside = Float::with_val(gamma_h.prec(), gamma_h.im.abs_ref()).to_f64() < tol && re > b + tol && re < -tol;
    inside.then_some(WitnessKind::Interval)
}

/// First word, in canonical order, whose commutator parameter with `f` certifies
/// that `f` is not simple.
pub fn simple_axis_search(params: &GroupParams, max_syllables: usize) -> Result<SearchResult> {
    let gamma = params.gamma();
    let beta = Cpx::real(params.beta().clone());
    search_words(&gamma, &beta, params.n, max_syllables)
}

pub fn search_words(gamma: &Cpx, beta: &Cpx, n: u32, max_syllables: usize) -> Result<SearchResult> {
    if max_syllables == 0 {
        return Err(Error::Invalid("max_syllables must be at least 1".into()));
    }
    let (f, g) = realize(gamma, beta)?;
    let words = enumerate_words(n, max_syllables);
    let hits: Vec<Option<WitnessKind>> = words
        .par_iter()
        .map(|w| {
            let h = w.evaluate(&f, &g);
            classify_word(&f.commutator_parameter(&h), &h.beta(), beta)
        })
        .collect();
    for (w, hit) in words.iter().zip(&hits) {
        if hit.is_none() {
            continue;
        }
        let (gh, bh) = word_parameters(gamma, beta, w, WITNESS_TOLERANCE * 1e-6)?;
        if let Some(kind) = classify_word(&gh, &bh, beta) {
            return Ok(SearchResult::Witness(Witness {
                word: w.clone(),
                kind,
                gamma: gh.to_f64(),
                beta_h: bh.to_f64(),
                exact: exact_label(&gh, beta),
            }));
        }
    }
    Ok(SearchResult::NoneFound { words_checked: words.len(), max_syllables })
}
