//! Sufficient conditions for a two-generator group to be a discrete subgroup of an
//! arithmetic group, with the certified data that decided each condition.

use crate::error::{Error, Result};
use crate::numeric::{float_to_rational, Cpx};
use crate::numfield::{eval_interval, RInterval};
use crate::params::{galois_conjugates_beta, rational_beta, BetaConjugate, GroupParams, TraceField};
use crate::polyalg::{squarefree_part, sturm_count, BivarIntPoly, IntPoly, RatPoly, RootBox};
use rug::{Float, Integer, Rational};
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SubgroupOfArithmetic,
    /// The sufficient conditions are not met; nothing is claimed about discreteness.
    Inconclusive,
}

/// Which decider produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Roots of an integer polynomial `p(z)` other than gamma lie in `(beta, 0)`.
    UnivariateRoots,
    /// Roots of `p(z, beta_k)` lie in `(beta_k, 0)` for every conjugate `beta_k`.
    ConjugateRoots,
    /// Integrality, one complex place and sign conditions at real embeddings.
    FieldConditions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Monic { poly: String },
    RootCount { interval: (f64, f64), squarefree_degree: usize, count: usize, expected: usize },
    EndpointRoot { endpoint: String },
    ConjugateRoots { k: u32, beta: (f64, f64), degree: usize, real_roots: Vec<(f64, f64)>, expected_real: usize },
    Integrality { char_poly: String },
    Signature { r1: usize, r2: usize },
    Embedding { index: usize, beta: (f64, f64), gamma_gamma_minus_beta: (f64, f64) },
    Note { text: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub id: String,
    pub passed: bool,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretenessCertificate {
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub conditions: Vec<Condition>,
}

impl DiscretenessCertificate {
    fn from_conditions(criterion: Criterion, conditions: Vec<Condition>) -> Self {
        let verdict = if conditions.iter().all(|c| c.passed) {
            Verdict::SubgroupOfArithmetic
        } else {
            Verdict::Inconclusive
        };
        DiscretenessCertificate { verdict, criterion, conditions }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::SubgroupOfArithmetic
    }
}

fn pair_f64(iv: &(Rational, Rational)) -> (f64, f64) {
    (iv.0.to_f64(), iv.1.to_f64())
}

/// Whether a real root box lies strictly inside `(lo, hi)`, refining until decided.
fn real_root_inside(root: &RootBox, lo: &Rational, hi: &Rational) -> bool {
    let mut r = root.clone();
    let mut bits = 32;
    loop {
        let (a, b) = r.interval.clone().expect("real root");
        if a > *lo && b < *hi {
            return true;
        }
        if b <= *lo || a >= *hi {
            return false;
        }
        if bits > 4096 {
            return false;
        }
        r.refine_real(bits);
        bits *= 2;
    }
}

/// Decider for integer `beta` (`n` in {3, 4, 6}): every root of `p` other than gamma
/// and its conjugate is real and lies in `(beta, 0)`.
pub fn check_univariate(p: &IntPoly, gamma: &RootBox, n: u32) -> Result<DiscretenessCertificate> {
    let b = rational_beta(n).ok_or(Error::UnsupportedOrder(n))?;
    if !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()));
    }
    if p.div_exact(&gamma.factor).is_none() {
        return Err(Error::GammaNotMatched("gamma is not a root of p".into()));
    }
    if gamma.factor.primitive_part() == IntPoly::x() {
        return Err(Error::Invalid("gamma = 0 gives an elementary group".into()));
    }
    if gamma.factor.primitive_part() == IntPoly::from_i64(&[-b, 1]) {
        return Err(Error::GammaEqualsBeta);
    }
    let mut conditions = vec![Condition {
        id: "monic".into(),
        passed: true,
        evidence: Evidence::Monic { poly: p.to_string() },
    }];
    let sqf = squarefree_part(p);
    let d = sqf.degree();
    let lo = Rational::from(b);
    let hi = Rational::new();
    let expected = if gamma.is_real {
        d - 1 + real_root_inside(gamma, &lo, &hi) as usize
    } else {
        d - 2
    };
    let cond = match sturm_count(&sqf, &lo, &hi) {
        Ok(count) => Condition {
            id: "other_roots_in_interval".into(),
            passed: count == expected,
            evidence: Evidence::RootCount { interval: (b as f64, 0.0), squarefree_degree: d, count, expected },
        },
        Err(Error::EndpointIsRoot(e)) => Condition {
            id: "other_roots_in_interval".into(),
            passed: false,
            evidence: Evidence::EndpointRoot { endpoint: e },
        },
        Err(e) => return Err(e),
    };
    conditions.push(cond);
    Ok(DiscretenessCertificate::from_conditions(Criterion::UnivariateRoots, conditions))
}

/// Roots of a polynomial with complex coefficients by Aberth iteration.
fn cpx_poly_roots(coeffs: &[Cpx], prec: u32) -> Vec<Cpx> {
    let d = coeffs.len() - 1;
    let lc = coeffs[d].clone();
    let c: Vec<Cpx> = coeffs.iter().map(|x| x.div(&lc)).collect();
    let eval = |z: &Cpx| -> (Cpx, Cpx) {
        let mut v = Cpx::zero(prec);
        let mut dv = Cpx::zero(prec);
        for a in c.iter().rev() {
            dv = dv.mul(z).add(&v);
            v = v.mul(z).add(a);
        }
        (v, dv)
    };
    let mut radius = 1.0f64;
    for a in &c[..d] {
        radius = radius.max(1.0 + a.abs().to_f64());
    }
    let mut z: Vec<Cpx> = (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64;
            Cpx::from_f64(radius * t.cos(), radius * t.sin(), prec)
        })
        .collect();
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
    for _ in 0..2000 {
        let mut maxstep = Float::new(prec);
        for i in 0..d {
            let (v, dv) = eval(&z[i]);
            if v.is_zero() {
                continue;
            }
            let ratio = v.div(&dv);
            let mut s = Cpx::zero(prec);
            for j in 0..d {
                if j != i {
                    s = s.add(&z[i].sub(&z[j]).recip());
                }
            }
            let denom = Cpx::one(prec).sub(&ratio.mul(&s));
            let step = ratio.div(&denom);
            let a = step.abs();
            if a > maxstep {
                maxstep = a;
            }
            z[i] = z[i].sub(&step);
        }
        if maxstep < eps {
            break;
        }
    }
    z
}

/// Interval enclosure of `p(x, beta)` for rational `x` and `beta` in an interval.
fn eval_bivar_interval(p: &BivarIntPoly, x: &Rational, beta: &RInterval) -> RInterval {
    let mut acc = RInterval::point(Rational::new());
    let xp = RInterval::point(x.clone());
    for c in p.z_coeffs().iter().rev() {
        let ci = eval_interval(&RatPoly::from_int(c), beta);
        acc = acc.mul(&xp).add(&ci);
    }
    acc
}

/// Certified real roots of `p(z, beta_k)`: disjoint rational intervals, each with a
/// sign change of `p(., beta_k)` at its endpoints.
fn certified_real_roots(p: &BivarIntPoly, beta: &BetaConjugate, prec: u32) -> Vec<(Rational, Rational)> {
    let bits = prec;
    let (blo, bhi) = beta.refined(bits + 32);
    let biv = RInterval::new(blo, bhi);
    let bc = Cpx::real(Float::with_val(prec, &beta.value));
    let coeffs = p.at_beta_cpx(&bc);
    let approx = cpx_poly_roots(&coeffs, prec);
    let im_tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 4));
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    for z in approx {
        if z.im.clone().abs() > im_tol {
            continue;
        }
        let c = float_to_rational(&z.re);
        let mut found = None;
        for e in [prec / 2, prec / 3, prec / 4, 16] {
            let eps = Rational::from((Integer::from(1), Integer::from(1) << e));
            let a = Rational::from(&c - &eps);
            let b = Rational::from(&c + &eps);
            let sa = eval_bivar_interval(p, &a, &biv).sign();
            let sb = eval_bivar_interval(p, &b, &biv).sign();
            if let (Some(x), Some(y)) = (sa, sb) {
                if x != Ordering::Equal && y != Ordering::Equal && x != y {
                    found = Some((a, b));
                    break;
                }
            }
        }
        if let Some(iv) = found {
            out.push(iv);
        }
    }
    out.sort();
    let disjoint = out.windows(2).all(|w| w[0].1 < w[1].0);
    if !disjoint {
        out.dedup_by(|b, a| b.0 <= a.1);
    }
    out
}

/// Decider for irrational `beta` (`n` in {5, 7}): for `k >= 2` every root of
/// `p(z, beta_k)` is real in `(beta_k, 0)`; for `beta_1` the same holds for the
/// roots other than gamma and its conjugate.
pub fn check_conjugates(p: &BivarIntPoly, gamma: &Cpx, gamma_is_real: bool, n: u32, prec: u32) -> Result<DiscretenessCertificate> {
    if !matches!(n, 5 | 7) {
        return Err(Error::UnsupportedOrder(n));
    }
    let d = p.deg_z();
    if d < 1 {
        return Err(Error::Degenerate);
    }
    let lead = &p.z_coeffs()[d as usize];
    if *lead != IntPoly::one() {
        return Err(Error::NotMonic(p.to_string()));
    }
    let d = d as usize;
    let betas = galois_conjugates_beta(n, prec)?;
    let b1 = Cpx::real(betas[0].value.clone());
    let residual = p.eval_cpx(&gamma.with_prec(prec), &b1.with_prec(prec)).abs().to_f64();
    if residual > 1e-8 {
        return Err(Error::GammaNotMatched(format!("gamma is not a root of p(z, beta_1) (residual {:e})", residual)));
    }
    if gamma.abs().to_f64() < 1e-30 {
        return Err(Error::Invalid("gamma = 0 gives an elementary group".into()));
    }
    if gamma_is_real && gamma.sub(&b1).abs().to_f64() < 1e-30 {
        return Err(Error::GammaEqualsBeta);
    }
    let mut conditions = vec![Condition {
        id: "monic".into(),
        passed: true,
        evidence: Evidence::Monic { poly: p.to_string() },
    }];
    let zero = Rational::new();
    for beta in &betas {
        let mut attempt = prec.max(128);
        let (roots, expected_real) = loop {
            let roots = certified_real_roots(p, beta, attempt);
            let expected_real = if beta.k == 1 && !gamma_is_real { d - 2 } else { d };
            if roots.len() == expected_real || attempt >= 2048 {
                break (roots, expected_real);
            }
            attempt *= 2;
        };
        let (_, bhi) = beta.refined(attempt + 32);
        let gamma_q = float_to_rational(&gamma.re);
        let mut inside = roots.len() == expected_real;
        for iv in &roots {
            let is_gamma = beta.k == 1 && gamma_is_real && iv.0 <= gamma_q && gamma_q <= iv.1;
            if is_gamma {
                continue;
            }
            if !(iv.0 > bhi && iv.1 < zero) {
                inside = false;
            }
        }
        conditions.push(Condition {
            id: format!("roots_at_beta_{}", beta.k),
            passed: inside,
            evidence: Evidence::ConjugateRoots {
                k: beta.k,
                beta: pair_f64(&beta.interval()),
                degree: d,
                real_roots: roots.iter().map(pair_f64).collect(),
                expected_real,
            },
        });
    }
    Ok(DiscretenessCertificate::from_conditions(Criterion::ConjugateRoots, conditions))
}

/// Decider over the trace field: gamma and beta are algebraic integers, the field has
/// at most one complex place, and at every real embedding other than the identity
/// `-4 < beta < 0` and `gamma (gamma - beta) < 0`.
pub fn check_field_conditions(tf: &TraceField) -> Result<DiscretenessCertificate> {
    let k = &tf.field;
    if tf.gamma.is_zero() {
        return Err(Error::Invalid("gamma = 0 gives an elementary group".into()));
    }
    if tf.gamma == tf.beta {
        return Err(Error::GammaEqualsBeta);
    }
    let mut conditions = Vec::new();
    for (name, x) in [("gamma_integral", &tf.gamma), ("beta_integral", &tf.beta)] {
        conditions.push(Condition {
            id: name.into(),
            passed: x.is_algebraic_integer(),
            evidence: Evidence::Integrality { char_poly: x.char_poly().to_string() },
        });
    }
    let (r1, r2) = k.signature();
    conditions.push(Condition {
        id: "at_most_one_complex_place".into(),
        passed: r2 <= 1,
        evidence: Evidence::Signature { r1, r2 },
    });
    let x = tf.gamma.mul(&tf.gamma.sub(&tf.beta));
    let b4 = tf.beta.add_int(4);
    for (idx, _) in k.real_embeddings() {
        if r2 == 0 && idx == tf.identity {
            continue;
        }
        let ok = tf.beta.sign_at_real(idx)? == Ordering::Less
            && b4.sign_at_real(idx)? == Ordering::Greater
            && x.sign_at_real(idx)? == Ordering::Less;
        let bi = tf.beta.real_interval(idx, 40)?;
        let xi = x.real_interval(idx, 40)?;
        conditions.push(Condition {
            id: format!("signs_at_embedding_{}", idx),
            passed: ok,
            evidence: Evidence::Embedding {
                index: idx,
                beta: (bi.lo.to_f64(), bi.hi.to_f64()),
                gamma_gamma_minus_beta: (xi.lo.to_f64(), xi.hi.to_f64()),
            },
        });
    }
    Ok(DiscretenessCertificate::from_conditions(Criterion::FieldConditions, conditions))
}

/// Runs the polynomial decider appropriate to `n`.
pub fn certify_params(gp: &GroupParams) -> Result<DiscretenessCertificate> {
    match gp.n {
        3 | 4 | 6 => {
            let p = match &gp.poly {
                crate::params::GammaPoly::Univariate(p) => p.clone(),
                crate::params::GammaPoly::Bivariate(b) => b.at_beta_int(&Integer::from(rational_beta(gp.n).unwrap())),
            };
            check_univariate(&p, gp.gamma_box(), gp.n)
        }
        _ => check_conjugates(&gp.poly.as_bivariate(), &gp.gamma(), gp.gamma_is_real(), gp.n, gp.prec),
    }
}
