//! Parameter triples `(gamma, beta, -4)`: the beta table, its Galois conjugates,
//! selection of gamma among polynomial roots and the four-element symmetry orbit.

use crate::error::{Error, Result};
use crate::numeric::{pi, Cpx};
use crate::numfield::{gen, FieldElem, NumberField};
use crate::polyalg::roots::match_root;
use crate::polyalg::{isolate_roots, minimal_factor_at_root, resultant_in_beta, BivarIntPoly, IntPoly, RootBox};
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Minimal polynomial over Q of `beta = -4 sin^2(pi/n)`.
pub fn beta_min_poly(n: u32) -> Result<IntPoly> {
    let c: &[i64] = match n {
        3 => &[3, 1],
        4 => &[2, 1],
        5 => &[5, 5, 1],
        6 => &[1, 1],
        7 => &[7, 14, 7, 1],
        _ => return Err(Error::UnsupportedOrder(n)),
    };
    Ok(IntPoly::from_i64(c))
}

/// `-4 sin^2(k pi / n)`.
pub fn beta_k_value(n: u32, k: u32, prec: u32) -> Float {
    let x = pi(prec) * k / n;
    let s = x.sin();
    let s2 = Float::with_val(prec, s.square_ref());
    s2 * (-4i32)
}

/// The integer `beta` for `n` in {3, 4, 6}.
pub fn rational_beta(n: u32) -> Option<i64> {
    match n {
        3 => Some(-3),
        4 => Some(-2),
        6 => Some(-1),
        _ => None,
    }
}

/// One Galois conjugate `beta_k`, with an isolating interval of the minimal polynomial.
#[derive(Clone, Debug)]
pub struct BetaConjugate {
    pub k: u32,
    pub value: Float,
    pub root: RootBox,
}

impl BetaConjugate {
    pub fn interval(&self) -> (Rational, Rational) {
        self.root.interval.clone().expect("beta conjugates are real")
    }

    /// Isolating interval refined to width at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> (Rational, Rational) {
        let mut r = self.root.clone();
        r.refine_real(bits);
        r.interval.expect("beta conjugates are real")
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// All conjugates `beta_k`, `1 <= k <= n/2`, `(k, n) = 1`, in decreasing order, so the
/// designated value `beta_1` comes first.
pub fn galois_conjugates_beta(n: u32, prec: u32) -> Result<Vec<BetaConjugate>> {
    let m = beta_min_poly(n)?;
    let mut roots = isolate_roots(&m, prec)?;
    if roots.iter().any(|r| !r.is_real) || roots.len() != m.degree() {
        return Err(Error::Invalid(format!("minimal polynomial {} of beta is not totally real", m)));
    }
    roots.sort_by(|a, b| b.center.re.partial_cmp(&a.center.re).unwrap_or(Ordering::Equal));
    let ks: Vec<u32> = (1..=n / 2).filter(|&k| gcd_u32(k, n) == 1).collect();
    if ks.len() != roots.len() {
        return Err(Error::Invalid("conjugate count mismatch".into()));
    }
    let mut out = Vec::new();
    for (k, root) in ks.into_iter().zip(roots) {
        let value = beta_k_value(n, k, prec);
        let (lo, hi) = root.interval.clone().unwrap();
        let v = crate::numeric::float_to_rational(&value);
        let tol = Rational::from((1, 1u64 << 40));
        if v < Rational::from(&lo - &tol) || v > Rational::from(&hi + &tol) {
            return Err(Error::Invalid(format!("beta_{} does not match its isolating interval", k)));
        }
        if !(lo > -4 && hi < 0) {
            return Err(Error::Invalid(format!("beta_{} outside (-4, 0)", k)));
        }
        out.push(BetaConjugate { k, value, root });
    }
    Ok(out)
}

/// Canonical representative of `{gamma, beta - gamma, conj gamma, beta - conj gamma}`
/// with `Re >= beta/2` and `Im >= 0`, ties broken by lexicographic maximality of
/// `(Re, Im)`. Returns the representative and the distinct orbit members.
pub fn normalize_symmetry(gamma: &Cpx, beta: &Float) -> (Cpx, Vec<Cpx>) {
    let prec = gamma.prec();
    let b = Cpx::real(Float::with_val(prec, beta));
    let cands = [gamma.clone(), b.sub(gamma), gamma.conj(), b.sub(&gamma.conj())];
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2));
    let mut orbit: Vec<Cpx> = Vec::new();
    for c in &cands {
        if !orbit.iter().any(|o| o.dist(c) <= tol) {
            orbit.push(c.clone());
        }
    }
    let half = Float::with_val(prec, beta / 2u32);
    let lower_re = Float::with_val(prec, &half - &tol);
    let lower_im = Float::with_val(prec, -&tol);
    let mut best: Option<Cpx> = None;
    for c in &orbit {
        if c.re < lower_re || c.im < lower_im {
            continue;
        }
        let better = match &best {
            None => true,
            Some(bc) => {
                let dr = Float::with_val(prec, &c.re - &bc.re);
                if dr > tol {
                    true
                } else if dr < -tol.clone() {
                    false
                } else {
                    c.im > bc.im
                }
            }
        };
        if better {
            best = Some(c.clone());
        }
    }
    (best.unwrap_or_else(|| gamma.clone()), orbit)
}

/// Polynomial data for gamma: univariate `p(z)` or bivariate `p(z, beta)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaPoly {
    Univariate(IntPoly),
    Bivariate(BivarIntPoly),
}

impl GammaPoly {
    pub fn as_bivariate(&self) -> BivarIntPoly {
        match self {
            GammaPoly::Univariate(p) => BivarIntPoly::from_univariate(p),
            GammaPoly::Bivariate(p) => p.clone(),
        }
    }

    pub fn deg_z(&self) -> usize {
        match self {
            GammaPoly::Univariate(p) => p.degree(),
            GammaPoly::Bivariate(p) => p.deg_z().max(0) as usize,
        }
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaPoly::Univariate(p) => write!(f, "{}", p),
            GammaPoly::Bivariate(p) => write!(f, "{}", p),
        }
    }
}

/// A parameter triple `(gamma, beta, -4)` with gamma selected as a certified root.
#[derive(Clone, Debug)]
pub struct GroupParams {
    pub n: u32,
    pub poly: GammaPoly,
    /// `p(z)` for integer beta, else the product of `p(z, beta_k)` over all conjugates.
    pub q: IntPoly,
    pub q_roots: Vec<RootBox>,
    pub gamma_index: usize,
    /// Minimal polynomial of gamma over Q.
    pub min_poly: IntPoly,
    pub betas: Vec<BetaConjugate>,
    pub prec: u32,
}

/// The trace field `Q(gamma, beta)` with gamma as its generator.
#[derive(Clone, Debug)]
pub struct TraceField {
    pub field: Arc<NumberField>,
    pub gamma: FieldElem,
    pub beta: FieldElem,
    /// Index of the embedding sending the generator to the selected gamma.
    pub identity: usize,
}

/// Matching radius for four-decimal approximations of gamma.
pub const GAMMA_MATCH_TOL: f64 = 2e-3;

impl GroupParams {
    pub fn new(n: u32, poly: GammaPoly, gamma_approx: (f64, f64), prec: u32) -> Result<GroupParams> {
        let m = beta_min_poly(n)?;
        let betas = galois_conjugates_beta(n, prec)?;
        let q = match (&poly, rational_beta(n)) {
            (GammaPoly::Univariate(p), _) => {
                if rational_beta(n).is_some() {
                    p.clone()
                } else {
                    resultant_in_beta(&m, &BivarIntPoly::from_univariate(p))?
                }
            }
            (GammaPoly::Bivariate(p), Some(b)) => p.at_beta_int(&Integer::from(b)),
            (GammaPoly::Bivariate(p), None) => resultant_in_beta(&m, p)?,
        };
        if !q.is_monic() {
            return Err(Error::NotMonic(q.to_string()));
        }
        let q_roots = isolate_roots(&q, prec)?;
        let (re, im) = gamma_approx;
        let mut gamma_index = None;
        for tol in [1e-6, 1e-4, GAMMA_MATCH_TOL] {
            if let Some(i) = match_root(&q_roots, re, im.abs(), tol) {
                gamma_index = Some(i);
                break;
            }
        }
        let gamma_index = gamma_index.ok_or_else(|| Error::GammaNotMatched(format!("{}+{}i", re, im)))?;
        let min_poly = minimal_factor_at_root(&q_roots, gamma_index)?;
        let params = GroupParams { n, poly, q, q_roots, gamma_index, min_poly, betas, prec };
        if params.min_poly == IntPoly::x() {
            return Err(Error::Invalid("gamma = 0 gives an elementary group".into()));
        }
        if params.min_poly == m && params.gamma_box().is_real {
            let g = params.gamma().re.to_f64();
            if (g - params.beta_f64()).abs() < 1e-12 {
                return Err(Error::GammaEqualsBeta);
            }
        }
        if let GammaPoly::Bivariate(p) = &params.poly {
            let b = Cpx::real(params.betas[0].value.clone());
            let r = p.eval_cpx(&params.gamma(), &b).abs().to_f64();
            if r > 1e-8 {
                return Err(Error::GammaNotMatched(format!("gamma is not a root of p(z, beta_1) (residual {:e})", r)));
            }
        }
        Ok(params)
    }

    pub fn gamma_box(&self) -> &RootBox {
        &self.q_roots[self.gamma_index]
    }

    /// Gamma with non-negative imaginary part.
    pub fn gamma(&self) -> Cpx {
        self.gamma_box().center.clone()
    }

    pub fn gamma_is_real(&self) -> bool {
        self.gamma_box().is_real
    }

    pub fn beta(&self) -> &Float {
        &self.betas[0].value
    }

    pub fn beta_f64(&self) -> f64 {
        self.betas[0].to_f64()
    }

    pub fn beta_min_poly(&self) -> IntPoly {
        beta_min_poly(self.n).expect("order validated at construction")
    }

    /// `Q(gamma, beta)`, defined by the minimal polynomial of gamma, with beta expressed in it.
    pub fn trace_field(&self) -> Result<TraceField> {
        let field = NumberField::new(self.min_poly.clone(), self.prec)?;
        let gamma = gen(&field);
        let (gr, gi) = self.gamma().to_f64();
        let identity = field.embedding_near(gr, gi);
        let beta = match rational_beta(self.n) {
            Some(b) => FieldElem::from_int(&field, b),
            None => self.beta_in_field(&field, &gamma, identity)?,
        };
        Ok(TraceField { field, gamma, beta, identity })
    }

    /// Solves `gcd(m(beta), p(gamma, beta)) = beta - b` over `K[beta]`.
    fn beta_in_field(&self, k: &Arc<NumberField>, gamma: &FieldElem, identity: usize) -> Result<FieldElem> {
        let m: Vec<FieldElem> = self
            .beta_min_poly()
            .coeffs()
            .iter()
            .map(|c| FieldElem::from_rational(k, Rational::from(c)))
            .collect();
        let p = self.poly.as_bivariate();
        let in_beta: Vec<FieldElem> = p
            .as_poly_in_beta()
            .iter()
            .map(|cz| {
                let mut acc = FieldElem::from_int(k, 0);
                for c in cz.coeffs().iter().rev() {
                    acc = acc.mul(gamma).add(&FieldElem::from_rational(k, Rational::from(c)));
                }
                acc
            })
            .collect();
        let g = field_poly_gcd(m, in_beta)?;
        if g.len() != 2 {
            return Err(Error::BetaNotInField(format!(
                "gcd over K[beta] has degree {}",
                g.len() as isize - 1
            )));
        }
        let b = g[0].neg().div(&g[1])?;
        let bv = b.embed(identity, self.prec).re.to_f64();
        if (bv - self.beta_f64()).abs() > 1e-8 {
            return Err(Error::BetaNotInField("recovered beta has the wrong embedding".into()));
        }
        Ok(b)
    }
}

fn trim(mut v: Vec<FieldElem>) -> Vec<FieldElem> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Monic gcd of two polynomials over a number field (ascending coefficients).
fn field_poly_gcd(a: Vec<FieldElem>, b: Vec<FieldElem>) -> Result<Vec<FieldElem>> {
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        let r = field_poly_rem(&a, &b)?;
        a = b;
        b = r;
    }
    if a.is_empty() {
        return Ok(a);
    }
    let lc = a.last().unwrap().inverse()?;
    Ok(a.iter().map(|c| c.mul(&lc)).collect())
}

fn field_poly_rem(a: &[FieldElem], b: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inverse()?;
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let f = r[top].mul(&inv);
        let shift = top - db;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&f.mul(c));
        }
        r.pop();
        r = trim(r);
    }
    Ok(r)
}
