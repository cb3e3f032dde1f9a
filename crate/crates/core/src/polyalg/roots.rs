use super::sturm::{isolate_real_roots, refine_root, squarefree_decomposition};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::numeric::{float_to_rational, rational_approx, sqrt_upper, Cpx};
use rug::float::Round;
use rug::{Float, Rational};
use serde::Serialize;
use std::cmp::Ordering;

/// A certified enclosure of one root: exactly one root of `factor` lies in the disk.
#[derive(Clone, Debug)]
pub struct RootBox {
    pub center: Cpx,
    pub radius: Float,
    pub multiplicity: u32,
    pub is_real: bool,
    /// Isolating rational interval for a real root (degenerate for a rational root).
    pub interval: Option<(Rational, Rational)>,
    /// Squarefree factor of the input that this root belongs to.
    pub factor: IntPoly,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RootBoxSummary {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub multiplicity: u32,
    pub is_real: bool,
}

impl RootBox {
    pub fn summary(&self) -> RootBoxSummary {
        let (re, im) = self.center.to_f64();
        RootBoxSummary {
            re,
            im,
            radius: self.radius.to_f64(),
            multiplicity: self.multiplicity,
            is_real: self.is_real,
        }
    }

    pub fn prec(&self) -> u32 {
        self.center.prec()
    }

    /// Narrows the interval of a real root to width at most `2^-bits`.
    pub fn refine_real(&mut self, bits: u32) {
        if let Some((lo, hi)) = &self.interval {
            let (a, b) = refine_root(&self.factor, lo, hi, bits);
            let prec = self.prec().max(bits + 16);
            let mid = Rational::from(&a + &b) / 2u32;
            let half = Rational::from(&b - &a) / 2u32;
            self.center = Cpx::from_rational(&mid, prec);
            self.radius = Float::with_val_round(prec, &half, Round::Up).0;
            self.interval = Some((a, b));
        }
    }

    pub fn contains_approx(&self, re: f64, im: f64) -> f64 {
        let (cr, ci) = self.center.to_f64();
        ((cr - re).powi(2) + (ci - im).powi(2)).sqrt()
    }
}

/// Certified root isolation. Real roots come from Sturm bisection; non-real roots from
/// Aberth iteration certified by exact Weierstrass inclusion disks. The working
/// precision doubles until certification succeeds.
pub fn isolate_roots(p: &IntPoly, prec: u32) -> Result<Vec<RootBox>> {
    if p.deg() < 1 {
        return Err(Error::Degenerate);
    }
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(p) {
        out.extend(isolate_squarefree(&factor, mult, prec)?);
    }
    out.sort_by(|a, b| {
        let c = a.center.re.partial_cmp(&b.center.re).unwrap_or(Ordering::Equal);
        c.then(a.center.im.partial_cmp(&b.center.im).unwrap_or(Ordering::Equal))
    });
    Ok(out)
}

const MAX_PRECISION: u32 = 1 << 14;

fn isolate_squarefree(f: &IntPoly, mult: u32, prec: u32) -> Result<Vec<RootBox>> {
    let d = f.degree();
    let real_intervals = isolate_real_roots(f, prec / 2 + 8);
    let mut boxes: Vec<RootBox> = real_intervals
        .into_iter()
        .map(|(lo, hi)| real_box(f, mult, lo, hi, prec))
        .collect();
    let n_complex = d - boxes.len();
    if n_complex == 0 {
        return Ok(boxes);
    }
    let mut p = prec.max(64);
    loop {
        let approx = aberth(f, p);
        if let Some(c) = certify_nonreal(f, &approx, p, n_complex) {
            for (center, radius) in c {
                boxes.push(RootBox {
                    center: center.with_prec(prec.max(p)),
                    radius,
                    multiplicity: mult,
                    is_real: false,
                    interval: None,
                    factor: f.clone(),
                });
            }
            return Ok(boxes);
        }
        p *= 2;
        if p > MAX_PRECISION {
            return Err(Error::PrecisionExhausted(p / 2));
        }
    }
}

fn real_box(f: &IntPoly, mult: u32, lo: Rational, hi: Rational, prec: u32) -> RootBox {
    let mid = Rational::from(&lo + &hi) / 2u32;
    let half = Rational::from(&hi - &lo) / 2u32;
    RootBox {
        center: Cpx::from_rational(&mid, prec),
        radius: Float::with_val_round(prec, &half, Round::Up).0,
        multiplicity: mult,
        is_real: true,
        interval: Some((lo, hi)),
        factor: f.clone(),
    }
}

/// Root bound of Fujiwara type.
fn root_radius(f: &IntPoly, prec: u32) -> Float {
    let d = f.degree();
    let lc = Float::with_val(prec, f.lc()).abs();
    let mut best = Float::new(prec);
    for k in 1..=d {
        let c = Float::with_val(prec, f.coeff(d - k)).abs() / &lc;
        let mut r = if k == d { c / 2u32 } else { c };
        r = r.root(k as u32);
        if r > best {
            best = r;
        }
    }
    best * 2u32 + Float::with_val(prec, 1) / 1024u32
}

/// Simultaneous Aberth iteration for all roots of a squarefree polynomial.
pub fn aberth(f: &IntPoly, prec: u32) -> Vec<Cpx> {
    let d = f.degree();
    let lc = Float::with_val(prec, f.lc());
    let shift = Float::with_val(prec, f.coeff(d - 1)) / (lc * d as u32);
    let center = Cpx::real(-shift);
    let radius = root_radius(f, prec);
    let twopi = crate::numeric::pi(prec) * 2u32;
    let mut z: Vec<Cpx> = (0..d)
        .map(|k| {
            let ang = Float::with_val(prec, &twopi * k as u32) / d as u32 + Float::with_val(prec, 0.4);
            let (s, c) = ang.sin_cos(Float::new(prec));
            center.add(&Cpx::new(c * &radius, s * &radius))
        })
        .collect();
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 12));
    for _ in 0..(60 + 20 * d) {
        let mut max_step = Float::new(prec);
        for k in 0..d {
            let (pv, dp) = f.eval_cpx_with_derivative(&z[k]);
            if pv.is_zero() {
                continue;
            }
            let ratio = pv.div(&dp);
            let mut sum = Cpx::zero(prec);
            for j in 0..d {
                if j != k {
                    sum = sum.add(&z[k].sub(&z[j]).recip());
                }
            }
            let denom = Cpx::one(prec).sub(&ratio.mul(&sum));
            let w = ratio.div(&denom);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            let rel = w.abs() / (z[k].abs() + Float::with_val(prec, 1));
            if rel > max_step {
                max_step = rel;
            }
            z[k] = z[k].sub(&w);
        }
        if max_step < tol {
            break;
        }
    }
    z
}

#[derive(Clone)]
struct GaussQ {
    re: Rational,
    im: Rational,
}

impl GaussQ {
    fn from_cpx(z: &Cpx, bits: u32) -> GaussQ {
        GaussQ { re: rational_approx(&z.re, bits), im: rational_approx(&z.im, bits) }
    }
    fn sub(&self, o: &GaussQ) -> GaussQ {
        GaussQ { re: Rational::from(&self.re - &o.re), im: Rational::from(&self.im - &o.im) }
    }
    fn mul(&self, o: &GaussQ) -> GaussQ {
        let rr = Rational::from(&self.re * &o.re);
        let ii = Rational::from(&self.im * &o.im);
        let ri = Rational::from(&self.re * &o.im);
        let ir = Rational::from(&self.im * &o.re);
        GaussQ { re: rr - ii, im: ri + ir }
    }
    fn norm(&self) -> Rational {
        Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref())
    }
    fn eval(f: &IntPoly, z: &GaussQ) -> GaussQ {
        let mut acc = GaussQ { re: Rational::new(), im: Rational::new() };
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(z);
            acc.re += c;
        }
        acc
    }
}

/// Certifies the non-real roots among the Aberth approximations. Each disk
/// `D(z_i, d |W_i|)` with `W_i` the exact Weierstrass correction contains a root
/// whenever the disks are pairwise disjoint; a disk missing the real axis holds a
/// non-real root.
fn certify_nonreal(f: &IntPoly, approx: &[Cpx], prec: u32, expected: usize) -> Option<Vec<(Cpx, Float)>> {
    let d = approx.len();
    let bits = prec.saturating_sub(4);
    let zs: Vec<GaussQ> = approx.iter().map(|z| GaussQ::from_cpx(z, bits)).collect();
    let lc = Rational::from(f.lc());
    let mut r2 = Vec::with_capacity(d);
    for i in 0..d {
        let num = GaussQ::eval(f, &zs[i]);
        let mut den = GaussQ { re: lc.clone(), im: Rational::new() };
        for j in 0..d {
            if j != i {
                den = den.mul(&zs[i].sub(&zs[j]));
            }
        }
        let dn = den.norm();
        if dn == 0 {
            return None;
        }
        let w2 = num.norm() / dn;
        let r = sqrt_upper(&w2, bits) * Rational::from(d as u32);
        r2.push(r);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let s = Rational::from(&r2[i] + &r2[j]);
            if Rational::from(s.square_ref()) >= zs[i].sub(&zs[j]).norm() {
                return None;
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..d {
        let im2 = Rational::from(zs[i].im.square_ref());
        if Rational::from(r2[i].square_ref()) < im2 {
            let center = Cpx::new(Float::with_val(prec, &zs[i].re), Float::with_val(prec, &zs[i].im));
            let radius = Float::with_val_round(prec, &r2[i], Round::Up).0;
            out.push((center, radius));
        }
    }
    if out.len() == expected {
        Some(out)
    } else {
        None
    }
}

/// Exact rational value of a box center, used as an approximation for exact arithmetic.
pub fn center_rational(b: &RootBox) -> (Rational, Rational) {
    (float_to_rational(&b.center.re), float_to_rational(&b.center.im))
}

/// Index of the root nearest to `(re, im)`, if it is within `tol` and no other
/// root is within `2 * tol`.
pub fn match_root(roots: &[RootBox], re: f64, im: f64, tol: f64) -> Option<usize> {
    let mut dists: Vec<(f64, usize)> = roots.iter().enumerate().map(|(i, r)| (r.contains_approx(re, im), i)).collect();
    dists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    let (d0, i0) = *dists.first()?;
    if d0 > tol {
        return None;
    }
    if let Some(&(d1, _)) = dists.get(1) {
        if d1 <= 2.0 * tol {
            return None;
        }
    }
    Some(i0)
}
