//! Local Hilbert symbols at the primes above a rational prime `q`.
//!
//! Primes whose reduction factor is simple are handled in the unramified
//! completion `Z_q[t]/(H)`, where `H` is the Hensel lift of that factor.
//! Primes hidden inside repeated factors are reported without a symbol.

use crate::error::Result;
use crate::numeric::valuation;
use crate::numfield::{p_maximal_order, FieldElem};
use crate::polyalg::fp::FpPoly;
use crate::polyalg::IntPoly;
use rug::ops::{Pow, RemRounding};
use rug::Integer;
use serde::Serialize;
use std::collections::HashSet;

/// How the local behaviour at a finite prime was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalMethod {
    /// Quadratic character of the residue field (odd unramified prime).
    ResidueCharacter,
    /// Isotropy of the norm form modulo 8 (dyadic unramified prime).
    DyadicIsotropy,
    /// Both entries are units at every prime above an odd `q`.
    UnitEntries,
    /// `q` does not divide the norm of the order discriminant.
    OrderDiscriminant,
    /// The global count of ramified places is even.
    Parity,
    /// Not decided.
    Open,
}

/// A finite prime of the base field with its local ramification, if decided.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalPlace {
    /// Rational prime below.
    pub q: u64,
    pub residue_degree: usize,
    /// `q^residue_degree`.
    pub norm: u64,
    pub ramified: Option<bool>,
    pub method: LocalMethod,
}

fn reduce(p: &IntPoly, m: &Integer) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|c| c.clone().rem_euc(m)).collect())
}

fn fp_to_int(p: &FpPoly) -> IntPoly {
    p.to_int()
}

/// Monic `H` with `H = h mod q` and `H | c mod q^m`, for `h` a simple factor of `c mod q`.
fn hensel_lift(c: &IntPoly, h: &FpPoly, q: u64, m: u32) -> IntPoly {
    let cb = FpPoly::from_int(c, q);
    let g = cb.div(h);
    let (_, s, t) = h.ext_gcd(&g);
    let qi = Integer::from(q);
    let mut big_h = fp_to_int(h);
    let mut big_g = fp_to_int(&g);
    let mut qk = qi.clone();
    for _ in 1..m {
        let diff = c.sub(&big_h.mul(&big_g));
        let e = FpPoly::from_int(&diff.div_exact_int(&qk), q);
        let te = t.mul(&e);
        let (quo, dh) = te.divrem(h);
        let dg = s.mul(&e).add(&quo.mul(&g));
        big_h = big_h.add(&fp_to_int(&dh).scale(&qk));
        big_g = big_g.add(&fp_to_int(&dg).scale(&qk));
        qk *= &qi;
        big_h = reduce(&big_h, &qk);
        big_g = reduce(&big_g, &qk);
    }
    big_h
}

/// `Z/q^m [t] / (H)`: a finite quotient of the unramified completion.
struct Completion {
    q: u64,
    modulus: Integer,
    h: IntPoly,
    hbar: FpPoly,
}

impl Completion {
    fn degree(&self) -> usize {
        self.h.degree()
    }

    fn elem(&self, a: &IntPoly) -> IntPoly {
        reduce(&a.pseudo_rem(&self.h), &self.modulus)
    }

    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        self.elem(&a.mul(b))
    }

    /// `(v, u)` with `a = q^v u`, `u` a unit; `None` when `a = 0` to working precision.
    fn split(&self, a: &IntPoly) -> Option<(u32, IntPoly)> {
        if a.is_zero() {
            return None;
        }
        let v = a.coeffs().iter().filter(|c| **c != 0).map(|c| valuation(c, self.q)).min()?;
        let scale = Integer::from(self.q).pow(v);
        Some((v, a.div_exact_int(&scale)))
    }

    /// Quadratic character of a unit in the residue field.
    fn character(&self, u: &IntPoly) -> i32 {
        let ub = FpPoly::from_int(u, self.q).rem(&self.hbar);
        let e = (Integer::from(self.q).pow(self.degree() as u32) - 1u32) / 2u32;
        if ub.powmod_poly(&e, &self.hbar).is_one() {
            1
        } else {
            -1
        }
    }

    fn odd_symbol(&self, a: &IntPoly, b: &IntPoly) -> Option<i32> {
        let (va, ua) = self.split(a)?;
        let (vb, ub) = self.split(b)?;
        let minus_one = self.elem(&IntPoly::constant(Integer::from(-1)));
        let mut s = 1;
        if (va * vb) % 2 == 1 {
            s *= self.character(&minus_one);
        }
        if vb % 2 == 1 {
            s *= self.character(&ua);
        }
        if va % 2 == 1 {
            s *= self.character(&ub);
        }
        Some(s)
    }

    fn dyadic_symbol(&self, a: &IntPoly, b: &IntPoly) -> Option<i32> {
        let (va, ua) = self.split(a)?;
        let (vb, ub) = self.split(b)?;
        let two = IntPoly::constant(Integer::from(2));
        let minus = |x: i64| IntPoly::constant(Integer::from(x));
        let (coeffs, unit) = match (va % 2, vb % 2) {
            (0, 0) => ([ua, ub, minus(-1)], [true, true, true]),
            (1, 0) => ([self.mul(&ua, &two), ub, minus(-1)], [false, true, true]),
            (0, 1) => ([ua, self.mul(&ub, &two), minus(-1)], [true, false, true]),
            _ => ([ua, ub, minus(-2)], [true, true, false]),
        };
        Some(if self.isotropic_mod_8(&coeffs, unit) { 1 } else { -1 })
    }

    /// Whether `sum c_i x_i^2` has a zero with some `x_i` a unit where `c_i` is a unit,
    /// searched over `x_i mod 4` with the form evaluated mod 8.
    fn isotropic_mod_8(&self, c: &[IntPoly; 3], unit: [bool; 3]) -> bool {
        let f = self.degree();
        let eight = Integer::from(8);
        let h8 = reduce(&self.h, &eight);
        let count = 4usize.pow(f as u32);
        let encode = |p: &IntPoly| -> usize {
            let mut k = 0usize;
            for i in (0..f).rev() {
                k = k * 8 + p.coeff(i).to_usize().unwrap_or(0);
            }
            k
        };
        let mut tables: Vec<Vec<(usize, bool)>> = Vec::with_capacity(3);
        for ci in c.iter() {
            let ci = reduce(ci, &eight);
            let mut t = Vec::with_capacity(count);
            for idx in 0..count {
                let mut digits = Vec::with_capacity(f);
                let mut k = idx;
                for _ in 0..f {
                    digits.push(Integer::from(k % 4));
                    k /= 4;
                }
                let x = IntPoly::new(digits);
                let is_unit = x.coeffs().iter().any(|d| d.is_odd());
                let sq = reduce(&x.mul(&x).pseudo_rem(&h8), &eight);
                let val = reduce(&ci.mul(&sq).pseudo_rem(&h8), &eight);
                t.push((encode(&val), is_unit));
            }
            tables.push(t);
        }
        let size = 8usize.pow(f as u32);
        let neg = |k: usize| -> usize {
            let mut out = 0usize;
            let mut pw = 1usize;
            let mut k = k;
            for _ in 0..f {
                out += ((8 - k % 8) % 8) * pw;
                k /= 8;
                pw *= 8;
            }
            out
        };
        let add = |x: usize, y: usize| -> usize {
            let (mut x, mut y) = (x, y);
            let mut out = 0usize;
            let mut pw = 1usize;
            for _ in 0..f {
                out += ((x % 8 + y % 8) % 8) * pw;
                x /= 8;
                y /= 8;
                pw *= 8;
            }
            out
        };
        let mut third_any = vec![false; size];
        let mut third_unit = vec![false; size];
        for &(v, u) in &tables[2] {
            third_any[v] = true;
            if u {
                third_unit[v] = true;
            }
        }
        for &(v1, u1) in &tables[0] {
            for &(v2, u2) in &tables[1] {
                let need = neg(add(v1, v2));
                let witnessed = (unit[0] && u1) || (unit[1] && u2);
                if (witnessed && third_any[need]) || (unit[2] && third_unit[need]) {
                    return true;
                }
            }
        }
        false
    }
}

/// Integral multiple `d^2 a` of a field element, as a polynomial in the generator.
fn integral_square_multiple(a: &FieldElem) -> IntPoly {
    let (num, den) = a.rep().to_int_with_denominator();
    num.scale(&den)
}

/// Local symbols at all primes above `q` for the algebra `(a, b)`.
pub fn places_above(a: &FieldElem, b: &FieldElem, q: u64) -> Result<Vec<LocalPlace>> {
    let k = a.field();
    let c = k.poly();
    let big_a = integral_square_multiple(a);
    let big_b = integral_square_multiple(b);
    let na = crate::numfield::FieldElem::from_poly(k, crate::polyalg::RatPoly::from_int(&big_a)).norm();
    let nb = crate::numfield::FieldElem::from_poly(k, crate::polyalg::RatPoly::from_int(&big_b)).norm();
    let va_total = valuation(&na.numer().clone().abs(), q);
    let vb_total = valuation(&nb.numer().clone().abs(), q);
    let m = va_total + vb_total + 8;
    let modulus = Integer::from(q).pow(m);
    let cbar = FpPoly::from_int(c, q);
    let factors = cbar.factor();
    let mut out = Vec::new();
    let mut known_degrees = Vec::new();
    let mut used_a = 0u32;
    let mut used_b = 0u32;
    for (h, mult) in &factors {
        if *mult != 1 {
            continue;
        }
        let f = h.degree();
        known_degrees.push(f);
        let big_h = hensel_lift(c, h, q, m);
        let w = Completion { q, modulus: modulus.clone(), h: big_h, hbar: h.clone() };
        let ea = w.elem(&big_a);
        let eb = w.elem(&big_b);
        if let (Some((x, _)), Some((y, _))) = (w.split(&ea), w.split(&eb)) {
            used_a += x * f as u32;
            used_b += y * f as u32;
        }
        let (symbol, method) = if q == 2 {
            (w.dyadic_symbol(&ea, &eb), LocalMethod::DyadicIsotropy)
        } else {
            (w.odd_symbol(&ea, &eb), LocalMethod::ResidueCharacter)
        };
        let norm = q.pow(f as u32);
        out.push(match symbol {
            Some(s) => LocalPlace { q, residue_degree: f, norm, ramified: Some(s == -1), method },
            None => LocalPlace { q, residue_degree: f, norm, ramified: None, method: LocalMethod::Open },
        });
    }
    if factors.iter().any(|(_, m)| *m > 1) {
        let mut hidden = p_maximal_order(c, q)?.residue_degrees();
        for f in &known_degrees {
            if let Some(pos) = hidden.iter().position(|x| x == f) {
                hidden.remove(pos);
            }
        }
        let units = q != 2 && used_a == va_total && used_b == vb_total;
        for f in hidden {
            let norm = q.pow(f as u32);
            out.push(if units {
                LocalPlace { q, residue_degree: f, norm, ramified: Some(false), method: LocalMethod::UnitEntries }
            } else {
                LocalPlace { q, residue_degree: f, norm, ramified: None, method: LocalMethod::Open }
            });
        }
    }
    out.sort_by_key(|p| (p.norm, p.ramified.map(|r| !r)));
    Ok(out)
}

/// Rational primes that can lie below a finite ramified place of `(a, b)`.
pub fn candidate_primes(a: &FieldElem, b: &FieldElem) -> Vec<u64> {
    let k = a.field();
    let mut set: HashSet<u64> = HashSet::new();
    set.insert(2);
    for x in [a, b] {
        let big = integral_square_multiple(x);
        let n = FieldElem::from_poly(k, crate::polyalg::RatPoly::from_int(&big)).norm();
        for (p, _) in crate::numeric::factor_integer(&n.numer().clone().abs()) {
            if let Some(p) = p.to_u64() {
                set.insert(p);
            }
        }
    }
    let mut v: Vec<u64> = set.into_iter().collect();
    v.sort_unstable();
    v
}

/// Norms of the primes above `q` that divide the integral element `x`, or `None`
/// when a prime inside a repeated factor of the defining polynomial may divide it.
pub fn prime_support_above(x: &FieldElem, q: u64) -> Result<Option<Vec<u64>>> {
    let k = x.field();
    let c = k.poly();
    let (num, den) = x.rep().to_int_with_denominator();
    if valuation(&den, q) > 0 {
        return Ok(None);
    }
    let nx = FieldElem::from_poly(k, crate::polyalg::RatPoly::from_int(&num)).norm();
    let total = valuation(&nx.numer().clone().abs(), q);
    if total == 0 {
        return Ok(Some(Vec::new()));
    }
    let m = total + 8;
    let modulus = Integer::from(q).pow(m);
    let factors = FpPoly::from_int(c, q).factor();
    let mut support = Vec::new();
    let mut used = 0u32;
    let mut known = Vec::new();
    for (h, mult) in &factors {
        if *mult != 1 {
            continue;
        }
        let f = h.degree();
        known.push(f);
        let w = Completion { q, modulus: modulus.clone(), h: hensel_lift(c, h, q, m), hbar: h.clone() };
        match w.split(&w.elem(&num)) {
            Some((v, _)) => {
                used += v * f as u32;
                if v > 0 {
                    support.push(q.pow(f as u32));
                }
            }
            None => return Ok(None),
        }
    }
    if used != total {
        let mut hidden = p_maximal_order(c, q)?.residue_degrees();
        for f in &known {
            if let Some(pos) = hidden.iter().position(|x| x == f) {
                hidden.remove(pos);
            }
        }
        if hidden.len() != 1 {
            return Ok(None);
        }
        support.push(q.pow(hidden[0] as u32));
    }
    support.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Some(support))
}
