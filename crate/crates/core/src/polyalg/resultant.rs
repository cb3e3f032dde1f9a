//! Subresultant pseudo-remainder sequences over exact integral domains.

use super::{BivarIntPoly, IntPoly};
use crate::error::{Error, Result};
use rug::Integer;

/// An integral domain with exact division, enough to run the subresultant PRS.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Self;

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl ExactRing for Integer {
    fn zero() -> Self {
        Integer::new()
    }
    fn one() -> Self {
        Integer::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Self {
        Integer::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Integer::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Integer::from(self * o)
    }
    fn neg(&self) -> Self {
        Integer::from(-self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        Integer::from(self.div_exact_ref(o))
    }
}

impl ExactRing for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        IntPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        IntPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        IntPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        IntPoly::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        IntPoly::div_exact(self, o).expect("inexact division in subresultant sequence")
    }
}

fn trim<R: ExactRing>(mut v: Vec<R>) -> Vec<R> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn deg<R: ExactRing>(v: &[R]) -> isize {
    v.len() as isize - 1
}

fn prem<R: ExactRing>(a: &[R], b: &[R]) -> Vec<R> {
    let db = deg(b);
    let d = b.last().unwrap().clone();
    let mut e = (deg(a) - db + 1) as usize;
    let mut r: Vec<R> = a.to_vec();
    while !r.is_empty() && deg(&r) >= db {
        let c = r.last().unwrap().clone();
        let shift = (deg(&r) - db) as usize;
        let mut next: Vec<R> = r.iter().map(|x| x.mul(&d)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bj.mul(&c));
        }
        r = trim(next);
        e -= 1;
    }
    let f = d.pow(e);
    trim(r.into_iter().map(|x| x.mul(&f)).collect())
}

/// Resultant `Res(a, b) = lc(a)^deg(b) * prod b(alpha)` over the roots of `a`.
pub fn resultant_generic<R: ExactRing>(a: &[R], b: &[R]) -> R {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let mut negate = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let sign = |x: R, neg: bool| if neg { x.neg() } else { x };
    if deg(&b) == 0 {
        return sign(b[0].pow(deg(&a) as usize), negate);
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = (deg(&a) - deg(&b)) as usize;
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = trim(r.into_iter().map(|x| x.div_exact(&divisor)).collect());
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1))
        };
        if deg(&b) <= 0 {
            break;
        }
    }
    if b.is_empty() {
        return R::zero();
    }
    let da = deg(&a) as usize;
    let lb = b[0].clone();
    let res = if da == 0 {
        R::one()
    } else {
        lb.pow(da).div_exact(&h.pow(da - 1))
    };
    sign(res, negate)
}

pub fn resultant(a: &IntPoly, b: &IntPoly) -> Integer {
    resultant_generic(a.coeffs(), b.coeffs())
}

/// `disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPoly) -> Integer {
    let n = p.degree();
    if n < 1 {
        return Integer::new();
    }
    if n == 1 {
        return Integer::from(1);
    }
    let r = resultant(p, &p.derivative());
    let mut d = r.div_exact(&p.lc());
    if (n * (n - 1) / 2) % 2 == 1 {
        d = -d;
    }
    d
}

/// `Res_beta(m(beta), p(z, beta))` as a polynomial in `z`.
///
/// For monic `m` this is the product of `p(z, beta_i)` over the roots of `m`.
pub fn resultant_in_beta(m: &IntPoly, p: &BivarIntPoly) -> Result<IntPoly> {
    if m.deg() < 1 {
        return Err(Error::Degenerate);
    }
    if !m.is_monic() {
        return Err(Error::NotMonic(m.to_string()));
    }
    let a: Vec<IntPoly> = m.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
    let b = p.as_poly_in_beta();
    if b.is_empty() {
        return Ok(IntPoly::zero());
    }
    Ok(resultant_generic(&a, &b))
}

/// Resultant of two polynomials whose coefficients lie in `Z[z]`.
pub fn resultant_poly_coeffs(a: &[IntPoly], b: &[IntPoly]) -> IntPoly {
    resultant_generic(a, b)
}
