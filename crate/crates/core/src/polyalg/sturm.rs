use super::{IntPoly, RatPoly};
use crate::error::{Error, Result};
use rug::{Integer, Rational};
use std::cmp::Ordering;

/// Squarefree decomposition over Q: pairs `(a_i, i)` with `p = c * prod a_i^i`,
/// each `a_i` primitive with positive leading coefficient.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if p.deg() <= 0 {
        return out;
    }
    let f = RatPoly::from_int(p);
    let fd = f.derivative();
    let a0 = f.gcd(&fd);
    let mut b = f.divrem(&a0).0;
    let c = fd.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.divrem(&a).0;
        let c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a.primitive_int(), i));
        }
        i += 1;
    }
    out
}

/// Product of the distinct irreducible factors, primitive.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let mut acc = IntPoly::one();
    for (a, _) in squarefree_decomposition(p) {
        acc = acc.mul(&a);
    }
    acc
}

pub fn is_squarefree(p: &IntPoly) -> bool {
    let f = RatPoly::from_int(p);
    f.gcd(&f.derivative()).deg() == 0
}

/// Sturm sequence with every member scaled by a positive rational.
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p.primitive_part_keep_sign(), p.derivative().primitive_part_keep_sign()];
    loop {
        let n = seq.len();
        let a = &seq[n - 2];
        let b = &seq[n - 1];
        if b.deg() <= 0 {
            break;
        }
        let r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        let delta = (a.deg() - b.deg() + 1) as u32;
        let lc_pow_negative = b.lc() < 0 && delta % 2 == 1;
        let next = if lc_pow_negative { r } else { r.neg() };
        seq.push(next.primitive_part_keep_sign());
    }
    seq
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

pub fn variations_at(seq: &[IntPoly], x: &Rational) -> usize {
    variations(seq.iter().map(|s| s.sign_at(x)))
}

pub fn variations_at_infinity(seq: &[IntPoly], positive: bool) -> usize {
    variations(seq.iter().map(|s| {
        let l = s.lc().cmp0();
        if positive || s.degree() % 2 == 0 {
            l
        } else {
            l.reverse()
        }
    }))
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &IntPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.deg() < 0 {
        return Err(Error::Degenerate);
    }
    if p.sign_at(lo) == Ordering::Equal {
        return Err(Error::EndpointIsRoot(lo.to_string()));
    }
    if p.sign_at(hi) == Ordering::Equal {
        return Err(Error::EndpointIsRoot(hi.to_string()));
    }
    if lo >= hi {
        return Ok(0);
    }
    let seq = sturm_sequence(p);
    Ok(variations_at(&seq, lo).saturating_sub(variations_at(&seq, hi)))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &IntPoly) -> usize {
    if p.deg() <= 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    variations_at_infinity(&seq, false).saturating_sub(variations_at_infinity(&seq, true))
}

/// An integer strictly larger than the modulus of every complex root.
pub fn cauchy_bound(p: &IntPoly) -> Integer {
    let lc = Integer::from(p.lc().abs_ref());
    let mut m = Integer::new();
    for c in &p.coeffs()[..p.degree()] {
        let a = Integer::from(c.abs_ref());
        if a > m {
            m = a;
        }
    }
    (m + &lc - 1u32) / &lc + 2u32
}

/// Disjoint isolating intervals for the real roots of a squarefree `p`, refined to
/// width at most `2^-bits`. Rational roots come back as degenerate intervals.
pub fn isolate_real_roots(p: &IntPoly, bits: u32) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    if p.deg() <= 0 {
        return out;
    }
    if p.deg() == 1 {
        let r = Rational::from((-p.coeff(0), p.coeff(1)));
        out.push((r.clone(), r));
        return out;
    }
    let seq = sturm_sequence(p);
    let b = Rational::from(cauchy_bound(p));
    let lo = Rational::from(-&b);
    let count = |x: &Rational| variations_at(&seq, x);
    let total = count(&lo).saturating_sub(count(&b));
    let mut stack = vec![(lo, b, total)];
    while let Some((a, c, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(refine_root(p, &a, &c, bits));
            continue;
        }
        let mid = Rational::from(&a + &c) / 2u32;
        if p.sign_at(&mid) == Ordering::Equal {
            let mut eps = Rational::from(&c - &a) / 4u32;
            loop {
                let l = Rational::from(&mid - &eps);
                let r = Rational::from(&mid + &eps);
                if p.sign_at(&l) != Ordering::Equal
                    && p.sign_at(&r) != Ordering::Equal
                    && count(&l) - count(&r) == 1
                {
                    out.push((mid.clone(), mid.clone()));
                    let nl = count(&a) - count(&l);
                    let nr = count(&r) - count(&c);
                    stack.push((a, l, nl));
                    stack.push((r, c, nr));
                    break;
                }
                eps /= 2u32;
            }
            continue;
        }
        let nl = count(&a) - count(&mid);
        let nr = n - nl;
        stack.push((a, mid.clone(), nl));
        stack.push((mid, c, nr));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Bisects an interval holding exactly one simple root until its width is at most `2^-bits`.
pub fn refine_root(p: &IntPoly, lo: &Rational, hi: &Rational, bits: u32) -> (Rational, Rational) {
    let target = Rational::from((Integer::from(1), Integer::from(1) << bits));
    let mut a = lo.clone();
    let mut c = hi.clone();
    if a == c {
        return (a, c);
    }
    let mut sa = p.sign_at(&a);
    if sa == Ordering::Equal {
        return (a.clone(), a);
    }
    if p.sign_at(&c) == Ordering::Equal {
        return (c.clone(), c);
    }
    while Rational::from(&c - &a) > target {
        let mid = Rational::from(&a + &c) / 2u32;
        let sm = p.sign_at(&mid);
        if sm == Ordering::Equal {
            return (mid.clone(), mid);
        }
        if sm == sa {
            a = mid;
            sa = sm;
        } else {
            c = mid;
        }
    }
    (a, c)
}

impl IntPoly {
    /// Divides by the (positive) content without changing the sign.
    pub fn primitive_part_keep_sign(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.content();
        self.div_exact_int(&g)
    }
}
