use crate::polyalg::RatPoly;
use rug::Rational;
use std::cmp::Ordering;

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RInterval { lo: x.clone(), hi: x }
    }

    pub fn add(&self, o: &RInterval) -> RInterval {
        RInterval::new(Rational::from(&self.lo + &o.lo), Rational::from(&self.hi + &o.hi))
    }

    pub fn sub(&self, o: &RInterval) -> RInterval {
        RInterval::new(Rational::from(&self.lo - &o.hi), Rational::from(&self.hi - &o.lo))
    }

    pub fn mul(&self, o: &RInterval) -> RInterval {
        let c = [
            Rational::from(&self.lo * &o.lo),
            Rational::from(&self.lo * &o.hi),
            Rational::from(&self.hi * &o.lo),
            Rational::from(&self.hi * &o.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RInterval::new(lo, hi)
    }

    pub fn add_scalar(&self, c: &Rational) -> RInterval {
        RInterval::new(Rational::from(&self.lo + c), Rational::from(&self.hi + c))
    }

    /// Sign if the interval excludes zero (or is the point zero).
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo > 0 {
            Some(Ordering::Greater)
        } else if self.hi < 0 {
            Some(Ordering::Less)
        } else if self.lo == 0 && self.hi == 0 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn mid(&self) -> Rational {
        Rational::from(&self.lo + &self.hi) / 2u32
    }

    /// Strictly inside `(a, b)`.
    pub fn inside_open(&self, a: &Rational, b: &Rational) -> bool {
        self.lo > *a && self.hi < *b
    }
}

/// Horner evaluation of a rational polynomial over an interval.
pub fn eval_interval(p: &RatPoly, x: &RInterval) -> RInterval {
    let mut acc = RInterval::point(Rational::new());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_scalar(c);
    }
    acc
}
