//! Arbitrary-precision complex numbers and small exact helpers.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Clone, Debug, PartialEq)]
pub struct Cpx {
    pub re: Float,
    pub im: Float,
}

impl Cpx {
    pub fn new(re: Float, im: Float) -> Self {
        Cpx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cpx::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Cpx::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        Cpx::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cpx::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_int(v: &Integer, prec: u32) -> Self {
        Cpx::new(Float::with_val(prec, v), Float::new(prec))
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        Cpx::new(Float::with_val(prec, v), Float::new(prec))
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        Cpx::new(re, Float::new(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &Cpx) -> Cpx {
        let p = self.prec();
        Cpx::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }

    pub fn sub(&self, o: &Cpx) -> Cpx {
        let p = self.prec();
        Cpx::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }

    pub fn mul(&self, o: &Cpx) -> Cpx {
        let p = self.prec();
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        Cpx::new(rr - ii, ri + ir)
    }

    pub fn scale(&self, s: &Float) -> Cpx {
        let p = self.prec();
        Cpx::new(Float::with_val(p, &self.re * s), Float::with_val(p, &self.im * s))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        let b = Float::with_val(p, self.im.square_ref());
        a + b
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn conj(&self) -> Cpx {
        Cpx::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn neg(&self) -> Cpx {
        let p = self.prec();
        Cpx::new(Float::with_val(p, -&self.re), Float::with_val(p, -&self.im))
    }

    pub fn recip(&self) -> Cpx {
        let n = self.norm_sqr();
        let p = self.prec();
        Cpx::new(Float::with_val(p, &self.re / &n), Float::with_val(p, -&self.im) / &n)
    }

    pub fn div(&self, o: &Cpx) -> Cpx {
        self.mul(&o.recip())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Principal square root; the negative real axis maps to the positive imaginary axis.
    pub fn sqrt(&self) -> Cpx {
        let p = self.prec();
        let r = self.abs();
        let re = Float::with_val(p, &r + &self.re) / 2u32;
        let im = Float::with_val(p, &r - &self.re) / 2u32;
        let re = re.max(&Float::new(p)).sqrt();
        let mut im = im.max(&Float::new(p)).sqrt();
        if self.im.is_sign_negative() && !self.im.is_zero() {
            im = -im;
        }
        Cpx::new(re, im)
    }

    pub fn pow_u(&self, e: u32) -> Cpx {
        let mut acc = Cpx::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn dist(&self, o: &Cpx) -> Float {
        self.sub(o).abs()
    }

    pub fn with_prec(&self, prec: u32) -> Cpx {
        Cpx::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }
}

impl fmt::Display for Cpx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        f.write_str(&format_complex(re, im, 6))
    }
}

/// Formats `re + im i` with the given number of decimals, dropping a zero imaginary part.
pub fn format_complex(re: f64, im: f64, decimals: usize) -> String {
    let tiny = 0.5 * 10f64.powi(-(decimals as i32));
    let re = if re.abs() < tiny { 0.0 } else { re };
    if im.abs() < tiny {
        format!("{:.*}", decimals, re)
    } else if re == 0.0 {
        format!("{:.*}i", decimals, im)
    } else if im < 0.0 {
        format!("{:.*}-{:.*}i", decimals, re, decimals, -im)
    } else {
        format!("{:.*}+{:.*}i", decimals, re, decimals, im)
    }
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Exact rational value of a finite float.
pub fn float_to_rational(x: &Float) -> Rational {
    x.to_rational().unwrap_or_default()
}

/// A rational upper bound for `sqrt(q)` with relative slack about `2^-bits`.
pub fn sqrt_upper(q: &Rational, bits: u32) -> Rational {
    if q.cmp0() != Ordering::Greater {
        return Rational::new();
    }
    let num = q.numer();
    let den = q.denom();
    let scale = Integer::from(1) << (2 * bits);
    let prod = Integer::from(num * den) * &scale;
    let s = prod.sqrt() + 1u32;
    Rational::from((s, Integer::from(den * (Integer::from(1) << bits))))
}

/// A rational lower bound for `sqrt(q)`.
pub fn sqrt_lower(q: &Rational, bits: u32) -> Rational {
    if q.cmp0() != Ordering::Greater {
        return Rational::new();
    }
    let num = q.numer();
    let den = q.denom();
    let scale = Integer::from(1) << (2 * bits);
    let prod = Integer::from(num * den) * &scale;
    let s = prod.sqrt();
    Rational::from((s, Integer::from(den * (Integer::from(1) << bits))))
}

/// Rational approximation of `x` accurate to about `2^-bits`, with small numerators.
pub fn rational_approx(x: &Float, bits: u32) -> Rational {
    let scale = Integer::from(1) << bits;
    let y = Float::with_val(x.prec().max(bits + 64), x * &scale);
    let n = y.round().to_integer().unwrap_or_default();
    Rational::from((n, scale))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64()
}

pub fn int_pow(base: u64, e: u32) -> Integer {
    Integer::from(base).pow(e)
}

/// Prime factorization by trial division up to `10^6`. A remaining cofactor is
/// reported as prime when it passes a probabilistic test or is a prime square;
/// anything else is returned as a single (composite) entry.
pub fn factor_integer(n: &Integer) -> Vec<(Integer, u32)> {
    let mut out = Vec::new();
    let mut m = Integer::from(n.abs_ref());
    if m <= 1 {
        return out;
    }
    let mut d: u64 = 2;
    while d <= 1_000_000 {
        let di = Integer::from(d);
        if Integer::from(&di * &di) > m {
            break;
        }
        if m.is_divisible_u(d as u32) {
            let e = m.remove_factor_mut(&di);
            out.push((di, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        if m.is_probably_prime(30) != rug::integer::IsPrime::No {
            out.push((m, 1));
        } else if m.is_perfect_square() {
            let r = Integer::from(m.sqrt_ref());
            out.push((r, 2));
        } else {
            out.push((m, 1));
        }
    }
    out.sort();
    out
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &Integer, p: u64) -> u32 {
    if *n == 0 {
        return u32::MAX;
    }
    let mut m = Integer::from(n.abs_ref());
    m.remove_factor_mut(&Integer::from(p))
}

/// Serializes an integer as a JSON number when it fits in `i64`, else as a decimal string.
pub fn serialize_integer<S: serde::Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// Serializes a rational as a decimal string `p/q`.
pub fn serialize_rational<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
