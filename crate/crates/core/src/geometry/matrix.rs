//! `SL(2, C)` matrices at fixed precision and the normalized generator pair.

use crate::error::{Error, Result};
use crate::numeric::Cpx;
use rug::Float;

/// A 2x2 complex matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2C {
    pub a: Cpx,
    pub b: Cpx,
    pub c: Cpx,
    pub d: Cpx,
}

impl Mat2C {
    pub fn new(a: Cpx, b: Cpx, c: Cpx, d: Cpx) -> Mat2C {
        Mat2C { a, b, c, d }
    }

    pub fn identity(prec: u32) -> Mat2C {
        Mat2C::new(Cpx::one(prec), Cpx::zero(prec), Cpx::zero(prec), Cpx::one(prec))
    }

    pub fn from_f64(e: [(f64, f64); 4], prec: u32) -> Mat2C {
        let c = |(re, im): (f64, f64)| Cpx::from_f64(re, im, prec);
        Mat2C::new(c(e[0]), c(e[1]), c(e[2]), c(e[3]))
    }

    pub fn prec(&self) -> u32 {
        self.a.prec()
    }

    pub fn mul(&self, o: &Mat2C) -> Mat2C {
        Mat2C::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    pub fn add(&self, o: &Mat2C) -> Mat2C {
        Mat2C::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c), self.d.add(&o.d))
    }

    pub fn sub(&self, o: &Mat2C) -> Mat2C {
        Mat2C::new(self.a.sub(&o.a), self.b.sub(&o.b), self.c.sub(&o.c), self.d.sub(&o.d))
    }

    pub fn scale(&self, s: &Cpx) -> Mat2C {
        Mat2C::new(self.a.mul(s), self.b.mul(s), self.c.mul(s), self.d.mul(s))
    }

    pub fn trace(&self) -> Cpx {
        self.a.add(&self.d)
    }

    pub fn det(&self) -> Cpx {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// Adjugate, the inverse when `det = 1`.
    pub fn adjugate(&self) -> Mat2C {
        Mat2C::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn inverse(&self) -> Result<Mat2C> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Invalid("singular matrix".into()));
        }
        Ok(self.adjugate().scale(&det.recip()))
    }

    /// `self^e` for a unimodular matrix; negative exponents use the adjugate.
    pub fn pow(&self, e: i32) -> Mat2C {
        let base = if e < 0 { self.adjugate() } else { self.clone() };
        let mut acc = Mat2C::identity(self.prec());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Largest entrywise modulus of `self - o`.
    pub fn max_abs_diff(&self, o: &Mat2C) -> Float {
        let d = self.sub(o);
        [d.a.abs(), d.b.abs(), d.c.abs(), d.d.abs()].into_iter().fold(Float::new(self.prec()), |m, x| m.max(&x))
    }

    /// `tr(self o self^-1 o^-1) - 2` for unimodular matrices.
    pub fn commutator_parameter(&self, o: &Mat2C) -> Cpx {
        let k = self.mul(o).mul(&self.adjugate()).mul(&o.adjugate());
        k.trace().sub(&Cpx::from_f64(2.0, 0.0, self.prec()))
    }

    /// `tr^2 - 4`.
    pub fn beta(&self) -> Cpx {
        let t = self.trace();
        t.mul(&t).sub(&Cpx::from_f64(4.0, 0.0, self.prec()))
    }
}

/// Residual tolerance for realization checks at the given precision.
pub fn working_tolerance(prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 24)))
}

/// Generators `F = diag(u, 1/u)` with `(u + 1/u)^2 = beta + 4` and
/// `G = [[a, 1], [-1 - a^2, -a]]` with `a^2 = gamma/beta - 1`, so that
/// `beta(F) = beta`, `beta(G) = -4` and `tr[F, G] - 2 = gamma`.
pub fn realize(gamma: &Cpx, beta: &Cpx) -> Result<(Mat2C, Mat2C)> {
    let prec = gamma.prec().max(beta.prec());
    let gamma = gamma.with_prec(prec);
    let beta = beta.with_prec(prec);
    let four = Cpx::from_f64(4.0, 0.0, prec);
    let tol = working_tolerance(prec);
    if beta.abs() <= tol || beta.add(&four).abs() <= tol {
        return Err(Error::Invalid("beta must differ from 0 and -4".into()));
    }
    let u = beta.add(&four).sqrt().add(&beta.sqrt()).scale(&Float::with_val(prec, 0.5));
    let f = Mat2C::new(u.clone(), Cpx::zero(prec), Cpx::zero(prec), u.recip());
    let one = Cpx::one(prec);
    let a = gamma.div(&beta).sub(&one).sqrt();
    let g = Mat2C::new(a.clone(), one.clone(), one.add(&a.mul(&a)).neg(), a.neg());
    let scale = Float::with_val(prec, 1 + gamma.abs() + beta.abs());
    let bound = Float::with_val(prec, &tol * &scale);
    if f.beta().dist(&beta) > bound || f.commutator_parameter(&g).dist(&gamma) > bound {
        return Err(Error::PrecisionExhausted(prec));
    }
    Ok((f, g))
}
