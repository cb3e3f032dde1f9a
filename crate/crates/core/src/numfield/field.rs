use super::interval::{eval_interval, RInterval};
use super::order::{field_discriminant_of, FieldDiscriminant};
use crate::error::{Error, Result};
use crate::numeric::Cpx;
use crate::polyalg::resultant::resultant_poly_coeffs;
use crate::polyalg::sturm::refine_root;
use crate::polyalg::{isolate_roots, minimality_check, resultant, squarefree_part, IntPoly, RatPoly, RootBox};
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// `Q[z]/(f)` for a monic irreducible integer polynomial `f`.
#[derive(Debug)]
pub struct NumberField {
    poly: IntPoly,
    poly_q: RatPoly,
    embeddings: Vec<Embedding>,
    r1: usize,
    r2: usize,
}

/// One embedding into C, up to complex conjugation.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub root: RootBox,
    pub is_real: bool,
}

impl NumberField {
    pub fn new(poly: IntPoly, prec: u32) -> Result<Arc<NumberField>> {
        if !poly.is_monic() {
            return Err(Error::NotMonic(poly.to_string()));
        }
        if !minimality_check(&poly)?.is_irreducible() {
            return Err(Error::NotIrreducible(poly.to_string()));
        }
        let roots = isolate_roots(&poly, prec)?;
        let mut real: Vec<RootBox> = roots.iter().filter(|r| r.is_real).cloned().collect();
        let mut cplx: Vec<RootBox> = roots.iter().filter(|r| !r.is_real && r.center.im > 0).cloned().collect();
        real.sort_by(|a, b| a.center.re.partial_cmp(&b.center.re).unwrap_or(Ordering::Equal));
        cplx.sort_by(|a, b| a.center.re.partial_cmp(&b.center.re).unwrap_or(Ordering::Equal));
        let r1 = real.len();
        let r2 = cplx.len();
        let embeddings = real
            .into_iter()
            .map(|root| Embedding { root, is_real: true })
            .chain(cplx.into_iter().map(|root| Embedding { root, is_real: false }))
            .collect();
        Ok(Arc::new(NumberField { poly_q: RatPoly::from_int(&poly), poly, embeddings, r1, r2 }))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn is_totally_real(&self) -> bool {
        self.r2 == 0
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    pub fn real_embeddings(&self) -> impl Iterator<Item = (usize, &Embedding)> {
        self.embeddings.iter().enumerate().filter(|(_, e)| e.is_real)
    }

    pub fn discriminant(&self) -> Result<FieldDiscriminant> {
        field_discriminant_of(&self.poly)
    }

    /// Index of the embedding whose image of the generator is nearest `(re, im)`,
    /// identifying complex conjugates.
    pub fn embedding_near(&self, re: f64, im: f64) -> usize {
        let mut best = 0;
        let mut bd = f64::INFINITY;
        for (i, e) in self.embeddings.iter().enumerate() {
            let d = e.root.contains_approx(re, im.abs());
            if d < bd {
                bd = d;
                best = i;
            }
        }
        best
    }
}

pub fn gen(k: &Arc<NumberField>) -> FieldElem {
    FieldElem::from_poly(k, RatPoly::x())
}

/// Element of a number field, stored as a polynomial of degree below `[K:Q]`.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<NumberField>,
    rep: RatPoly,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({})", self.rep)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.field, &o.field) && self.rep == o.rep
    }
}

impl FieldElem {
    pub fn from_poly(k: &Arc<NumberField>, p: RatPoly) -> FieldElem {
        let rep = if p.deg() >= k.degree() as isize { p.rem(&k.poly_q) } else { p };
        FieldElem { field: k.clone(), rep }
    }

    pub fn from_int(k: &Arc<NumberField>, c: i64) -> FieldElem {
        FieldElem::from_poly(k, RatPoly::constant(Rational::from(c)))
    }

    pub fn from_rational(k: &Arc<NumberField>, c: Rational) -> FieldElem {
        FieldElem::from_poly(k, RatPoly::constant(c))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        FieldElem { field: self.field.clone(), rep: self.rep.add(&o.rep) }
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        FieldElem { field: self.field.clone(), rep: self.rep.sub(&o.rep) }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem { field: self.field.clone(), rep: self.rep.neg() }
    }

    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        FieldElem::from_poly(&self.field, self.rep.mul(&o.rep))
    }

    pub fn add_int(&self, c: i64) -> FieldElem {
        self.add(&FieldElem::from_int(&self.field, c))
    }

    pub fn scale(&self, c: &Rational) -> FieldElem {
        FieldElem { field: self.field.clone(), rep: self.rep.scale(c) }
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut acc = FieldElem::from_int(&self.field, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (g, s, _) = self.rep.ext_gcd(&self.field.poly_q);
        debug_assert_eq!(g.degree(), 0);
        Ok(FieldElem::from_poly(&self.field, s))
    }

    pub fn div(&self, o: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Numerical image under an embedding.
    pub fn embed(&self, idx: usize, prec: u32) -> Cpx {
        let z = self.field.embeddings[idx].root.center.with_prec(prec);
        let mut acc = Cpx::zero(prec);
        for c in self.rep.coeffs().iter().rev() {
            acc = acc.mul(&z).add(&Cpx::from_rational(c, prec));
        }
        acc
    }

    /// `(N, D)` with `rep = N / D`.
    fn int_rep(&self) -> (IntPoly, Integer) {
        self.rep.to_int_with_denominator()
    }

    /// Characteristic polynomial of multiplication by `self`, monic of degree `[K:Q]`.
    pub fn char_poly(&self) -> RatPoly {
        let n = self.field.degree();
        let (num, den) = self.int_rep();
        let a: Vec<IntPoly> = self.field.poly.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
        let mut b: Vec<IntPoly> = (0..(num.degree() + 1).max(1))
            .map(|j| IntPoly::constant(Integer::from(-num.coeff(j))))
            .collect();
        b[0] = IntPoly::new(vec![Integer::from(-num.coeff(0)), den.clone()]);
        let r = resultant_poly_coeffs(&a, &b);
        let scale = Rational::from((1, den.pow(n as u32)));
        RatPoly::new(r.coeffs().iter().map(|c| Rational::from(c) * &scale).collect())
    }

    pub fn min_poly(&self) -> IntPoly {
        let (cp, _) = self.char_poly().to_int_with_denominator();
        squarefree_part(&cp)
    }

    pub fn norm(&self) -> Rational {
        let n = self.field.degree() as u32;
        let (num, den) = self.int_rep();
        if num.is_zero() {
            return Rational::new();
        }
        let r = resultant(&self.field.poly, &num);
        Rational::from((r, den.pow(n)))
    }

    pub fn trace(&self) -> Rational {
        let cp = self.char_poly();
        let n = self.field.degree();
        -cp.coeff(n - 1)
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.char_poly().is_integral()
    }

    /// An enclosure of the image under a real embedding, of width at most `2^-bits`
    /// where achievable by refining the root interval.
    pub fn real_interval(&self, idx: usize, bits: u32) -> Result<RInterval> {
        let emb = &self.field.embeddings[idx];
        if !emb.is_real {
            return Err(Error::Invalid("embedding is not real".into()));
        }
        let (lo, hi) = emb.root.interval.clone().expect("real root without interval");
        let mut b = 32;
        loop {
            let (a, c) = refine_root(&emb.root.factor, &lo, &hi, b);
            let iv = eval_interval(&self.rep, &RInterval::new(a, c));
            let target = Rational::from((Integer::from(1), Integer::from(1) << bits));
            if iv.width() <= target || b > 8 * bits + 256 {
                return Ok(iv);
            }
            b *= 2;
        }
    }

    /// Certified sign under a real embedding.
    pub fn sign_at_real(&self, idx: usize) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let emb = &self.field.embeddings[idx];
        if !emb.is_real {
            return Err(Error::Invalid("embedding is not real".into()));
        }
        let (lo, hi) = emb.root.interval.clone().expect("real root without interval");
        let mut b = 32;
        while b <= 1 << 16 {
            let (a, c) = refine_root(&emb.root.factor, &lo, &hi, b);
            let iv = eval_interval(&self.rep, &RInterval::new(a, c));
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
            b *= 2;
        }
        Err(Error::PrecisionExhausted(b))
    }
}
