use super::IntPoly;
use crate::numeric::Cpx;
use rug::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Polynomial in `z` whose coefficients are integer polynomials in `beta`.
///
/// `coeffs[i]` is the coefficient of `z^i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivarIntPoly {
    coeffs: Vec<IntPoly>,
}

impl BivarIntPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        BivarIntPoly { coeffs }
    }

    pub fn from_nested(c: &[&[i64]]) -> Self {
        BivarIntPoly::new(c.iter().map(|r| IntPoly::from_i64(r)).collect())
    }

    /// Lifts a polynomial in `z` with constant coefficients.
    pub fn from_univariate(p: &IntPoly) -> Self {
        BivarIntPoly::new(p.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect())
    }

    pub fn z_coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn deg_z(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn deg_beta(&self) -> isize {
        self.coeffs.iter().map(|c| c.deg()).max().unwrap_or(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_beta_free(&self) -> bool {
        self.deg_beta() <= 0
    }

    /// Substitutes an integer for `beta`.
    pub fn at_beta_int(&self, b: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.eval_int(b)).collect())
    }

    /// Substitutes a complex value for `beta`, giving complex coefficients in `z`.
    pub fn at_beta_cpx(&self, b: &Cpx) -> Vec<Cpx> {
        self.coeffs.iter().map(|c| c.eval_cpx(b)).collect()
    }

    pub fn eval_cpx(&self, z: &Cpx, b: &Cpx) -> Cpx {
        let prec = z.prec();
        let mut acc = Cpx::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&c.eval_cpx(b));
        }
        acc
    }

    /// The same polynomial viewed in `beta` with coefficients in `Z[z]`.
    pub fn as_poly_in_beta(&self) -> Vec<IntPoly> {
        let db = self.deg_beta();
        if db < 0 {
            return Vec::new();
        }
        (0..=db as usize)
            .map(|j| IntPoly::new(self.coeffs.iter().map(|c| c.coeff(j)).collect()))
            .collect()
    }

    pub fn mul(&self, o: &BivarIntPoly) -> BivarIntPoly {
        if self.is_zero() || o.is_zero() {
            return BivarIntPoly::default();
        }
        let mut v = vec![IntPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        BivarIntPoly::new(v)
    }

    pub fn to_nested(&self) -> Vec<Vec<Integer>> {
        self.coeffs.iter().map(|c| c.coeffs().to_vec()).collect()
    }
}

impl fmt::Display for BivarIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let inner = c.display_var("b");
            let single_term = c.coeffs().iter().filter(|x| **x != 0).count() == 1;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", i),
            };
            let term = if i == 0 {
                inner
            } else if inner == "1" {
                mono
            } else if inner == "-1" {
                format!("-{}", mono)
            } else if single_term {
                format!("{}{}", inner, mono)
            } else {
                format!("({}){}", inner, mono)
            };
            parts.push(term);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        f.write_str(&out)
    }
}

impl Serialize for BivarIntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarIntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<IntPoly> = Vec::deserialize(d)?;
        Ok(BivarIntPoly::new(v))
    }
}
