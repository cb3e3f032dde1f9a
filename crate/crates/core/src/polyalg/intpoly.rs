use crate::error::Error;
use crate::numeric::Cpx;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Dense univariate polynomial over Z, coefficients ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().map_or(false, |c| *c == 0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&v| Integer::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(Integer::from(1))
    }

    pub fn constant(c: Integer) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    /// `x^k`.
    pub fn monomial(k: usize, c: Integer) -> Self {
        let mut v = vec![Integer::new(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Integer {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| *c == 1)
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(-c)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![Integer::new(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += Integer::from(a * b);
            }
        }
        IntPoly::new(v)
    }

    pub fn scale(&self, c: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| Integer::from(a * c)).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![Integer::new(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly::new(v)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Integer::from(c * i as u64))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(c);
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lc() < 0 {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(c.div_exact_ref(&g))).collect())
    }

    pub fn div_exact_int(&self, d: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(c.div_exact_ref(d))).collect())
    }

    pub fn eval_int(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_cpx(&self, z: &Cpx) -> Cpx {
        let prec = z.prec();
        let mut acc = Cpx::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&Cpx::from_int(c, prec));
        }
        acc
    }

    /// Value and derivative at `z` in one Horner pass.
    pub fn eval_cpx_with_derivative(&self, z: &Cpx) -> (Cpx, Cpx) {
        let prec = z.prec();
        let mut p = Cpx::zero(prec);
        let mut dp = Cpx::zero(prec);
        for c in self.coeffs.iter().rev() {
            dp = dp.mul(z).add(&p);
            p = p.mul(z).add(&Cpx::from_int(c, prec));
        }
        (p, dp)
    }

    /// Sign of `p(x)` at a rational point.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval_rat(x).cmp0()
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q*b + r`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.deg() < b.deg() {
            return self.clone();
        }
        let d = b.lc();
        let mut e = (self.deg() - b.deg() + 1) as u32;
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= b.deg() {
            let c = r.lc();
            let shift = (r.deg() - b.deg()) as usize;
            r = r.scale(&d).sub(&b.scale(&c).shift(shift));
            e -= 1;
        }
        let f = d.clone().pow(e);
        r.scale(&f)
    }

    /// Exact division `self / b` over Z, or `None` if `b` does not divide.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let mut r: Vec<Integer> = self.coeffs.clone();
        let db = b.degree();
        let lb = b.lc();
        let mut q = vec![Integer::new(); self.degree() - db + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + db];
            if !c.is_divisible(&lb) {
                return None;
            }
            let t = Integer::from(c.div_exact_ref(&lb));
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= Integer::from(&t * bc);
            }
            q[k] = t;
        }
        if r.iter().any(|c| *c != 0) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// `p(x + c)`.
    pub fn taylor_shift(&self, c: &Integer) -> IntPoly {
        let mut acc = IntPoly::zero();
        let lin = IntPoly::new(vec![c.clone(), Integer::from(1)]);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&IntPoly::constant(a.clone()));
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&IntPoly::constant(a.clone()));
        }
        acc
    }

    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.to_i64().expect("coefficient exceeds i64")).collect()
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let a = Integer::from(c.abs_ref());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            if i == 0 {
                out.push_str(&a.to_string());
            } else if a == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}{}", a, mono));
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("z"))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
        let mut c = Vec::with_capacity(v.len());
        for x in v {
            let i = match x {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(Integer::from)
                    .ok_or_else(|| serde::de::Error::custom("non-integer coefficient"))?,
                serde_json::Value::String(s) => s
                    .parse::<Integer>()
                    .map_err(|_| serde::de::Error::custom("bad integer string"))?,
                _ => return Err(serde::de::Error::custom("coefficient must be an integer")),
            };
            c.push(i);
        }
        Ok(IntPoly::new(c))
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Either a JSON array of ascending coefficients or an expression such as
    /// `z^4 + 6z^3 - z + 1` in `z` or `x`.
    fn from_str(s: &str) -> crate::error::Result<IntPoly> {
        let s = s.trim();
        if s.starts_with('[') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial '{}': {}", s, e)));
        }
        let bad = || Error::Parse(format!("cannot parse polynomial '{}'", s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, ch) in compact.char_indices() {
            if k > 0 && (ch == '+' || ch == '-') && !compact[..k].ends_with('^') {
                terms.push(&compact[start..k]);
                start = k;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<Integer> = Vec::new();
        for t in terms {
            let (neg, body) = match t.as_bytes().first() {
                Some(b'-') => (true, &t[1..]),
                Some(b'+') => (false, &t[1..]),
                _ => (false, t),
            };
            let (coef, exp) = match body.find(['z', 'x']) {
                None => (body, 0usize),
                Some(v) => {
                    let coef = body[..v].trim_end_matches('*');
                    let rest = &body[v + 1..];
                    let exp = match rest.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (coef, exp)
                }
            };
            let mut c = if coef.is_empty() {
                if exp == 0 {
                    return Err(bad());
                }
                Integer::from(1)
            } else {
                coef.parse::<Integer>().map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, Integer::new());
            }
            coeffs[exp] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}
