//! Polynomials over a prime field `F_q` with word-sized `q`.

use super::IntPoly;
use rug::ops::Pow;
use rug::Integer;

#[inline]
pub fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, q: u64) -> u64 {
    powmod(a, q - 2, q)
}

pub fn reduce_int(c: &Integer, q: u64) -> u64 {
    c.mod_u(q as u32) as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub q: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(q: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= q;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { q, c }
    }

    pub fn from_int(p: &IntPoly, q: u64) -> Self {
        assert!(q < (1 << 32), "prime too large for word arithmetic");
        FpPoly::new(q, p.coeffs().iter().map(|c| reduce_int(c, q)).collect())
    }

    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&x| Integer::from(x)).collect())
    }

    pub fn zero(q: u64) -> Self {
        FpPoly { q, c: Vec::new() }
    }

    pub fn one(q: u64) -> Self {
        FpPoly::new(q, vec![1])
    }

    pub fn x(q: u64) -> Self {
        FpPoly::new(q, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let q = self.q;
        FpPoly::new(
            q,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % q)
                .collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let q = self.q;
        FpPoly::new(
            q,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + q - o.c.get(i).copied().unwrap_or(0)) % q)
                .collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.q);
        }
        let q = self.q;
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, q)) % q;
            }
        }
        FpPoly::new(q, v)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        let q = self.q;
        FpPoly::new(q, self.c.iter().map(|&a| mulmod(a, s, q)).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lc(), self.q))
    }

    pub fn divrem(&self, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let q = self.q;
        if self.deg() < b.deg() {
            return (FpPoly::zero(q), self.clone());
        }
        let db = b.degree();
        let inv = invmod(b.lc(), q);
        let mut r = self.c.clone();
        let mut quo = vec![0u64; self.degree() - db + 1];
        for k in (0..quo.len()).rev() {
            let t = mulmod(r[k + db], inv, q);
            if t != 0 {
                for (j, &bc) in b.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + q - mulmod(t, bc, q)) % q;
                }
            }
            quo[k] = t;
        }
        r.truncate(db);
        (FpPoly::new(q, quo), FpPoly::new(q, r))
    }

    pub fn rem(&self, b: &FpPoly) -> FpPoly {
        self.divrem(b).1
    }

    pub fn div(&self, b: &FpPoly) -> FpPoly {
        self.divrem(b).0
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let q = self.q;
        FpPoly::new(
            q,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % q, q)).collect(),
        )
    }

    pub fn mulmod_poly(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn powmod_poly(&self, e: &Integer, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.q).rem(m);
        let base = self.rem(m);
        let bits = e.significant_bits();
        for i in (0..bits).rev() {
            acc = acc.mulmod_poly(&acc, m);
            if e.get_bit(i) {
                acc = acc.mulmod_poly(&base, m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let q = self.q;
        let mut acc = 0u64;
        for &c in self.c.iter().rev() {
            acc = (mulmod(acc, x, q) + c) % q;
        }
        acc
    }

    /// `g` with `g(x)^q = self(x)`, valid when only powers of `x^q` occur.
    fn pth_root(&self) -> FpPoly {
        let q = self.q as usize;
        FpPoly::new(self.q, self.c.iter().step_by(q).copied().collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(a_i, i)` with
    /// `self = prod a_i^i`, each `a_i` squarefree, monic and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() <= 0 {
            return out;
        }
        let q = self.q as u32;
        let d = f.derivative();
        if d.is_zero() {
            for (g, m) in f.pth_root().squarefree_decomposition() {
                out.push((g, m * q));
            }
            return out;
        }
        let mut c = f.gcd(&d);
        let mut w = f.div(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div(&y);
            if z.deg() > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div(&w);
        }
        if c.deg() > 0 {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * q));
            }
        }
        out.sort_by_key(|(_, m)| *m);
        out
    }

    /// Distinct-degree factorization of a squarefree monic polynomial:
    /// pairs `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
    pub fn distinct_degree_factorization(&self) -> Vec<(FpPoly, usize)> {
        let q = self.q;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = FpPoly::x(q);
        let mut h = x.rem(&f);
        let mut d = 1usize;
        let qi = Integer::from(q);
        while f.degree() >= 2 * d {
            h = h.powmod_poly(&qi, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.div(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.deg() > 0 {
            let k = f.degree();
            out.push((f, k));
        }
        out
    }

    /// Degrees and multiplicities of the irreducible factors.
    pub fn factor_degrees(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (a, m) in self.squarefree_decomposition() {
            for (g, d) in a.distinct_degree_factorization() {
                for _ in 0..(g.degree() / d) {
                    out.push((d, m));
                }
            }
        }
        out.sort();
        out
    }

    /// `(g, s, t)` with `g = s*self + t*o` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(q), FpPoly::zero(q));
        let (mut t0, mut t1) = (FpPoly::zero(q), FpPoly::one(q));
        while !r1.is_zero() {
            let (quo, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&quo.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&quo.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lc(), q);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Irreducible factors of a squarefree monic product of factors of degree `d`
    /// (Cantor-Zassenhaus with a deterministic sequence of test polynomials).
    pub fn equal_degree_factors(&self, d: usize) -> Vec<FpPoly> {
        let f = self.monic();
        if f.degree() <= d {
            return vec![f];
        }
        let q = self.q;
        let n = f.degree();
        let exponent = (Integer::from(q).pow(d as u32) - 1u32) / 2u32;
        let mut counter = q as u128;
        loop {
            counter += 1;
            let mut digits = Vec::with_capacity(n);
            let mut c = counter;
            while c > 0 && digits.len() < n {
                digits.push((c % q as u128) as u64);
                c /= q as u128;
            }
            let a = FpPoly::new(q, digits);
            if a.deg() <= 0 {
                continue;
            }
            let b = if q == 2 {
                let mut acc = a.rem(&f);
                let mut pw = acc.clone();
                for _ in 1..d {
                    pw = pw.mulmod_poly(&pw, &f);
                    acc = acc.add(&pw);
                }
                acc
            } else {
                a.powmod_poly(&exponent, &f).sub(&FpPoly::one(q))
            };
            let g = f.gcd(&b);
            if g.deg() > 0 && g.degree() < n {
                let mut out = g.equal_degree_factors(d);
                out.extend(f.div(&g).equal_degree_factors(d));
                out.sort_by(|x, y| x.c.cmp(&y.c));
                return out;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, in a canonical order.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        for (a, m) in self.squarefree_decomposition() {
            for (g, d) in a.distinct_degree_factorization() {
                for h in g.equal_degree_factors(d) {
                    out.push((h, m));
                }
            }
        }
        out.sort_by(|x, y| (x.0.degree(), &x.0.c, x.1).cmp(&(y.0.degree(), &y.0.c, y.1)));
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.monic();
        if f.deg() <= 0 {
            return false;
        }
        let fd = f.factor_degrees();
        fd.len() == 1 && fd[0] == (f.degree(), 1)
    }
}

/// Degrees and multiplicities of the irreducible factors of `p mod q`.
///
/// The leading coefficient must be a unit mod `q`.
pub fn factor_degrees_mod_p(p: &IntPoly, q: u64) -> Vec<(usize, u32)> {
    FpPoly::from_int(p, q).factor_degrees()
}

/// First monic polynomial of degree `d` irreducible over `F_q`, in a fixed enumeration order.
pub fn irreducible_of_degree(q: u64, d: usize) -> FpPoly {
    if d == 1 {
        return FpPoly::x(q);
    }
    let mut digits = vec![0u64; d];
    loop {
        let mut c = digits.clone();
        c.push(1);
        let f = FpPoly::new(q, c);
        if f.c[0] != 0 && f.is_irreducible() {
            return f;
        }
        let mut k = 0;
        loop {
            digits[k] += 1;
            if digits[k] < q {
                break;
            }
            digits[k] = 0;
            k += 1;
            assert!(k < d, "no irreducible polynomial found");
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    Integer::from(n).is_probably_prime(30) != rug::integer::IsPrime::No
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}
