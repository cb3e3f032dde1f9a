//! Local maximality at a prime: the Dedekind criterion, the Round 2 enlargement
//! and residue degrees of the primes above `q`.

use super::linalg::{determinant, hnf, inverse, left_nullspace_mod, rank_mod, vec_mat, IntMat, RatMat};
use crate::error::{Error, Result};
use crate::numeric::{factor_integer, valuation};
use crate::polyalg::fp::FpPoly;
use crate::polyalg::{discriminant, IntPoly, RatPoly};
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DedekindResult {
    pub prime: u64,
    pub maximal: bool,
    /// `U` with `U(theta)/q` integral but outside `Z[theta]` when not maximal.
    pub enlargement: Option<IntPoly>,
    /// `[O' : Z[theta]] = q^exponent` for the order generated by the enlargement.
    pub enlargement_exponent: u32,
}

/// Dedekind criterion for `q`-maximality of `Z[theta]`, `f` monic.
pub fn dedekind_p_maximal(f: &IntPoly, q: u64) -> DedekindResult {
    let fb = FpPoly::from_int(f, q);
    let mut g = FpPoly::one(q);
    for (a, _) in fb.squarefree_decomposition() {
        g = g.mul(&a);
    }
    let h = fb.div(&g);
    let gz = g.to_int();
    let hz = h.to_int();
    let diff = f.sub(&gz.mul(&hz));
    let qi = Integer::from(q);
    let big_f = diff.div_exact_int(&qi);
    let fbar = FpPoly::from_int(&big_f, q);
    let d = fbar.gcd(&g).gcd(&h);
    if d.deg() <= 0 {
        return DedekindResult { prime: q, maximal: true, enlargement: None, enlargement_exponent: 0 };
    }
    let u = fb.div(&d);
    DedekindResult {
        prime: q,
        maximal: false,
        enlargement: Some(u.to_int()),
        enlargement_exponent: d.degree() as u32,
    }
}

/// An order that is maximal at one prime, with data needed for residue degrees.
#[derive(Clone, Debug)]
pub struct LocalOrder {
    pub prime: u64,
    /// Basis elements as polynomials in the generator.
    pub basis: Vec<RatPoly>,
    /// `v_q([O : Z[theta]])`.
    pub index_exponent: u32,
    table_mod: Vec<Vec<Vec<u64>>>,
    radical: Vec<Vec<u64>>,
}

fn mul_reduce(a: &RatPoly, b: &RatPoly, f: &RatPoly) -> RatPoly {
    a.mul(b).rem(f)
}

fn to_coords(x: &RatPoly, n: usize, binv: &RatMat) -> Vec<Rational> {
    let v: Vec<Rational> = (0..n).map(|i| x.coeff(i)).collect();
    vec_mat(&v, binv)
}

fn as_integers(v: &[Rational]) -> Result<Vec<Integer>> {
    v.iter()
        .map(|x| {
            if *x.denom() == 1 {
                Ok(x.numer().clone())
            } else {
                Err(Error::Invalid("non-integral structure constant".into()))
            }
        })
        .collect()
}

fn basis_matrix(basis: &[RatPoly], n: usize) -> RatMat {
    basis.iter().map(|b| (0..n).map(|i| b.coeff(i)).collect()).collect()
}

fn mult_table(basis: &[RatPoly], fr: &RatPoly, binv: &RatMat) -> Result<Vec<Vec<Vec<Integer>>>> {
    let n = basis.len();
    let mut t = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let c = as_integers(&to_coords(&mul_reduce(&basis[i], &basis[j], fr), n, binv))?;
            t[i][j] = c.clone();
            t[j][i] = c;
        }
    }
    Ok(t)
}

fn reduce_table(t: &[Vec<Vec<Integer>>], q: u64) -> Vec<Vec<Vec<u64>>> {
    t.iter()
        .map(|r| r.iter().map(|c| c.iter().map(|x| x.mod_u(q as u32) as u64).collect()).collect())
        .collect()
}

fn mul_vec(u: &[u64], v: &[u64], t: &[Vec<Vec<u64>>], q: u64) -> Vec<u64> {
    let n = u.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        if u[i] == 0 {
            continue;
        }
        for j in 0..n {
            if v[j] == 0 {
                continue;
            }
            let c = (u[i] as u128 * v[j] as u128 % q as u128) as u64;
            for k in 0..n {
                out[k] = ((out[k] as u128 + c as u128 * t[i][j][k] as u128) % q as u128) as u64;
            }
        }
    }
    out
}

fn pow_vec(u: &[u64], e: &Integer, t: &[Vec<Vec<u64>>], q: u64, one: &[u64]) -> Vec<u64> {
    let mut acc = one.to_vec();
    for i in (0..e.significant_bits()).rev() {
        acc = mul_vec(&acc, &acc, t, q);
        if e.get_bit(i) {
            acc = mul_vec(&acc, u, t, q);
        }
    }
    acc
}

fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[i] = 1;
    v
}

/// Coordinates of 1 in the basis.
fn one_coords(basis: &[RatPoly], binv: &RatMat, q: u64) -> Vec<u64> {
    let n = basis.len();
    let c = to_coords(&RatPoly::one(), n, binv);
    c.iter().map(|x| x.numer().mod_u(q as u32) as u64).collect()
}

/// Round 2: enlarges `Z[theta]` until it is maximal at `q`.
pub fn p_maximal_order(f: &IntPoly, q: u64) -> Result<LocalOrder> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let n = f.degree();
    let fr = RatPoly::from_int(f);
    let mut basis: Vec<RatPoly> = (0..n)
        .map(|i| {
            let mut c = vec![Rational::new(); i + 1];
            c[i] = Rational::from(1);
            RatPoly::new(c)
        })
        .collect();
    let qi = Integer::from(q);
    let mut k_exp = Integer::from(q);
    while k_exp < n as u64 {
        k_exp *= q;
    }
    for _ in 0..64 {
        let bmat = basis_matrix(&basis, n);
        let binv = inverse(&bmat).ok_or_else(|| Error::Invalid("singular order basis".into()))?;
        let table = mult_table(&basis, &fr, &binv)?;
        let tq = reduce_table(&table, q);
        let one = one_coords(&basis, &binv, q);
        let frob: Vec<Vec<u64>> = (0..n).map(|i| pow_vec(&unit_vector(n, i), &k_exp, &tq, q, &one)).collect();
        let rad = left_nullspace_mod(&frob, q);
        let mut gens: IntMat = rad.iter().map(|v| v.iter().map(|&x| Integer::from(x)).collect()).collect();
        for i in 0..n {
            let mut r = vec![Integer::new(); n];
            r[i] = qi.clone();
            gens.push(r);
        }
        let ib = hnf(&gens, n);
        let ib_rat: RatMat = ib.iter().map(|r| r.iter().map(Rational::from).collect()).collect();
        let ib_inv = inverse(&ib_rat).ok_or_else(|| Error::Invalid("singular radical basis".into()))?;
        let mut mmat = vec![Vec::with_capacity(n * n); n];
        for (i, row) in mmat.iter_mut().enumerate() {
            for ibj in ib.iter() {
                let mut prod = vec![Rational::new(); n];
                for (l, c) in ibj.iter().enumerate() {
                    if *c == 0 {
                        continue;
                    }
                    for kk in 0..n {
                        prod[kk] += Rational::from(c * &table[i][l][kk]);
                    }
                }
                let ic = as_integers(&vec_mat(&prod, &ib_inv))?;
                row.extend(ic.iter().map(|x| x.mod_u(q as u32) as u64));
            }
        }
        let ker = left_nullspace_mod(&mmat, q);
        if ker.is_empty() {
            let det = determinant(&bmat);
            let index = Integer::from(det.recip().numer().abs_ref());
            return Ok(LocalOrder {
                prime: q,
                index_exponent: valuation(&index, q),
                basis,
                table_mod: tq,
                radical: rad,
            });
        }
        let mut gens: IntMat = ker.iter().map(|v| v.iter().map(|&x| Integer::from(x)).collect()).collect();
        for i in 0..n {
            let mut r = vec![Integer::new(); n];
            r[i] = qi.clone();
            gens.push(r);
        }
        let h = hnf(&gens, n);
        let inv_q = Rational::from((1, q));
        basis = h
            .iter()
            .map(|row| {
                let mut acc = RatPoly::zero();
                for (l, c) in row.iter().enumerate() {
                    if *c != 0 {
                        acc = acc.add(&basis[l].scale(&Rational::from(c)));
                    }
                }
                acc.scale(&inv_q)
            })
            .collect();
    }
    Err(Error::Invalid("Round 2 did not terminate".into()))
}

fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut res = 1i64;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if m > 1 {
        res = -res;
    }
    res
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| gcd(*k, n) == 1).count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl LocalOrder {
    /// Residue degrees of the primes above `q`, sorted.
    pub fn residue_degrees(&self) -> Vec<usize> {
        let n = self.basis.len();
        let q = self.prime;
        let one = {
            let bmat = basis_matrix(&self.basis, n);
            let binv = inverse(&bmat).unwrap();
            one_coords(&self.basis, &binv, q)
        };
        let qi = Integer::from(q);
        let frob: Vec<Vec<u64>> = (0..n).map(|i| pow_vec(&unit_vector(n, i), &qi, &self.table_mod, q, &one)).collect();
        // s[d] = sum over primes of gcd(d, f_P)
        let mut s = vec![0usize; n + 1];
        let mut power: Vec<Vec<u64>> = (0..n).map(|i| unit_vector(n, i)).collect();
        for d in 1..=n {
            power = power
                .iter()
                .map(|row| {
                    let mut out = vec![0u64; n];
                    for (k, &c) in row.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for j in 0..n {
                            out[j] = (out[j] + c * frob[k][j]) % q;
                        }
                    }
                    out
                })
                .collect();
            let mut stacked: Vec<Vec<u64>> = power
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut r = row.clone();
                    r[i] = (r[i] + q - 1) % q;
                    r
                })
                .collect();
            stacked.extend(self.radical.iter().cloned());
            s[d] = n - rank_mod(&stacked, q);
        }
        // N[d] = number of primes with d | f_P
        let mut big_n = vec![0i64; n + 1];
        for d in 1..=n {
            let mut acc = 0i64;
            for e in 1..=d {
                if d % e == 0 {
                    acc += mobius(d / e) * s[e] as i64;
                }
            }
            big_n[d] = acc / euler_phi(d) as i64;
        }
        let mut out = Vec::new();
        for fdeg in 1..=n {
            let mut c = 0i64;
            let mut m = 1;
            while fdeg * m <= n {
                c += mobius(m) * big_n[fdeg * m];
                m += 1;
            }
            for _ in 0..c.max(0) {
                out.push(fdeg);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldDiscriminant {
    #[serde(serialize_with = "crate::numeric::serialize_integer")]
    pub value: Integer,
    #[serde(serialize_with = "crate::numeric::serialize_integer")]
    pub polynomial_discriminant: Integer,
    /// `(q, v_q([O_K : Z[theta]]))` for every prime dividing the index.
    pub index_primes: Vec<(u64, u32)>,
}

/// Discriminant of the maximal order of `Q[z]/(f)`, `f` monic irreducible.
pub fn field_discriminant_of(f: &IntPoly) -> Result<FieldDiscriminant> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let pd = discriminant(f);
    let mut value = pd.clone();
    let mut index_primes = Vec::new();
    for (p, e) in factor_integer(&pd) {
        if e < 2 {
            continue;
        }
        let q = p.to_u64().filter(|&x| x < (1 << 31)).ok_or_else(|| {
            Error::Unsupported(format!("discriminant has a large repeated prime factor {}", p))
        })?;
        if dedekind_p_maximal(f, q).maximal {
            continue;
        }
        let ord = p_maximal_order(f, q)?;
        if ord.index_exponent > 0 {
            let scale = Integer::from(q).pow(2 * ord.index_exponent);
            value = value.div_exact(&scale);
            index_primes.push((q, ord.index_exponent));
        }
    }
    Ok(FieldDiscriminant { value, polynomial_discriminant: pd, index_primes })
}

