use super::fp::{factor_degrees_mod_p, primes_up_to};
use super::resultant::discriminant;
use super::roots::{isolate_roots, RootBox};
use super::sturm::{is_squarefree, squarefree_decomposition};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::numeric::Cpx;
use rug::{Float, Integer};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibilityWitness {
    Linear,
    /// Irreducible modulo a prime not dividing the leading coefficient or discriminant.
    ModPrime { prime: u64 },
    /// The possible factor degrees allowed by the factorization patterns modulo these
    /// primes are only `0` and `deg p`.
    DegreePatterns { primes: Vec<u64> },
    /// No subset of the complex roots gives an integer factor.
    RootSubsets,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Minimality {
    Irreducible { witness: IrreducibilityWitness },
    Reducible { factor: IntPoly, cofactor: IntPoly },
}

impl Minimality {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Minimality::Irreducible { .. })
    }
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    s.insert(0);
    for &d in degrees {
        let prev: Vec<usize> = s.iter().copied().collect();
        for x in prev {
            s.insert(x + d);
        }
    }
    s
}

/// Decides irreducibility over Q of a polynomial of degree at least one.
pub fn minimality_check(p: &IntPoly) -> Result<Minimality> {
    if p.deg() < 1 {
        return Err(Error::Degenerate);
    }
    let pp = p.primitive_part();
    let n = pp.degree();
    if n == 1 {
        return Ok(Minimality::Irreducible { witness: IrreducibilityWitness::Linear });
    }
    if pp.coeff(0) == 0 {
        let factor = IntPoly::x();
        let cofactor = pp.div_exact(&factor).unwrap();
        return Ok(Minimality::Reducible { factor, cofactor });
    }
    if !is_squarefree(&pp) {
        let parts = squarefree_decomposition(&pp);
        let factor = parts.iter().find(|(_, m)| *m > 1).map(|(a, _)| a.clone()).unwrap();
        let cofactor = pp.div_exact(&factor).unwrap();
        return Ok(Minimality::Reducible { factor, cofactor });
    }
    let disc = discriminant(&pp);
    let lc = pp.lc();
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut used = Vec::new();
    for q in primes_up_to(400) {
        let qi = Integer::from(q);
        if lc.is_divisible(&qi) || disc.is_divisible(&qi) {
            continue;
        }
        let fd = factor_degrees_mod_p(&pp, q);
        if fd.len() == 1 {
            return Ok(Minimality::Irreducible { witness: IrreducibilityWitness::ModPrime { prime: q } });
        }
        let degs: Vec<usize> = fd.iter().map(|(d, _)| *d).collect();
        let sums = subset_sums(&degs);
        let before = allowed.len();
        allowed = allowed.intersection(&sums).copied().collect();
        if allowed.len() < before {
            used.push(q);
        }
        if allowed.len() == 2 {
            return Ok(Minimality::Irreducible { witness: IrreducibilityWitness::DegreePatterns { primes: used } });
        }
    }
    match find_factor_by_roots(&pp, None)? {
        Some(factor) => {
            let cofactor = pp.div_exact(&factor).unwrap();
            Ok(Minimality::Reducible { factor, cofactor })
        }
        None => Ok(Minimality::Irreducible { witness: IrreducibilityWitness::RootSubsets }),
    }
}

/// Nearest-integer rounding of a float, if within `tol`.
fn near_integer(x: &Float, tol: f64) -> Option<Integer> {
    let r = Float::with_val(x.prec(), x.round_ref());
    let diff = Float::with_val(x.prec(), x - &r).abs();
    if diff.to_f64() <= tol {
        r.to_integer()
    } else {
        None
    }
}

fn positive_divisors(n: &Integer) -> Vec<Integer> {
    let n = Integer::from(n.abs_ref());
    let mut out = Vec::new();
    let mut d = Integer::from(1);
    while Integer::from(&d * &d) <= n {
        if n.is_divisible(&d) {
            out.push(d.clone());
            let e = Integer::from(&n / &d);
            if e != d {
                out.push(e);
            }
        }
        d += 1u32;
    }
    out.sort();
    out
}

/// Searches subsets of the roots for a proper integer factor. When `must_contain`
/// is given, only subsets containing that root index are tried and the smallest
/// factor found is returned.
pub fn find_factor_by_roots(p: &IntPoly, must_contain: Option<usize>) -> Result<Option<IntPoly>> {
    let roots = isolate_roots(p, 256)?;
    find_factor_in_roots(p, &roots, must_contain, false)
}

fn find_factor_in_roots(
    p: &IntPoly,
    roots: &[RootBox],
    must_contain: Option<usize>,
    allow_full: bool,
) -> Result<Option<IntPoly>> {
    let n = roots.len();
    let prec = roots.iter().map(|r| r.prec()).max().unwrap_or(256).max(256);
    let zs: Vec<Cpx> = roots.iter().map(|r| r.center.with_prec(prec)).collect();
    let leads = positive_divisors(&p.lc());
    let max_k = if must_contain.is_some() || allow_full { n } else { n / 2 };
    for k in 1..=max_k {
        if k == n && !allow_full {
            break;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let ok = must_contain.map_or(true, |m| idx.contains(&m));
            if ok {
                if let Some(f) = try_subset(p, &zs, &idx, &leads) {
                    return Ok(Some(f));
                }
            }
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < n - k + i {
                    idx[i] += 1;
                    for j in (i + 1)..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(None)
}

fn try_subset(p: &IntPoly, zs: &[Cpx], idx: &[usize], leads: &[Integer]) -> Option<IntPoly> {
    let prec = zs[0].prec();
    let mut prod = vec![Cpx::one(prec)];
    for &i in idx {
        let mut next = vec![Cpx::zero(prec); prod.len() + 1];
        for (j, c) in prod.iter().enumerate() {
            next[j + 1] = next[j + 1].add(c);
            next[j] = next[j].sub(&c.mul(&zs[i]));
        }
        prod = next;
    }
    for l in leads {
        let lf = Float::with_val(prec, l);
        let mut coeffs = Vec::with_capacity(prod.len());
        let mut good = true;
        for c in &prod {
            let im = Float::with_val(prec, &c.im * &lf).abs();
            if im.to_f64() > 1e-6 {
                good = false;
                break;
            }
            match near_integer(&Float::with_val(prec, &c.re * &lf), 1e-6) {
                Some(v) => coeffs.push(v),
                None => {
                    good = false;
                    break;
                }
            }
        }
        if !good {
            continue;
        }
        let cand = IntPoly::new(coeffs);
        if cand.deg() >= 1 && p.div_exact(&cand).is_some() {
            return Some(cand.primitive_part());
        }
    }
    None
}

/// The irreducible factor of `p` (primitive, positive leading coefficient) that vanishes
/// at the given root.
pub fn minimal_factor_at_root(roots: &[RootBox], root: usize) -> Result<IntPoly> {
    let target = &roots[root];
    let f = target.factor.clone();
    if f.degree() == 1 {
        return Ok(f.primitive_part());
    }
    let froots: Vec<RootBox> = isolate_roots(&f, 256)?;
    let (tr, ti) = target.center.to_f64();
    let mut best = 0;
    let mut bd = f64::INFINITY;
    for (i, r) in froots.iter().enumerate() {
        let d = r.contains_approx(tr, ti);
        if d < bd {
            bd = d;
            best = i;
        }
    }
    match find_factor_in_roots(&f, &froots, Some(best), true)? {
        Some(g) => Ok(g),
        None => Ok(f.primitive_part()),
    }
}
