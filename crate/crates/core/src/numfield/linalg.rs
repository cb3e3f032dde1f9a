//! Small dense linear algebra over Q, Z and F_q.

use crate::polyalg::fp::{invmod, mulmod};
use rug::ops::DivRounding;
use rug::{Integer, Rational};

pub type RatMat = Vec<Vec<Rational>>;
pub type IntMat = Vec<Vec<Integer>>;

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(m: &RatMat) -> Option<RatMat> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::from(1) } else { Rational::new() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(piv, col);
        let inv = Rational::from(1) / a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] *= &inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = Rational::from(&f * &a[col][c]);
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(m: &RatMat) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::from(1);
    for col in 0..n {
        let piv = match (col..n).find(|&r| a[r][col] != 0) {
            Some(p) => p,
            None => return Rational::new(),
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in (col + 1)..n {
            if a[r][col] != 0 {
                let f = Rational::from(&a[r][col] / &pv);
                for c in col..n {
                    let t = Rational::from(&f * &a[col][c]);
                    a[r][c] -= t;
                }
            }
        }
    }
    det
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Rational], m: &RatMat) -> Vec<Rational> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            let mut s = Rational::new();
            for (i, vi) in v.iter().enumerate() {
                if *vi != 0 {
                    s += Rational::from(vi * &m[i][j]);
                }
            }
            s
        })
        .collect()
}

/// Hermite normal form basis (upper triangular, positive pivots) of the lattice
/// spanned by the rows. Zero rows are dropped.
pub fn hnf(rows: &IntMat, ncols: usize) -> IntMat {
    let mut rows: IntMat = rows.clone();
    let mut top = 0;
    for col in 0..ncols {
        loop {
            let mut best: Option<usize> = None;
            for r in top..rows.len() {
                if rows[r][col] != 0 {
                    let better = match best {
                        None => true,
                        Some(b) => rows[r][col].clone().abs() < rows[b][col].clone().abs(),
                    };
                    if better {
                        best = Some(r);
                    }
                }
            }
            let b = match best {
                Some(b) => b,
                None => break,
            };
            rows.swap(top, b);
            let mut clean = true;
            for r in (top + 1)..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col].clone().div_floor(&rows[top][col]);
                    for c in col..ncols {
                        let t = Integer::from(&q * &rows[top][c]);
                        rows[r][c] -= t;
                    }
                    if rows[r][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if top < rows.len() && rows[top][col] != 0 {
            if rows[top][col] < 0 {
                for c in col..ncols {
                    rows[top][c] = Integer::from(-&rows[top][c]);
                }
            }
            for r in 0..top {
                let q = rows[r][col].clone().div_floor(&rows[top][col]);
                if q != 0 {
                    for c in col..ncols {
                        let t = Integer::from(&q * &rows[top][c]);
                        rows[r][c] -= t;
                    }
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows
}

/// Basis of the left null space `{v : v M = 0}` over F_q.
pub fn left_nullspace_mod(m: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    // Column-reduce the transpose: solve M^T v = 0.
    let mut a: Vec<Vec<u64>> = (0..cols).map(|j| (0..rows).map(|i| m[i][j] % q).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..rows {
        let piv = match (r..cols).find(|&i| a[i][c] != 0) {
            Some(p) => p,
            None => continue,
        };
        a.swap(r, piv);
        let inv = invmod(a[r][c], q);
        for x in a[r].iter_mut() {
            *x = mulmod(*x, inv, q);
        }
        for i in 0..cols {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..rows {
                    let t = mulmod(f, a[r][k], q);
                    a[i][k] = (a[i][k] + q - t) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == cols {
            break;
        }
    }
    let free: Vec<usize> = (0..rows).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; rows];
            v[f] = 1;
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - a[pi][f]) % q;
            }
            v
        })
        .collect()
}

pub fn rank_mod(m: &[Vec<u64>], q: u64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % q).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        let piv = match (r..a.len()).find(|&i| a[i][c] != 0) {
            Some(p) => p,
            None => continue,
        };
        a.swap(r, piv);
        let inv = invmod(a[r][c], q);
        for x in a[r].iter_mut() {
            *x = mulmod(*x, inv, q);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    let t = mulmod(f, a[r][k], q);
                    a[i][k] = (a[i][k] + q - t) % q;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}
