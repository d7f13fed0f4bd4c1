//! Small exact linear algebra: rational elimination and integer normal forms.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Sizes here are desk-scale (rank of a
//! root datum, quiver dimension vectors), so everything is dense and naive.

use num_traits::{One, Signed, Zero};

use crate::Q;

pub type IMat = Vec<Vec<i64>>;
pub type QMat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn to_q(m: &[Vec<i64>]) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[i64], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (&x, y)| acc + Q::from_integer(x) * y)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(m: &[Vec<Q>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

pub fn rank_i(m: &[Vec<i64>]) -> usize {
    rank_q(&to_q(m))
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse_q(a: &[Vec<Q>]) -> Option<QMat> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(a: &[Vec<i64>]) -> Option<IMat> {
    let inv = inverse_q(&to_q(a))?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

pub fn qmat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Smith normal form `left * a * right = diag(invariants)` with unimodular transforms.
#[derive(Debug, Clone)]
pub struct Smith {
    pub invariants: Vec<i64>,
    pub left: IMat,
    pub right: IMat,
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut d = a.to_vec();
    let mut left = identity(m);
    let mut right = identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j] != 0
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, left, right, m.min(n));
            };
            d.swap(t, pi);
            left.swap(t, pi);
            if pj != t {
                for row in d.iter_mut() {
                    row.swap(t, pj);
                }
                for row in right.iter_mut() {
                    row.swap(t, pj);
                }
            }

            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = d[i][t] / p;
                if q != 0 {
                    for j in 0..n {
                        d[i][j] -= q * d[t][j];
                    }
                    for j in 0..m {
                        left[i][j] -= q * left[t][j];
                    }
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let q = d[t][j] / p;
                if q != 0 {
                    for row in d.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in right.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0));
            if let Some(i) = bad {
                for j in 0..n {
                    d[t][j] += d[i][j];
                }
                for j in 0..m {
                    left[t][j] += left[i][j];
                }
                continue;
            }
            if p < 0 {
                for x in d[t].iter_mut() {
                    *x = -*x;
                }
                for x in left[t].iter_mut() {
                    *x = -*x;
                }
            }
            break;
        }
    }
    finish(d, left, right, m.min(n))
}

fn finish(d: IMat, left: IMat, right: IMat, k: usize) -> Smith {
    let invariants = (0..k).map(|i| d[i][i]).take_while(|&x| x != 0).collect();
    Smith {
        invariants,
        left,
        right,
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
pub fn hermite_rows(rows: &[Vec<i64>]) -> IMat {
    let mut h = rows.to_vec();
    let cols = h.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == h.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..h.len()).filter(|&i| h[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| h[i][c].abs()).unwrap();
            h.swap(r, p);
            let mut done = true;
            for i in r + 1..h.len() {
                let q = h[i][c] / h[r][c];
                for j in 0..cols {
                    h[i][j] -= q * h[r][j];
                }
                done &= h[i][c] == 0;
            }
            if done {
                break;
            }
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            for x in h[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_euclid(h[r][c]);
            for j in 0..cols {
                h[i][j] -= q * h[r][j];
            }
        }
        r += 1;
    }
    h.truncate(r);
    h.retain(|row| row.iter().any(|&x| x != 0));
    h
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn all_nonnegative(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
