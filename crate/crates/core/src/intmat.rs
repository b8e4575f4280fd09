//! Exact linear algebra over the integers: Smith and Hermite normal forms,
//! saturated kernels, fraction-free rank and determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> IMat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn transpose(m: &IMat) -> IMat {
    if m.is_empty() {
        return Vec::new();
    }
    let (r, c) = (m.len(), m[0].len());
    let mut t = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            t[j][i] = m[i][j].clone();
        }
    }
    t
}

pub fn identity(n: usize) -> IMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Invariant factors d_1 | d_2 | ... (positive; count = rank).
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Left transform U (rows x rows): U * A * V = D.
    pub left: IMat,
    /// Right transform V (cols x cols).
    pub right: IMat,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    /// Invariant factors strictly greater than 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_form(a: &IMat) -> SmithForm {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let mut t = 0usize;

    while t < rows && t < cols {
        // Find a pivot: nonzero entry of minimal absolute value in the
        // remaining submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        left.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        for row in right.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if !m[i][t].is_zero() {
                let q = div_round(&m[i][t], &m[t][t]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &q * &m[t][j];
                        m[i][j] -= s;
                    }
                    for j in 0..rows {
                        let s = &q * &left[t][j];
                        left[i][j] -= s;
                    }
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !m[t][j].is_zero() {
                let q = div_round(&m[t][j], &m[t][t]);
                if !q.is_zero() {
                    for i in 0..rows {
                        let s = &q * &m[i][t];
                        m[i][j] -= s;
                    }
                    for i in 0..cols {
                        let s = &q * &right[i][t];
                        right[i][j] -= s;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // pivot shrank; repeat with the same t
        }
        // Enforce the divisibility chain: fold any entry not divisible by
        // the pivot into the pivot's row.
        let mut redo = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    for k in 0..cols {
                        let s = m[i][k].clone();
                        m[t][k] += s;
                    }
                    for k in 0..rows {
                        let s = left[i][k].clone();
                        left[t][k] += s;
                    }
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        if m[t][t].is_negative() {
            for j in 0..cols {
                m[t][j] = -m[t][j].clone();
            }
            for j in 0..rows {
                left[t][j] = -left[t][j].clone();
            }
        }
        t += 1;
    }

    let rank = t;
    let factors = (0..rank).map(|i| m[i][i].clone()).collect();
    SmithForm {
        factors,
        rank,
        left,
        right,
        rows,
        cols,
    }
}

/// Round-to-nearest integer division (keeps SNF coefficient growth small).
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Rank over Q via fraction-free Gaussian elimination.
pub fn rank(a: &IMat) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut r = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let v = (&m[r][col] * &m[i][j] - &m[i][col] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square matrix (Bareiss).
pub fn det(a: &IMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(a.iter().all(|r| r.len() == n));
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Saturated basis of the integer kernel {x : A x = 0}, as rows.
pub fn kernel_basis(a: &IMat) -> IMat {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    if a.is_empty() {
        return identity(cols);
    }
    let s = smith_form(a);
    // A V = U^{-1} D, so kernel = span of columns rank.. of V.
    (s.rank..s.cols)
        .map(|j| (0..s.cols).map(|i| s.right[i][j].clone()).collect())
        .collect()
}

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced to [0, pivot), zero rows dropped. Canonical for the row lattice.
pub fn hnf(a: &IMat) -> IMat {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        // Euclidean elimination in this column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !m[i][col].is_zero()
                    && best.map_or(true, |b| m[i][col].abs() < m[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut any = false;
            for i in pivot_row + 1..rows {
                if !m[i][col].is_zero() {
                    let q = div_round(&m[i][col], &m[pivot_row][col]);
                    for j in 0..cols {
                        let s = &q * &m[pivot_row][j];
                        m[i][j] -= s;
                    }
                    if !m[i][col].is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if pivot_row < rows && !m[pivot_row][col].is_zero() {
            if m[pivot_row][col].is_negative() {
                for j in 0..cols {
                    m[pivot_row][j] = -m[pivot_row][j].clone();
                }
            }
            // Reduce entries above the pivot.
            for i in 0..pivot_row {
                let q = m[i][col].div_floor(&m[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &q * &m[pivot_row][j];
                        m[i][j] -= s;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    m.truncate(pivot_row);
    m
}
