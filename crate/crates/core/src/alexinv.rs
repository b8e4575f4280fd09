//! The Alexander polynomial Δ_G (gcd of codimension-one minors of the
//! Alexander matrix), the Alexander norm, and the Newton-polytope
//! obstruction report.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::{self, LaurentMatrix, LaurentPoly};
use crate::presentations::{alexander_matrix, GroupPresentation};

pub const DEFAULT_MINOR_CAP: u128 = 1_000_000;

/// Δ_G together with the abelianization it is written over.
#[derive(Debug, Clone)]
pub struct AlexanderPolynomial {
    pub poly: LaurentPoly,
    pub b1: usize,
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All k×k minors of a Laurent matrix (k = cols - 1 for Δ).
pub fn minors(m: &LaurentMatrix, k: usize, cap: u128) -> Result<Vec<LaurentPoly>> {
    let count = binomial(m.rows as u128, k as u128) * binomial(m.cols as u128, k as u128);
    if count > cap {
        return Err(Error::CapExceeded {
            what: "minor count",
            value: count,
            limit: cap,
        });
    }
    let row_sets = subsets_of_size(m.rows, k);
    let col_sets = subsets_of_size(m.cols, k);
    let mut out = Vec::new();
    for rs in &row_sets {
        for cs in &col_sets {
            out.push(m.minor(rs, cs));
        }
    }
    Ok(out)
}

/// Alexander polynomial of a finite presentation: gcd of the (q−1)-minors
/// of the Alexander matrix, unit-normalized. Conventions: q = 1 gives Δ = 1;
/// q − 1 > m gives Δ = 0.
pub fn alexander_polynomial(p: &GroupPresentation, cap: u128) -> Result<AlexanderPolynomial> {
    let (phi, ab) = alexander_matrix(p);
    Ok(AlexanderPolynomial {
        poly: alexander_polynomial_of_matrix(&phi, cap)?,
        b1: ab.rank,
    })
}

pub fn alexander_polynomial_of_matrix(phi: &LaurentMatrix, cap: u128) -> Result<LaurentPoly> {
    let q = phi.cols;
    let n = phi.nvars;
    if q == 1 {
        // E_i = R for i ≥ q, so the first elementary ideal here is the
        // whole ring.
        return Ok(LaurentPoly::one(n));
    }
    let k = q - 1;
    if k > phi.rows {
        return Ok(LaurentPoly::zero(n));
    }
    let ms = minors(phi, k, cap)?;
    laurent::laurent_gcd(&ms)
}

/// Generators of the i-th elementary ideal E_i: the (q − i)-minors.
pub fn elementary_ideal_generators(
    phi: &LaurentMatrix,
    i: usize,
    cap: u128,
) -> Result<Vec<LaurentPoly>> {
    let q = phi.cols;
    if i >= q {
        return Ok(vec![LaurentPoly::one(phi.nvars)]);
    }
    let k = q - i;
    if k > phi.rows {
        return Ok(Vec::new());
    }
    minors(phi, k, cap)
}

/// Alexander norm of a cohomology class φ ∈ H¹: the spread of φ over the
/// Newton polytope of Δ.
pub fn alexander_norm(delta: &LaurentPoly, phi: &[i64]) -> Result<BigInt> {
    if delta.is_zero() {
        return Err(Error::Precondition(
            "Alexander norm undefined for the zero polynomial".into(),
        ));
    }
    if phi.len() != delta.nvars() {
        return Err(Error::Invalid(format!(
            "class length {} != variable count {}",
            phi.len(),
            delta.nvars()
        )));
    }
    let vals: Vec<BigInt> = delta
        .support()
        .iter()
        .map(|u| {
            u.iter()
                .zip(phi)
                .map(|(&a, &b)| BigInt::from(a) * BigInt::from(b))
                .sum()
        })
        .collect();
    let max = vals.iter().max().unwrap().clone();
    let min = vals.iter().min().unwrap().clone();
    Ok(max - min)
}

/// Newton-polytope obstruction flags: a group whose Δ is not an associate
/// of a constant cannot be a Kähler group; with b1 ≠ 2 and Δ ≠ 0, a
/// non-segment polytope obstructs quasi-Kähler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSegmentReport {
    pub b1: usize,
    pub delta_is_zero: bool,
    pub delta_is_constant: bool,
    pub newton_vertices: Vec<Vec<i64>>,
    pub is_segment: bool,
    pub kahler_obstructed: bool,
    pub quasikahler_obstructed: bool,
}

pub fn newton_segment_report(p: &GroupPresentation, cap: u128) -> Result<NewtonSegmentReport> {
    let d = alexander_polynomial(p, cap)?;
    let delta = d.poly.normalize_units();
    let delta_is_zero = delta.is_zero();
    let delta_is_constant = delta.is_constant();
    let vertices = laurent::newton_vertices(&delta);
    let is_segment = laurent::newton_is_segment(&delta);
    Ok(NewtonSegmentReport {
        b1: d.b1,
        delta_is_zero,
        delta_is_constant,
        newton_vertices: vertices,
        is_segment,
        kahler_obstructed: !delta_is_constant,
        quasikahler_obstructed: d.b1 != 2 && !delta_is_zero && !is_segment,
    })
}

/// True when the normalized polynomial has at least two terms (so it is not
/// an associate of an integer).
pub fn is_nonconstant(delta: &LaurentPoly) -> bool {
    delta.normalize_units().num_terms() >= 2
}

/// Convenience: Δ of a presentation compared against an expected polynomial
/// up to units.
pub fn delta_equals(p: &GroupPresentation, expected: &LaurentPoly, cap: u128) -> Result<bool> {
    let d = alexander_polynomial(p, cap)?;
    Ok(d.poly.normalize_units() == expected.normalize_units())
}
