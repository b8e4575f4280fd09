//! Multivariate Laurent polynomials over Z: arithmetic, GCD, evaluation
//! into prime fields, Newton polytopes, and unit normalization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fp::PrimeField;

/// Element of Z[t_1^{±1}, …, t_n^{±1}], stored as exponent-vector → nonzero
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0i64; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, expo: Vec<i64>, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(expo, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Unit = ± a single monomial with coefficient ±1.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn add_term(&mut self, expo: Vec<i64>, c: BigInt) {
        assert_eq!(expo.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let v = self.terms.get(&expo).cloned().unwrap_or_else(BigInt::zero) + c;
        if v.is_zero() {
            self.terms.remove(&expo);
        } else {
            self.terms.insert(expo, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Sum of coefficients = evaluation at t = (1, …, 1).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluate at units of F_p.
    pub fn eval_fp(&self, field: &PrimeField, values: &[u64]) -> u64 {
        assert_eq!(values.len(), self.nvars);
        let mut acc = 0u64;
        for (e, c) in self.terms() {
            let cm = c.mod_floor(&BigInt::from(field.p()));
            let mut term = u64::try_from(&cm).unwrap();
            for (i, &x) in e.iter().enumerate() {
                term = field.mul(term, field.pow_signed(values[i], x));
            }
            acc = field.add(acc, term);
        }
        acc
    }

    /// Evaluate at rational points (all coordinates nonzero where needed).
    pub fn eval_rational(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let mut term = BigRational::from(c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x >= 0 {
                    for _ in 0..x {
                        term *= &values[i];
                    }
                } else {
                    assert!(!values[i].is_zero(), "negative power of zero");
                    for _ in 0..-x {
                        term /= &values[i];
                    }
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute t_i ↦ Π_j s_j^{U_ji} for a unimodular U (monomial change
    /// of variables).
    pub fn monomial_substitute(&self, u: &[Vec<i64>]) -> Result<Self> {
        let n = self.nvars;
        if u.len() != n || u.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("substitution matrix must be n×n".into()));
        }
        let m = crate::intmat::from_i64(u);
        if crate::intmat::det(&m).abs() != BigInt::one() {
            return Err(Error::Invalid(
                "substitution matrix must be unimodular".into(),
            ));
        }
        let mut out = Self::zero(n);
        for (e, c) in self.terms() {
            let mut ne = vec![0i64; n];
            for (i, &x) in e.iter().enumerate() {
                for j in 0..n {
                    ne[j] += u[j][i] * x;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![0i64; self.nvars];
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                mins.copy_from_slice(e);
                first = false;
            } else {
                for (m, &x) in mins.iter_mut().zip(e) {
                    *m = (*m).min(x);
                }
            }
        }
        mins
    }

    fn shift(&self, delta: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        e.iter().zip(delta).map(|(a, d)| a + d).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Unit normalization: shift exponents so the minimum per variable is 0,
    /// then flip the sign so the lexicographically greatest term has positive
    /// coefficient. Associates normalize to identical values.
    pub fn normalize_units(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mins = self.min_exponents();
        let delta: Vec<i64> = mins.iter().map(|m| -m).collect();
        let shifted = self.shift(&delta);
        let lead = shifted.terms.keys().next_back().unwrap();
        if shifted.terms[lead].is_negative() {
            shifted.neg()
        } else {
            shifted
        }
    }

    /// Integer content (gcd of coefficients, nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    fn max_degree_in(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn min_degree_in(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] != 0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

// ---------------------------------------------------------------------------
// GCD (polynomials with nonnegative exponents; Laurent input is shifted)
// ---------------------------------------------------------------------------

/// Coefficients of f as a polynomial in variable v (index = degree in v,
/// entries have exponent 0 in v).
fn coeffs_in(f: &LaurentPoly, v: usize) -> Vec<LaurentPoly> {
    let d = f.max_degree_in(v);
    assert!(f.min_degree_in(v) >= 0);
    let mut out = vec![LaurentPoly::zero(f.nvars); (d + 1) as usize];
    for (e, c) in f.terms() {
        let k = e[v] as usize;
        let mut e2 = e.clone();
        e2[v] = 0;
        out[k].add_term(e2, c.clone());
    }
    out
}

/// Exact division; returns None when g does not divide f.
pub fn divide_exact(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!g.is_zero(), "division by zero polynomial");
    let n = f.nvars;
    let mut rem = f.clone();
    let mut quot = LaurentPoly::zero(n);
    let g_lead = g.terms.keys().next_back()?.clone();
    let g_lc = g.terms[&g_lead].clone();
    while !rem.is_zero() {
        let r_lead = rem.terms.keys().next_back().unwrap().clone();
        let r_lc = rem.terms[&r_lead].clone();
        let (q, r) = r_lc.div_rem(&g_lc);
        if !r.is_zero() {
            return None;
        }
        let de: Vec<i64> = r_lead.iter().zip(&g_lead).map(|(a, b)| a - b).collect();
        let mono = LaurentPoly::monomial(n, de, q);
        quot = quot.add(&mono);
        rem = rem.sub(&mono.mul(g));
        // Guard against non-termination when g is not a factor: the lex
        // leading exponent of rem must strictly decrease.
        if let Some(nl) = rem.terms.keys().next_back() {
            if *nl >= r_lead {
                return None;
            }
        }
    }
    Some(quot)
}

/// Content of f with respect to variable v: gcd of its coefficient
/// polynomials in the remaining variables.
fn content_wrt(f: &LaurentPoly, v: usize) -> LaurentPoly {
    let coeffs = coeffs_in(f, v);
    let mut g = LaurentPoly::zero(f.nvars);
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = poly_gcd(&g, c);
        if g.is_unit() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of a by b in variable v.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.max_degree_in(v);
    let b_coeffs = coeffs_in(b, v);
    let lc_b = b_coeffs.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.max_degree_in(v) >= db {
        let dr = r.max_degree_in(v);
        let r_coeffs = coeffs_in(&r, v);
        let lc_r = r_coeffs.last().unwrap().clone();
        let mut shift_e = vec![0i64; a.nvars];
        shift_e[v] = dr - db;
        let shift = LaurentPoly::monomial(a.nvars, shift_e, BigInt::one());
        r = r.mul(&lc_b).sub(&b.mul(&lc_r).mul(&shift));
    }
    r
}

fn primitive_part(f: &LaurentPoly, v: usize) -> LaurentPoly {
    if f.is_zero() {
        return f.clone();
    }
    // Intermediate quotients are Laurent; the result is only defined up to
    // units, so shifting exponents back to ≥ 0 is free.
    let f = f.normalize_units();
    let cont = content_wrt(&f, v);
    divide_exact(&f, &cont)
        .expect("content divides")
        .normalize_units()
}

/// GCD of polynomials with nonnegative exponents, via primitive
/// pseudo-remainder sequences. Result is defined up to units.
fn poly_gcd(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    if f.is_zero() {
        return g.normalize_units();
    }
    if g.is_zero() {
        return f.normalize_units();
    }
    let (f, g) = (&f.normalize_units(), &g.normalize_units());
    let n = f.nvars;
    let var = (0..n).rev().find(|&v| f.uses_var(v) || g.uses_var(v));
    let Some(v) = var else {
        // Both constant.
        let c = f.content().gcd(&g.content());
        return LaurentPoly::constant(n, c);
    };
    if !f.uses_var(v) {
        // f is free of the chosen top variable: gcd(f, content_v(g)).
        return poly_gcd(f, &content_wrt(g, v));
    }
    if !g.uses_var(v) {
        return poly_gcd(&content_wrt(f, v), g);
    }
    let cont_f = content_wrt(f, v);
    let cont_g = content_wrt(g, v);
    let c = poly_gcd(&cont_f, &cont_g);
    let mut a = divide_exact(f, &cont_f)
        .expect("content divides")
        .normalize_units();
    let mut b = divide_exact(g, &cont_g)
        .expect("content divides")
        .normalize_units();
    if a.max_degree_in(v) < b.max_degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return c.mul(&primitive_part(&b, v));
        }
        a = b;
        b = primitive_part(&r, v);
        if !b.uses_var(v) {
            // Degree 0 remainder: the primitive gcd in v is 1.
            return c;
        }
    }
}

/// GCD of a nonempty list of Laurent polynomials, unit-normalized.
pub fn laurent_gcd(fs: &[LaurentPoly]) -> Result<LaurentPoly> {
    let Some(first) = fs.first() else {
        return Err(Error::Invalid("gcd of empty list".into()));
    };
    let n = first.nvars;
    if fs.iter().any(|f| f.nvars != n) {
        return Err(Error::Invalid("mixed variable counts in gcd".into()));
    }
    let mut g = LaurentPoly::zero(n);
    for f in fs {
        if f.is_zero() {
            continue;
        }
        let shifted = f.normalize_units();
        g = poly_gcd(&g, &shifted);
        if g.is_unit() {
            break;
        }
    }
    Ok(g.normalize_units())
}

// ---------------------------------------------------------------------------
// Newton polytope
// ---------------------------------------------------------------------------

/// Vertices of the Newton polytope (exact, via rational LP feasibility).
pub fn newton_vertices(f: &LaurentPoly) -> Vec<Vec<i64>> {
    let pts = f.support();
    if pts.len() <= 2 {
        return pts;
    }
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let others: Vec<&Vec<i64>> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q)
            .collect();
        if !in_convex_hull(p, &others) {
            out.push(p.clone());
        }
    }
    out
}

/// Is every support point on one line segment?
pub fn newton_is_segment(f: &LaurentPoly) -> bool {
    let pts = f.support();
    if pts.len() <= 2 {
        return true;
    }
    let base = &pts[0];
    let dirs: Vec<Vec<i64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    crate::intmat::rank(&crate::intmat::from_i64(&dirs)) <= 1
}

/// Phase-1 simplex: is p a convex combination of pts?
fn in_convex_hull(p: &[i64], pts: &[&Vec<i64>]) -> bool {
    let n = p.len();
    let m = pts.len();
    // Constraints: Σ λ_j pts_j = p (n rows), Σ λ_j = 1, λ ≥ 0.
    let rows = n + 1;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    let mut b: Vec<BigRational> = Vec::with_capacity(rows);
    for i in 0..n {
        a.push((0..m).map(|j| BigRational::from(BigInt::from(pts[j][i]))).collect());
        b.push(BigRational::from(BigInt::from(p[i])));
    }
    a.push(vec![BigRational::one(); m]);
    b.push(BigRational::one());
    lp_feasible(a, b)
}

/// Feasibility of {A λ = b, λ ≥ 0} by phase-1 simplex with Bland's rule.
fn lp_feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let rows = a.len();
    let m = if rows == 0 { 0 } else { a[0].len() };
    // Make b ≥ 0.
    for i in 0..rows {
        if b[i] < BigRational::zero() {
            b[i] = -b[i].clone();
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    // Tableau with artificial variables m..m+rows; objective: minimize their sum.
    let total = m + rows;
    let mut tab: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = a[i].clone();
            row.extend((0..rows).map(|k| {
                if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (m..total).collect();
    // Phase-1 objective row: reduced costs for minimizing the artificial sum,
    // canonicalized so basic (artificial) columns read zero.
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); total + 1];
    for i in 0..rows {
        for j in 0..m {
            let v = tab[i][j].clone();
            obj[j] += v;
        }
        let v = tab[i][total].clone();
        obj[total] += v;
    }
    loop {
        // Entering variable: smallest original index with positive reduced
        // cost (Bland's rule; artificials never re-enter).
        let Some(enter) = (0..m).find(|&j| obj[j] > BigRational::zero()) else {
            break;
        };
        // Ratio test with Bland's rule.
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..rows {
            if tab[i][enter] > BigRational::zero() {
                let ratio = &tab[i][total] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            break; // unbounded (cannot happen in phase 1)
        };
        // Pivot.
        let piv = tab[li][enter].clone();
        for j in 0..=total {
            tab[li][j] = &tab[li][j] / &piv;
        }
        for i in 0..rows {
            if i != li && !tab[i][enter].is_zero() {
                let factor = tab[i][enter].clone();
                for j in 0..=total {
                    let d = &factor * &tab[li][j];
                    tab[i][j] -= d;
                }
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for j in 0..=total {
                let d = &factor * &tab[li][j];
                obj[j] -= d;
            }
        }
        basis[li] = enter;
    }
    // Feasible iff the artificial objective reaches 0.
    obj[total].is_zero()
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Matrix of Laurent polynomials sharing one variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn new(rows: usize, cols: usize, nvars: usize, entries: Vec<Vec<LaurentPoly>>) -> Self {
        assert_eq!(entries.len(), rows);
        for r in &entries {
            assert_eq!(r.len(), cols);
            for e in r {
                assert_eq!(e.nvars(), nvars);
            }
        }
        LaurentMatrix {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    /// Determinant of the square submatrix on the given rows/cols.
    pub fn minor(&self, row_idx: &[usize], col_idx: &[usize]) -> LaurentPoly {
        assert_eq!(row_idx.len(), col_idx.len());
        self.det_sub(row_idx, col_idx)
    }

    fn det_sub(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        let k = rows.len();
        if k == 0 {
            return LaurentPoly::one(self.nvars);
        }
        if k == 1 {
            return self.entries[rows[0]][cols[0]].clone();
        }
        let mut acc = LaurentPoly::zero(self.nvars);
        let rest: Vec<usize> = rows[1..].to_vec();
        for (pos, &c) in cols.iter().enumerate() {
            let e = &self.entries[rows[0]][c];
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos)
                .map(|(_, &x)| x)
                .collect();
            let sub = self.det_sub(&rest, &sub_cols);
            let signed = if pos % 2 == 0 { sub } else { sub.neg() };
            acc = acc.add(&e.mul(&signed));
        }
        acc
    }

    /// Evaluate every entry at units of F_p.
    pub fn eval_fp(&self, field: &PrimeField, values: &[u64]) -> crate::fp::FpMatrix {
        let mut m = crate::fp::FpMatrix::zero(*field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.entries[i][j].eval_fp(field, values));
            }
        }
        m
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

/// Render in the CLI text form, e.g. "t1*t2*t3 - 1".
pub fn render(f: &LaurentPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = String::new();
    // Lexicographically greatest term first.
    for (i, (e, c)) in f.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                parts.push('-');
            }
        } else {
            parts.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !mag.is_one() || e.iter().all(|&x| x == 0) {
            factors.push(mag.to_string());
        }
        for (v, &x) in e.iter().enumerate() {
            if x == 1 {
                factors.push(format!("t{}", v + 1));
            } else if x != 0 {
                factors.push(format!("t{}^{}", v + 1, x));
            }
        }
        parts.push_str(&factors.join("*"));
    }
    parts
}

/// Parse the CLI text form. Variables t1..tn; `nvars` may widen the ambient
/// variable count beyond the largest index used.
pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<LaurentPoly> {
    let toks = tokenize_poly(text)?;
    // First pass: find the variable count.
    let mut max_var = 0usize;
    for t in &toks {
        if let PTok::Var(i) = t {
            max_var = max_var.max(*i);
        }
    }
    let n = nvars.unwrap_or(max_var);
    if n < max_var {
        return Err(Error::Invalid(format!(
            "variable t{max_var} exceeds requested count {n}"
        )));
    }
    let mut p = PolyParser { toks, pos: 0, n };
    let f = p.parse_sum()?;
    if p.pos < p.toks.len() {
        return Err(Error::Parse {
            pos: 0,
            msg: "trailing input in polynomial".into(),
        });
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
enum PTok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize_poly(text: &str) -> Result<Vec<PTok>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            toks.push(PTok::Int(text[start..i].parse().unwrap()));
        } else if c == 't' {
            let start = i;
            i += 1;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            if i == start + 1 {
                return Err(Error::Parse {
                    pos: start,
                    msg: "expected variable index after `t`".into(),
                });
            }
            toks.push(PTok::Var(text[start + 1..i].parse().map_err(|_| {
                Error::Parse {
                    pos: start,
                    msg: "bad variable index".into(),
                }
            })?));
        } else {
            match c {
                '+' => toks.push(PTok::Plus),
                '-' => toks.push(PTok::Minus),
                '*' => toks.push(PTok::Star),
                '^' => toks.push(PTok::Caret),
                _ => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("unexpected character `{c}` in polynomial"),
                    })
                }
            }
            i += 1;
        }
    }
    Ok(toks)
}

struct PolyParser {
    toks: Vec<PTok>,
    pos: usize,
    n: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<&PTok> {
        self.toks.get(self.pos)
    }

    fn parse_sum(&mut self) -> Result<LaurentPoly> {
        let mut sign = BigInt::one();
        if let Some(PTok::Minus) = self.peek() {
            self.pos += 1;
            sign = -sign;
        } else if let Some(PTok::Plus) = self.peek() {
            self.pos += 1;
        }
        let mut acc = self.parse_term()?.scale(&sign);
        while let Some(t) = self.peek() {
            let sign = match t {
                PTok::Plus => BigInt::one(),
                PTok::Minus => -BigInt::one(),
                _ => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "expected `+` or `-` between terms".into(),
                    })
                }
            };
            self.pos += 1;
            let term = self.parse_term()?;
            acc = acc.add(&term.scale(&sign));
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.parse_atom()?;
        loop {
            match self.peek() {
                Some(PTok::Star) => {
                    self.pos += 1;
                    let a = self.parse_atom()?;
                    acc = acc.mul(&a);
                }
                Some(PTok::Var(_)) | Some(PTok::Int(_)) => {
                    let a = self.parse_atom()?;
                    acc = acc.mul(&a);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_atom(&mut self) -> Result<LaurentPoly> {
        match self.peek().cloned() {
            Some(PTok::Int(c)) => {
                self.pos += 1;
                Ok(LaurentPoly::constant(self.n, c))
            }
            Some(PTok::Var(i)) => {
                self.pos += 1;
                if i == 0 || i > self.n {
                    return Err(Error::Invalid(format!("variable index t{i} out of range")));
                }
                let mut e = vec![0i64; self.n];
                let mut exp = 1i64;
                if let Some(PTok::Caret) = self.peek() {
                    self.pos += 1;
                    let mut sign = 1i64;
                    if let Some(PTok::Minus) = self.peek() {
                        self.pos += 1;
                        sign = -1;
                    }
                    match self.peek().cloned() {
                        Some(PTok::Int(v)) => {
                            self.pos += 1;
                            exp = sign
                                * i64::try_from(&v).map_err(|_| {
                                    Error::Invalid("exponent out of range".into())
                                })?;
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos: 0,
                                msg: "expected integer exponent".into(),
                            })
                        }
                    }
                    if exp == 0 {
                        return Err(Error::Parse {
                            pos: 0,
                            msg: "zero exponent is not a valid term".into(),
                        });
                    }
                }
                e[i - 1] = exp;
                Ok(LaurentPoly::monomial(self.n, e, BigInt::one()))
            }
            _ => Err(Error::Parse {
                pos: 0,
                msg: "expected coefficient or variable".into(),
            }),
        }
    }
}
