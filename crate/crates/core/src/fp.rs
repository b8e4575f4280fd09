//! Arithmetic in the prime field F_p for machine-word primes.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |s| s <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The field F_p. All element values are reduced representatives in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Power with a signed exponent (inverts for negative exponents).
    pub fn pow_signed(&self, base: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(base, e as u64)
        } else {
            self.pow(self.inv(base), (-e) as u64)
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        assert!(a % self.p != 0);
        let group = self.p - 1;
        let mut ord = group;
        for q in prime_factors(group) {
            while ord % q == 0 && self.pow(a, ord / q) == 1 {
                ord /= q;
            }
        }
        ord
    }

    /// A generator of the cyclic group F_p^*.
    pub fn primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let group = self.p - 1;
        let factors = prime_factors(group);
        'outer: for g in 2..self.p {
            for &q in &factors {
                if self.pow(g, group / q) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("F_p^* is cyclic")
    }

    /// A primitive n-th root of unity; requires n | p - 1.
    pub fn primitive_nth_root(&self, n: u64) -> Result<u64> {
        if n == 0 || (self.p - 1) % n != 0 {
            return Err(Error::Precondition(format!(
                "{} does not divide p - 1 = {}",
                n,
                self.p - 1
            )));
        }
        Ok(self.pow(self.primitive_root(), (self.p - 1) / n))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime p with n | p - 1 and p not dividing n.
pub fn smallest_prime_with_nth_roots(n: u64) -> u64 {
    assert!(n >= 1);
    let mut p = n + 1;
    loop {
        if is_prime(p) && (p - 1) % n == 0 && n % p != 0 {
            return p;
        }
        p += n.max(1);
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            result -= result / d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            out.push(d);
        }
    }
    out
}

/// Dense matrix over F_p.
#[derive(Debug, Clone)]
pub struct FpMatrix {
    pub field: PrimeField,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let pivot = (rank..rows).find(|&r| m[r * cols + col] != 0);
            let Some(pr) = pivot else { continue };
            for j in 0..cols {
                m.swap(pr * cols + j, rank * cols + j);
            }
            let inv = f.inv(m[rank * cols + col]);
            for j in col..cols {
                m[rank * cols + j] = f.mul(m[rank * cols + j], inv);
            }
            for r in 0..rows {
                if r != rank && m[r * cols + col] != 0 {
                    let factor = m[r * cols + col];
                    for j in col..cols {
                        let t = f.mul(factor, m[rank * cols + j]);
                        m[r * cols + j] = f.sub(m[r * cols + j], t);
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}
