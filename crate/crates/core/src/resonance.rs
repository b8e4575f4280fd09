//! Resonance varieties: the linearized Alexander matrix of a
//! commutator-relators presentation, membership tests for rational points,
//! cup-product/isotropy computations, and sampled comparison of resonance
//! against characteristic membership.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::intmat::{self, IMat};
use crate::jumploci::{depth, Character};
use crate::presentations::{alexander_matrix, GroupPresentation};

/// A matrix of integral linear forms in b1 variables: entry (r, j) is the
/// form a ↦ Σ_i coeffs[r][j][i]·a_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormMatrix {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    pub coeffs: Vec<Vec<Vec<BigInt>>>,
}

impl LinearFormMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        LinearFormMatrix {
            rows,
            cols,
            nvars,
            coeffs: vec![vec![vec![BigInt::zero(); nvars]; cols]; rows],
        }
    }

    /// Evaluate at an integer point, yielding an integer matrix.
    pub fn eval(&self, a: &[BigInt]) -> Result<IMat> {
        if a.len() != self.nvars {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, forms have {}",
                a.len(),
                self.nvars
            )));
        }
        let mut m = intmat::zeros(self.rows.max(1), self.cols.max(1));
        for r in 0..self.rows {
            for j in 0..self.cols {
                let mut v = BigInt::zero();
                for i in 0..self.nvars {
                    v += &self.coeffs[r][j][i] * &a[i];
                }
                m[r][j] = v;
            }
        }
        Ok(m)
    }

    /// Rank at a rational point (clear denominators first; rank over Q is
    /// unchanged by row/column scaling).
    pub fn rank_at(&self, a: &[BigRational]) -> Result<usize> {
        let ints = clear_denominators(a);
        if self.rows == 0 || self.cols == 0 {
            return Ok(0);
        }
        Ok(intmat::rank(&self.eval(&ints)?))
    }
}

fn clear_denominators(a: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for x in a {
        lcm = num_integer::lcm(lcm, x.denom().abs());
    }
    a.iter().map(|x| (x * BigRational::from(lcm.clone())).to_integer()).collect()
}

/// The linearized Alexander matrix Θ of a commutator-relators presentation:
/// each Alexander-matrix entry f(t) with f(1) = 0 is replaced by its
/// differential at 1, the linear form a ↦ Σ_u c_u ⟨u, a⟩. Rows are relators,
/// columns generators; over a commutator-relators group H₁ is free on the
/// generators, so the forms live in b₁ = q variables.
pub fn linearized_alexander_matrix(p: &GroupPresentation) -> Result<LinearFormMatrix> {
    if !p.is_commutator_relators() {
        return Err(Error::Precondition(
            "linearization requires a commutator-relators presentation".into(),
        ));
    }
    let (phi, ab) = alexander_matrix(p);
    debug_assert_eq!(ab.rank, p.ngens());
    let n = ab.rank;
    let mut out = LinearFormMatrix::zero(phi.rows, phi.cols, n);
    for r in 0..phi.rows {
        for j in 0..phi.cols {
            let f = phi.entry(r, j);
            if !f.eval_at_one().is_zero() {
                return Err(Error::Invalid(
                    "Alexander matrix entry does not vanish at 1".into(),
                ));
            }
            for (u, c) in f.terms() {
                for i in 0..n {
                    out.coeffs[r][j][i] += c * BigInt::from(u[i]);
                }
            }
        }
    }
    Ok(out)
}

/// a ∈ R_d(G) iff rank Θ(a) < b₁ − d. For nonzero a this is the condition
/// dim H¹(H^•(G), a ∪ −) ≥ d.
pub fn resonance_membership(theta: &LinearFormMatrix, a: &[BigRational], d: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    let rank = theta.rank_at(a)?;
    Ok(rank + d < theta.nvars)
}

/// First resonance Betti number at a nonzero class: β₁(a) = (b₁ − 1) − rank Θ(a).
pub fn resonance_betti(theta: &LinearFormMatrix, a: &[BigRational]) -> Result<usize> {
    if a.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("class must be nonzero".into()));
    }
    let rank = theta.rank_at(a)?;
    Ok(theta.nvars - 1 - rank)
}

/// Cup-product structure on degree one: μ(e_i, e_j) ∈ Z^{b₂}, stored as
/// mu[r][i][j], antisymmetric in (i, j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupStructure {
    pub b1: usize,
    pub b2: usize,
    pub mu: Vec<Vec<Vec<BigInt>>>,
}

impl CupStructure {
    pub fn new(b1: usize, b2: usize, mu: Vec<Vec<Vec<BigInt>>>) -> Result<Self> {
        if mu.len() != b2 || mu.iter().any(|m| m.len() != b1 || m.iter().any(|r| r.len() != b1)) {
            return Err(Error::Invalid("cup tensor has wrong shape".into()));
        }
        for m in &mu {
            for i in 0..b1 {
                for j in 0..b1 {
                    if m[i][j] != -&m[j][i] {
                        return Err(Error::Invalid("cup tensor is not antisymmetric".into()));
                    }
                }
            }
        }
        Ok(CupStructure { b1, b2, mu })
    }

    /// Θ(a)_{r,j} = Σ_i μ_r(e_i, e_j) a_i.
    pub fn theta(&self) -> LinearFormMatrix {
        let mut t = LinearFormMatrix::zero(self.b2, self.b1, self.b1);
        for r in 0..self.b2 {
            for j in 0..self.b1 {
                for i in 0..self.b1 {
                    t.coeffs[r][j][i] = self.mu[r][i][j].clone();
                }
            }
        }
        t
    }

    /// Inverse of `theta`, antisymmetrizing is unnecessary when the matrix
    /// came from a genuine cup structure.
    pub fn from_theta(theta: &LinearFormMatrix) -> Result<Self> {
        if theta.cols != theta.nvars {
            return Err(Error::Invalid(
                "square structure required: cols must equal nvars".into(),
            ));
        }
        let b1 = theta.nvars;
        let b2 = theta.rows;
        let mut mu = vec![vec![vec![BigInt::zero(); b1]; b1]; b2];
        for r in 0..b2 {
            for i in 0..b1 {
                for j in 0..b1 {
                    mu[r][i][j] = theta.coeffs[r][j][i].clone();
                }
            }
        }
        CupStructure::new(b1, b2, mu)
    }

    /// Rank of Λ²L → Z^{b₂} on a subspace with the given integer basis:
    /// the span of {μ(v_s, v_t)} over basis pairs s < t.
    pub fn isotropy_rank(&self, basis: &IMat) -> usize {
        let mut rows: IMat = Vec::new();
        for s in 0..basis.len() {
            for t in s + 1..basis.len() {
                let mut img = vec![BigInt::zero(); self.b2];
                for (r, img_r) in img.iter_mut().enumerate() {
                    for i in 0..self.b1 {
                        for j in 0..self.b1 {
                            *img_r += &self.mu[r][i][j] * &basis[s][i] * &basis[t][j];
                        }
                    }
                }
                rows.push(img);
            }
        }
        if rows.is_empty() {
            0
        } else {
            intmat::rank(&rows)
        }
    }
}

/// Build Θ from a totally antisymmetric 3-tensor η on k^n (the triple
/// Massey/cup form of a closed 3-manifold): Θ(a)_{ij} = Σ_k η_{ijk} a_k,
/// an n×n matrix of forms.
pub fn theta_from_3form(eta: &[Vec<Vec<BigInt>>]) -> Result<LinearFormMatrix> {
    let n = eta.len();
    for p in eta {
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("3-form tensor has wrong shape".into()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &eta[i][j][k];
                if *v != -&eta[j][i][k] || *v != -&eta[i][k][j] {
                    return Err(Error::Invalid("3-form is not totally antisymmetric".into()));
                }
            }
        }
    }
    let mut t = LinearFormMatrix::zero(n, n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t.coeffs[i][j][k] = eta[i][j][k].clone();
            }
        }
    }
    Ok(t)
}

/// Outcome of comparing resonance and characteristic membership on sampled
/// rational directions. `resonance_only` counts points in R₁ whose
/// exponential misses V₁ mod p — the signal that the tangent cone is a
/// proper subset of the resonance variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermComparison {
    pub samples: usize,
    pub both: usize,
    pub resonance_only: usize,
    pub characteristic_only: usize,
    pub neither: usize,
    pub signal: bool,
}

/// Sample integer classes a ∈ {−2,…,2}^q \ {0} with a seeded generator,
/// test a ∈ R₁ over Q against ρ_a ∈ V₁ over F_p, where ρ_a(x_i) = g^{a_i}
/// for a primitive root g.
pub fn germ_comparison_sample(
    p: &GroupPresentation,
    prime: u64,
    samples: usize,
    seed: u64,
) -> Result<GermComparison> {
    let theta = linearized_alexander_matrix(p)?;
    let field = PrimeField::new(prime)?;
    let g = field.primitive_root();
    let q = p.ngens();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = GermComparison {
        samples: 0,
        both: 0,
        resonance_only: 0,
        characteristic_only: 0,
        neither: 0,
        signal: false,
    };
    while out.samples < samples {
        let a: Vec<i64> = (0..q).map(|_| rng.gen_range(-2i64..=2)).collect();
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        out.samples += 1;
        let a_rat: Vec<BigRational> =
            a.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
        let in_r1 = resonance_membership(&theta, &a_rat, 1)?;
        let values: Vec<u64> = a
            .iter()
            .map(|&x| {
                let e = x.rem_euclid((prime - 1) as i64) as u64;
                field.pow(g, e)
            })
            .collect();
        let rho = Character::new(p, prime, values)?;
        let in_v1 = if rho.is_trivial() {
            true
        } else {
            depth(p, &rho)?.depth >= 1
        };
        match (in_r1, in_v1) {
            (true, true) => out.both += 1,
            (true, false) => out.resonance_only += 1,
            (false, true) => out.characteristic_only += 1,
            (false, false) => out.neither += 1,
        }
    }
    out.signal = out.resonance_only > 0;
    Ok(out)
}
