//! Characteristic-variety membership via depth of prime-field characters,
//! codimension-one strata, and Betti numbers of finite abelian covers.

use num_bigint::BigInt;

use crate::alexinv::{alexander_polynomial, AlexanderPolynomial};
use crate::error::{Error, Result};
use crate::exactla;
use crate::fp::{FpMatrix, PrimeField};
use crate::intmat;
use crate::presentations::{
    fox_jacobian, GroupPresentation, GroupRingElement, ModEpimorphism,
};
use crate::word::Word;

pub const DEFAULT_CHARACTER_CAP: u128 = 1_000_000;

/// A character G → F_p^×, stored by its values on the generators. Relators
/// are checked to evaluate to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub field: PrimeField,
    pub values: Vec<u64>,
}

impl Character {
    pub fn new(p: &GroupPresentation, prime: u64, values: Vec<u64>) -> Result<Self> {
        let field = PrimeField::new(prime)?;
        if values.len() != p.ngens() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} values, got {}",
                p.ngens(),
                values.len()
            )));
        }
        let values: Vec<u64> = values.into_iter().map(|v| v % prime).collect();
        if values.iter().any(|&v| v == 0) {
            return Err(Error::InvalidCharacter(
                "character values must be units".into(),
            ));
        }
        let ch = Character { field, values };
        for (i, r) in p.relators.iter().enumerate() {
            if ch.eval_word(r) != 1 {
                return Err(Error::InvalidCharacter(format!(
                    "relator {} does not evaluate to 1",
                    i + 1
                )));
            }
        }
        Ok(ch)
    }

    pub fn trivial(p: &GroupPresentation, prime: u64) -> Result<Self> {
        Character::new(p, prime, vec![1; p.ngens()])
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }

    pub fn eval_word(&self, w: &Word) -> u64 {
        let mut acc = 1u64;
        for &(g, e) in w.runs() {
            acc = self.field.mul(acc, self.field.pow_signed(self.values[g], e));
        }
        acc
    }

    pub fn eval_ring(&self, e: &GroupRingElement) -> u64 {
        let mut acc = 0u64;
        for (w, c) in e.terms() {
            let cv = self.field.reduce(c);
            acc = self.field.add(acc, self.field.mul(cv, self.eval_word(w)));
        }
        acc
    }

    /// ρ^k, valid whenever ρ is.
    pub fn pow(&self, k: u64) -> Character {
        Character {
            field: self.field,
            values: self.values.iter().map(|&v| self.field.pow(v, k)).collect(),
        }
    }

    /// Order of ρ in the character group: lcm of the value orders.
    pub fn order(&self) -> u64 {
        self.values
            .iter()
            .fold(1u64, |acc, &v| num_integer::lcm(acc, self.field.order(v)))
    }
}

/// Depth of ρ: dimension of H₁ of the presentation 2-complex with
/// coefficients twisted by ρ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthProfile {
    pub depth: usize,
    pub jacobian_rank: usize,
    pub is_trivial_character: bool,
}

/// Twisted chain complex of the presentation 2-complex:
/// F_p^m --(evaluated Jacobian)--> F_p^q --(ρ(x_i) − 1)--> F_p.
/// depth = dim ker ∂₁ − rank ∂₂; at ρ = 1 this is dim H₁(G, F_p).
pub fn depth(p: &GroupPresentation, rho: &Character) -> Result<DepthProfile> {
    if rho.values.len() != p.ngens() {
        return Err(Error::InvalidCharacter(
            "character does not match presentation".into(),
        ));
    }
    let q = p.ngens();
    let field = rho.field;
    let jac = fox_jacobian(p);
    let mut d2 = FpMatrix::zero(field, p.nrels(), q);
    for (i, row) in jac.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            d2.set(i, j, rho.eval_ring(e));
        }
    }
    let rank2 = d2.rank();
    let rank1 = usize::from(!rho.is_trivial());
    Ok(DepthProfile {
        depth: (q - rank1) - rank2,
        jacobian_rank: rank2,
        is_trivial_character: rho.is_trivial(),
    })
}

/// ρ lies in V_d iff depth(ρ) ≥ d.
pub fn characteristic_membership(
    p: &GroupPresentation,
    rho: &Character,
    d: usize,
) -> Result<bool> {
    Ok(depth(p, rho)?.depth >= d)
}

/// dim H₁(X, F_p) of the presentation 2-complex (untwisted).
pub fn h1_dim_mod_p(p: &GroupPresentation, prime: u64) -> Result<usize> {
    let e = intmat::from_i64(&p.exponent_matrix());
    let rank = if e.is_empty() {
        0
    } else {
        exactla::rank_mod_p(&e, prime)?
    };
    Ok(p.ngens() - rank)
}

/// All characters G → F_p^×, enumerated through the Smith normal form of
/// the abelianization, optionally filtered by exact order.
pub fn enumerate_characters(
    p: &GroupPresentation,
    prime: u64,
    exact_order: Option<u64>,
    cap: u128,
) -> Result<Vec<Character>> {
    let field = PrimeField::new(prime)?;
    if let Some(n) = exact_order {
        if n == 0 || (prime - 1) % n != 0 {
            return Err(Error::Precondition(format!(
                "order {n} does not divide p - 1 = {}",
                prime - 1
            )));
        }
    }
    let q = p.ngens();
    let e = intmat::from_i64(&p.exponent_matrix());
    let m = intmat::transpose(&e);
    let s = if m.is_empty() {
        None
    } else {
        Some(intmat::smith_form(&m))
    };
    let (smith_rank, factors, left) = match &s {
        Some(s) => (s.rank, s.factors.clone(), s.left.clone()),
        None => (0, Vec::new(), intmat::identity(q)),
    };
    let g = field.primitive_root();
    // Hom(Z/d_i, F_p^*) is cyclic of order gcd(d_i, p-1); the free part
    // contributes all of F_p^*.
    let mut value_sets: Vec<Vec<u64>> = Vec::with_capacity(q);
    let mut total: u128 = 1;
    for i in 0..q {
        let set: Vec<u64> = if i < smith_rank {
            let d = u64::try_from(&factors[i]).map_err(|_| {
                Error::Invalid("torsion factor too large for enumeration".into())
            })?;
            let k = num_integer::gcd(d, prime - 1);
            let gen = field.pow(g, (prime - 1) / k);
            (0..k).map(|j| field.pow(gen, j)).collect()
        } else {
            (0..prime - 1).map(|j| field.pow(g, j)).collect()
        };
        total = total.saturating_mul(set.len() as u128);
        value_sets.push(set);
    }
    if total > cap {
        return Err(Error::CapExceeded {
            what: "character count",
            value: total,
            limit: cap,
        });
    }
    // A choice ζ_i per Smith coordinate induces ρ(x_j) = Π_i ζ_i^{U_ij}.
    let mut out = Vec::new();
    let mut idx = vec![0usize; q];
    loop {
        let mut values = vec![1u64; q];
        for (gen_j, v) in values.iter_mut().enumerate() {
            for i in 0..q {
                let zeta = value_sets[i][idx[i]];
                let exp = &left[i][gen_j];
                let e_red = num_integer::Integer::mod_floor(
                    exp,
                    &BigInt::from(prime - 1),
                );
                *v = field.mul(*v, field.pow(zeta, u64::try_from(&e_red).unwrap()));
            }
        }
        let ch = Character { field, values };
        let keep = match exact_order {
            Some(n) => ch.order() == n,
            None => true,
        };
        if keep {
            out.push(ch);
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == q {
                out.sort_by(|a, b| a.values.cmp(&b.values));
                out.dedup_by(|a, b| a.values == b.values);
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < value_sets[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// The codimension-one stratum of the first characteristic variety, read
/// off from b₁ and Δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Codim1Case {
    /// Δ = 0: the stratum is all of the character torus.
    FullTorus,
    /// b₁ ≥ 1, Δ ≠ 0: the stratum is the hypersurface V(Δ); for b₁ = 1 the
    /// trivial character is adjoined.
    Hypersurface { adjoin_trivial: bool },
    /// b₁ ≥ 2 with Δ an associate of a nonzero constant: empty stratum.
    Empty,
}

#[derive(Debug, Clone)]
pub struct Codim1Report {
    pub b1: usize,
    pub delta: AlexanderPolynomial,
    pub case: Codim1Case,
}

pub fn codim1_stratum(p: &GroupPresentation, cap: u128) -> Result<Codim1Report> {
    let delta = alexander_polynomial(p, cap)?;
    let b1 = delta.b1;
    let normalized = delta.poly.normalize_units();
    let case = if normalized.is_zero() {
        Codim1Case::FullTorus
    } else if b1 >= 2 && normalized.is_constant() {
        Codim1Case::Empty
    } else {
        Codim1Case::Hypersurface {
            adjoin_trivial: b1 == 1,
        }
    };
    Ok(Codim1Report { b1, delta, case })
}

/// H₁ of a finite cyclic cover, together with the mod-p Betti number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverHomology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CoverHomology {
    pub fn betti_mod_p(&self, prime: u64) -> usize {
        let p = BigInt::from(prime);
        self.rank
            + self
                .torsion
                .iter()
                .filter(|d| num_integer::Integer::mod_floor(*d, &p) == BigInt::from(0))
                .count()
    }
}

/// dim H₁(Y, F_p) for the n-fold cyclic cover classified by λ, by summing
/// φ(e)·depth over the characters (ι∘λ)^{n/e}. Requires p ∤ n and n | p − 1.
pub fn cover_betti_depth(
    p: &GroupPresentation,
    lambda: &ModEpimorphism,
    prime: u64,
) -> Result<usize> {
    let n = lambda.modulus;
    let field = PrimeField::new(prime)?;
    if n % prime == 0 {
        return Err(Error::Precondition(format!("p = {prime} divides n = {n}")));
    }
    if (prime - 1) % n != 0 {
        return Err(Error::Precondition(format!(
            "n = {n} does not divide p - 1 = {}",
            prime - 1
        )));
    }
    let zeta = field.primitive_nth_root(n)?;
    let mut total = h1_dim_mod_p(p, prime)?;
    // Sum depth over every nontrivial character of Z_n individually: unlike
    // the complex case, mod-p depths need not be constant on Galois orbits
    // (e.g. Baumslag–Solitar covers), so φ(e)-weighting a representative
    // per order would miscount.
    for j in 1..n {
        let values: Vec<u64> = lambda
            .residues
            .iter()
            .map(|&r| field.pow(zeta, (r * j) % n))
            .collect();
        let rho = Character { field, values };
        total += depth(p, &rho)?.depth;
    }
    Ok(total)
}

/// H₁ of the cover via the Smith normal form of the permutation lift: the
/// lift's cokernel presents H₁(K) ⊕ Z^{n−1}.
pub fn cover_h1_snf(p: &GroupPresentation, lambda: &ModEpimorphism) -> Result<CoverHomology> {
    let n = lambda.modulus as usize;
    let lift = crate::presentations::permutation_lift(p, lambda);
    let qn = p.ngens() * n;
    let (rank, torsion) = if lift.is_empty() {
        (0, Vec::new())
    } else {
        let s = intmat::smith_form(&lift);
        (s.rank, s.torsion())
    };
    let free = qn - rank;
    if free < n - 1 {
        return Err(Error::Invalid(
            "permutation lift cokernel smaller than the deck summand".into(),
        ));
    }
    Ok(CoverHomology {
        rank: free - (n - 1),
        torsion,
    })
}

/// Estimate of b₁ of the n-congruence cover: b₁(X) + Σ depth(ρ) over
/// characters of exact order n. A mod-p surrogate; may overcount by
/// p-torsion, so callers can rerun at a second prime.
pub fn congruence_b1(
    p: &GroupPresentation,
    n: u64,
    prime: u64,
    char_cap: u128,
) -> Result<usize> {
    if n % prime == 0 {
        return Err(Error::Precondition(format!("p = {prime} divides n = {n}")));
    }
    if (prime - 1) % n != 0 {
        return Err(Error::Precondition(format!(
            "n = {n} does not divide p - 1 = {}",
            prime - 1
        )));
    }
    let chars = enumerate_characters(p, prime, Some(n), char_cap)?;
    let mut total = h1_dim_mod_p(p, prime)?;
    for rho in &chars {
        total += depth(p, rho)?.depth;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::smallest_prime_with_nth_roots;
    use crate::presentations::{
        free_abelian, free_group, parse_presentation, pencil_group,
    };

    #[test]
    fn character_validation() {
        let p = parse_presentation("<x | x^3>").unwrap();
        assert!(Character::new(&p, 7, vec![2]).is_ok()); // 2^3 = 1 mod 7
        assert!(Character::new(&p, 7, vec![3]).is_err()); // 3^3 = 6 ≠ 1
        assert!(Character::new(&p, 7, vec![0]).is_err());
    }

    #[test]
    fn depth_free_group() {
        let p = free_group(2);
        let rho = Character::new(&p, 5, vec![2, 3]).unwrap();
        assert_eq!(depth(&p, &rho).unwrap().depth, 1);
        let triv = Character::trivial(&p, 5).unwrap();
        assert_eq!(depth(&p, &triv).unwrap().depth, 2);
    }

    #[test]
    fn depth_torus() {
        let p = free_abelian(2);
        let rho = Character::new(&p, 5, vec![2, 3]).unwrap();
        assert_eq!(depth(&p, &rho).unwrap().depth, 0);
        let triv = Character::trivial(&p, 5).unwrap();
        assert_eq!(depth(&p, &triv).unwrap().depth, 2);
    }

    #[test]
    fn depth_p3_raag() {
        // V₁(P₃ RAAG) = {t₂ = 1}: characters with ρ(x₂) = 1 have depth ≥ 1.
        let p = parse_presentation("<x1,x2,x3 | [x1,x2], [x2,x3]>").unwrap();
        let in_v1 = Character::new(&p, 7, vec![3, 1, 5]).unwrap();
        assert!(depth(&p, &in_v1).unwrap().depth >= 1);
        let off_v1 = Character::new(&p, 7, vec![3, 2, 5]).unwrap();
        assert_eq!(depth(&p, &off_v1).unwrap().depth, 0);
    }

    #[test]
    fn enumerate_z3_characters() {
        let p = parse_presentation("<x | x^3>").unwrap();
        let all = enumerate_characters(&p, 7, None, DEFAULT_CHARACTER_CAP).unwrap();
        assert_eq!(all.len(), 3);
        let order3 = enumerate_characters(&p, 7, Some(3), DEFAULT_CHARACTER_CAP).unwrap();
        assert_eq!(order3.len(), 2);
        let vals: Vec<u64> = order3.iter().map(|c| c.values[0]).collect();
        assert_eq!(vals, vec![2, 4]);
    }

    #[test]
    fn enumerate_free_group_characters() {
        let p = free_group(2);
        let all = enumerate_characters(&p, 5, None, DEFAULT_CHARACTER_CAP).unwrap();
        assert_eq!(all.len(), 16);
        let order4 = enumerate_characters(&p, 5, Some(4), DEFAULT_CHARACTER_CAP).unwrap();
        // (Z/4)^2 has 16 elements, 12 of exact order 4.
        assert_eq!(order4.len(), 12);
    }

    #[test]
    fn character_cap() {
        let p = free_group(4);
        let err = enumerate_characters(&p, 101, None, 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn codim1_cases() {
        let free = free_group(2);
        assert!(matches!(
            codim1_stratum(&free, crate::alexinv::DEFAULT_MINOR_CAP)
                .unwrap()
                .case,
            Codim1Case::FullTorus
        ));
        let bs = parse_presentation("<x1,x2 | x1 x2 x1^-1 x2^-2>").unwrap();
        assert!(matches!(
            codim1_stratum(&bs, crate::alexinv::DEFAULT_MINOR_CAP).unwrap().case,
            Codim1Case::Hypersurface {
                adjoin_trivial: true
            }
        ));
        let z3 = free_abelian(3);
        assert!(matches!(
            codim1_stratum(&z3, crate::alexinv::DEFAULT_MINOR_CAP).unwrap().case,
            Codim1Case::Empty
        ));
    }

    #[test]
    fn cover_betti_free_group_double_cover() {
        // Double cover of a wedge of two circles has b1 = 3.
        let p = free_group(2);
        let lambda = ModEpimorphism::new(&p, 2, vec![1, 1]).unwrap();
        assert_eq!(cover_betti_depth(&p, &lambda, 5).unwrap(), 3);
        let h = cover_h1_snf(&p, &lambda).unwrap();
        assert_eq!(h.rank, 3);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn cover_betti_torus() {
        // Any finite cyclic cover of the torus is a torus.
        let p = free_abelian(2);
        for n in [2u64, 3, 4] {
            let lambda = ModEpimorphism::new(&p, n, vec![1, 0]).unwrap();
            let prime = smallest_prime_with_nth_roots(n);
            assert_eq!(cover_betti_depth(&p, &lambda, prime).unwrap(), 2, "n={n}");
            let h = cover_h1_snf(&p, &lambda).unwrap();
            assert_eq!(h.rank, 2);
            assert_eq!(h.betti_mod_p(prime), 2);
        }
    }

    #[test]
    fn cover_methods_agree_on_pencil() {
        let p = pencil_group(3);
        let lambda = ModEpimorphism::new(&p, 3, vec![1, 1, 1]).unwrap();
        let prime = smallest_prime_with_nth_roots(3);
        let by_depth = cover_betti_depth(&p, &lambda, prime).unwrap();
        let by_snf = cover_h1_snf(&p, &lambda).unwrap();
        assert_eq!(by_depth, by_snf.betti_mod_p(prime));
    }

    #[test]
    fn congruence_covers_of_free_group() {
        // b1 of the n-congruence cover of F_2: 1 + (n^2 - 1) · 1 + ... via
        // exact-order-n characters each of depth 1; compare small cases to
        // the Reidemeister-Schreier count for the full (Z/n)^2 cover:
        // b1 = 1 + n^2 (covers of a wedge: Euler characteristic).
        // Here we only sum exact-order-n characters per the congruence
        // formula; check n = 2, p = 5: H1(X) = 2 plus 3 order-2 characters
        // of depth 1 each → 5 = b1 of the (Z/2)^2-cover surface graph.
        let p = free_group(2);
        assert_eq!(congruence_b1(&p, 2, 5, DEFAULT_CHARACTER_CAP).unwrap(), 5);
    }

    #[test]
    fn congruence_z2_stays_two() {
        let p = free_abelian(2);
        for (n, prime) in [(2u64, 5u64), (3, 7), (4, 5)] {
            assert_eq!(
                congruence_b1(&p, n, prime, DEFAULT_CHARACTER_CAP).unwrap(),
                2
            );
        }
    }

    #[test]
    fn h1_mod_p_sees_torsion() {
        let p = parse_presentation("<x | x^3>").unwrap();
        assert_eq!(h1_dim_mod_p(&p, 3).unwrap(), 1);
        assert_eq!(h1_dim_mod_p(&p, 5).unwrap(), 0);
    }
}
