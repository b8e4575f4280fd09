//! Exponential tangent cones of algebraic subsets of a torus, the induced
//! upper bound on the BNS invariant, the rank-one Dwyer–Fried test, and the
//! product formula for jump loci of direct products.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::alexinv;
use crate::error::{Error, Result};
use crate::exactla::{RationalSubspace, SubspaceArrangement};
use crate::laurent::LaurentPoly;
use crate::presentations::{alexander_matrix, GroupPresentation};
use crate::toric::CoordinateLocusSet;

/// Bell(10) = 115975 partitions; supports beyond this are rejected.
pub const DEFAULT_SUPPORT_CAP: usize = 10;

/// Iterate over all set partitions of {0,..,n-1} as restricted growth
/// strings: rgs[i] = block index of element i, with rgs[0] = 0 and
/// rgs[i] ≤ max(rgs[0..i]) + 1.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        out.push(rgs.clone());
        // Advance to the next restricted growth string.
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// Exponential tangent cone τ₁ of the zero set of a Laurent polynomial:
/// the rational directions a with f(exp(ta)) ≡ 0, as a finite union of
/// rational linear subspaces.
///
/// A direction lies in τ₁ exactly when the partition of the support it
/// induces (by the value of ⟨a, u⟩) has every block's coefficients summing
/// to zero. The cone is therefore the union, over partitions of the support
/// with zero-sum blocks, of the subspaces orthogonal to all within-block
/// exponent differences.
pub fn tau1_of_polynomial(f: &LaurentPoly, support_cap: usize) -> Result<SubspaceArrangement> {
    let n = f.nvars();
    if f.is_zero() {
        return Ok(SubspaceArrangement::full(n));
    }
    if !f.eval_at_one().is_zero() {
        // The one-block partition fails, so every coarsening does too.
        return Ok(SubspaceArrangement::empty(n));
    }
    let terms: Vec<(Vec<i64>, BigInt)> = f
        .terms()
        .map(|(u, c)| (u.clone(), c.clone()))
        .collect();
    let s = terms.len();
    if s > support_cap {
        return Err(Error::CapExceeded {
            what: "polynomial support size",
            value: s as u128,
            limit: support_cap as u128,
        });
    }
    let mut members = Vec::new();
    'part: for rgs in set_partitions(s) {
        let nblocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut sums = vec![BigInt::zero(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            sums[b] += &terms[i].1;
        }
        if sums.iter().any(|x| !x.is_zero()) {
            continue 'part;
        }
        // Normals: differences of exponent vectors within each block.
        let mut normals: Vec<Vec<BigInt>> = Vec::new();
        for b in 0..nblocks {
            let block: Vec<usize> = (0..s).filter(|&i| rgs[i] == b).collect();
            for w in block.windows(2) {
                let diff: Vec<BigInt> = (0..n)
                    .map(|j| BigInt::from(terms[w[1]].0[j] - terms[w[0]].0[j]))
                    .collect();
                normals.push(diff);
            }
        }
        members.push(RationalSubspace::from_normals(n, &normals)?);
    }
    Ok(SubspaceArrangement::from_members(n, members))
}

/// τ₁ of the common zero set of a system: the tangent cone commutes with
/// intersections, so fold pairwise arrangement intersections.
pub fn tau1_of_system(fs: &[LaurentPoly], support_cap: usize) -> Result<SubspaceArrangement> {
    let n = fs.first().map_or(0, |f| f.nvars());
    let mut acc = SubspaceArrangement::full(n);
    for f in fs {
        acc = acc.intersect(&tau1_of_polynomial(f, support_cap)?);
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// Upper bound on the complement of the BNS invariant Σ¹(G): the tangent
/// cone of the first characteristic variety, computed from the (q−1)-minors
/// of the Alexander matrix, plus the origin (the trivial character is always
/// in V₁ when b₁ > 0). Lives in H₁(G, R) = R^{b₁}.
pub fn bns_upper_bound(
    p: &GroupPresentation,
    minor_cap: u128,
    support_cap: usize,
) -> Result<SubspaceArrangement> {
    let (phi, ab) = alexander_matrix(p);
    let n = ab.rank;
    let q = phi.cols;
    let cone = if q <= 1 {
        // The first elementary ideal is the whole ring: empty variety.
        SubspaceArrangement::empty(n)
    } else if q - 1 > phi.rows {
        // No minors of the required size: the variety is the full torus.
        SubspaceArrangement::full(n)
    } else {
        let ms = alexinv::minors(&phi, q - 1, minor_cap)?;
        tau1_of_system(&ms, support_cap)?
    };
    if n > 0 && !cone.is_empty() && cone.members().iter().any(|m| m.is_full()) {
        return Ok(cone);
    }
    if n > 0 {
        Ok(cone.union(&SubspaceArrangement::origin_only(n)))
    } else {
        Ok(cone)
    }
}

/// Rank-one Dwyer–Fried test: the free abelian cover determined by a
/// nonzero class ν ∈ H₁(G, Z) has finite-dimensional rational H₁ exactly
/// when the line spanned by ν misses the tangent-cone bound away from 0.
pub fn dwyer_fried_rank1(cone: &SubspaceArrangement, nu: &[BigInt]) -> Result<bool> {
    let n = cone.ambient();
    if nu.len() != n {
        return Err(Error::Invalid(format!(
            "class has {} coordinates, ambient is {n}",
            nu.len()
        )));
    }
    if nu.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("class must be nonzero".into()));
    }
    // The line through ν is cut out by a basis of ν-perp, i.e. the integer
    // kernel of the 1×n matrix [ν].
    let k = crate::intmat::kernel_basis(&vec![nu.to_vec()]);
    let line = RationalSubspace::from_normals(n, &k)?;
    debug_assert_eq!(line.dim(), 1);
    for m in cone.members() {
        if line.is_contained_in(m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth-one jump loci of a direct product from those of the factors:
/// V^i(X₁ × X₂) = ∪_{p+q=i} V^p(X₁) × V^q(X₂). Both inputs list the loci
/// in degrees 0..=i; the factors' label sets are concatenated.
pub fn loci_product(
    a: &[CoordinateLocusSet],
    b: &[CoordinateLocusSet],
    i: usize,
) -> Result<CoordinateLocusSet> {
    if a.len() <= i || b.len() <= i {
        return Err(Error::Precondition(format!(
            "need loci in degrees 0..={i} for both factors"
        )));
    }
    let kind = a[0].kind;
    let offset = a[0].labels.len();
    let mut labels = a[0].labels.clone();
    labels.extend(b[0].labels.iter().cloned());
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    for p in 0..=i {
        let q = i - p;
        for w1 in &a[p].subsets {
            for w2 in &b[q].subsets {
                let mut w = w1.clone();
                w.extend(w2.iter().map(|&v| v + offset));
                subsets.push(w);
            }
        }
    }
    Ok(CoordinateLocusSet::new(labels, subsets, kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use crate::presentations::{free_abelian, free_group, parse_presentation};
    use crate::toric::{
        toric_jump_loci, Coefficients, LocusKind, SimplicialComplex, DEFAULT_VERTEX_CAP,
    };

    #[test]
    fn partition_counts_are_bell_numbers() {
        for (n, bell) in [(0usize, 1usize), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            assert_eq!(set_partitions(n).len(), bell);
        }
    }

    #[test]
    fn tau1_of_binomial_is_hyperplane() {
        // t1*t2*t3 - 1 vanishes on exp(ta) iff a1+a2+a3 = 0.
        let f = parse_poly("t1*t2*t3 - 1", Some(3)).unwrap();
        let cone = tau1_of_polynomial(&f, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(cone.members().len(), 1);
        assert_eq!(cone.members()[0].dim(), 2);
        assert!(cone.contains_point_i64(&[1, 1, -2]));
        assert!(!cone.contains_point_i64(&[1, 0, 0]));
    }

    #[test]
    fn tau1_detects_translated_components() {
        // (t1 - 2)(t2 - 1): the t1 = 2 component is invisible to the cone.
        let f = parse_poly("t1*t2 - t1 - 2*t2 + 2", Some(2)).unwrap();
        let cone = tau1_of_polynomial(&f, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(cone.members().len(), 1);
        assert!(cone.contains_point_i64(&[1, 0]));
        assert!(!cone.contains_point_i64(&[0, 1]));
    }

    #[test]
    fn tau1_nonvanishing_at_one_is_empty() {
        let f = parse_poly("t1 - 2", Some(1)).unwrap();
        assert!(tau1_of_polynomial(&f, DEFAULT_SUPPORT_CAP)
            .unwrap()
            .is_empty());
        let zero = LaurentPoly::zero(2);
        let cone = tau1_of_polynomial(&zero, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(cone.members().len(), 1);
        assert!(cone.members()[0].is_full());
    }

    #[test]
    fn tau1_union_of_coordinate_hyperplanes() {
        // (t1-1)(t2-1) vanishes near 1 along both coordinate axes' duals.
        let f = parse_poly("t1*t2 - t1 - t2 + 1", Some(2)).unwrap();
        let cone = tau1_of_polynomial(&f, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(cone.members().len(), 2);
        assert!(cone.contains_point_i64(&[5, 0]));
        assert!(cone.contains_point_i64(&[0, 5]));
        assert!(!cone.contains_point_i64(&[1, 1]));
    }

    #[test]
    fn tau1_system_intersects() {
        let f = parse_poly("t2 - 1", Some(2)).unwrap();
        let g = parse_poly("t1 - 1", Some(2)).unwrap();
        let cone = tau1_of_system(&[f, g], DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(cone.members().len(), 1);
        assert!(cone.members()[0].is_origin());
    }

    #[test]
    fn bns_bound_free_group() {
        let cone = bns_upper_bound(
            &free_group(2),
            alexinv::DEFAULT_MINOR_CAP,
            DEFAULT_SUPPORT_CAP,
        )
        .unwrap();
        assert_eq!(cone.members().len(), 1);
        assert!(cone.members()[0].is_full());
    }

    #[test]
    fn bns_bound_free_abelian() {
        let cone = bns_upper_bound(
            &free_abelian(2),
            alexinv::DEFAULT_MINOR_CAP,
            DEFAULT_SUPPORT_CAP,
        )
        .unwrap();
        assert_eq!(cone.members().len(), 1);
        assert!(cone.members()[0].is_origin());
    }

    #[test]
    fn bns_bound_baumslag_solitar() {
        // <x1,x2 | x1 x2 x1^-1 x2^-2>: b1 = 1, Alexander matrix (0, t-2),
        // so the cone is just the origin.
        let p = parse_presentation("<x1,x2|x1 x2 x1^-1 x2^-2>").unwrap();
        let cone =
            bns_upper_bound(&p, alexinv::DEFAULT_MINOR_CAP, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(cone.members().len(), 1);
        assert!(cone.members()[0].is_origin());
    }

    #[test]
    fn dwyer_fried_rank_one() {
        // Z^2: every primitive class gives a finitely generated cover.
        let zz = bns_upper_bound(
            &free_abelian(2),
            alexinv::DEFAULT_MINOR_CAP,
            DEFAULT_SUPPORT_CAP,
        )
        .unwrap();
        assert!(dwyer_fried_rank1(&zz, &[BigInt::from(1), BigInt::from(0)]).unwrap());
        assert!(dwyer_fried_rank1(&zz, &[BigInt::from(2), BigInt::from(3)]).unwrap());
        // F_2: no rank-one cover has finite Betti number.
        let f2 = bns_upper_bound(
            &free_group(2),
            alexinv::DEFAULT_MINOR_CAP,
            DEFAULT_SUPPORT_CAP,
        )
        .unwrap();
        assert!(!dwyer_fried_rank1(&f2, &[BigInt::from(1), BigInt::from(0)]).unwrap());
        assert!(dwyer_fried_rank1(&zz, &[BigInt::from(0), BigInt::from(1)]).unwrap());
        assert!(dwyer_fried_rank1(&f2, &[BigInt::zero(), BigInt::zero()]).is_err());
    }

    #[test]
    fn product_formula_matches_join() {
        // The toric complex of a join is the product, so the product
        // formula must reproduce the join's loci degree by degree.
        let a = SimplicialComplex::discrete_points(2);
        let b = SimplicialComplex::discrete_points(2);
        let j = a.join(&b);
        let loci = |l: &SimplicialComplex, i: i64| {
            toric_jump_loci(
                l,
                i,
                1,
                LocusKind::Characteristic,
                Coefficients::Fp(3),
                DEFAULT_VERTEX_CAP,
            )
            .unwrap()
        };
        let la: Vec<_> = (0..=2).map(|i| loci(&a, i)).collect();
        let lb: Vec<_> = (0..=2).map(|i| loci(&b, i)).collect();
        for i in 0..=2usize {
            let prod = loci_product(&la, &lb, i).unwrap();
            let direct = loci(&j, i as i64);
            assert_eq!(prod.subsets, direct.subsets, "degree {i}");
        }
    }

    #[test]
    fn product_of_free_groups_degree_one() {
        // V^1(F_n × F_m) = ({1} × torus) ∪ (torus × {1}).
        let n = 2;
        let m = 3;
        let fa = SimplicialComplex::discrete_points(n);
        let fb = SimplicialComplex::discrete_points(m);
        let loci = |l: &SimplicialComplex, i: i64| {
            toric_jump_loci(
                l,
                i,
                1,
                LocusKind::Characteristic,
                Coefficients::Fp(3),
                DEFAULT_VERTEX_CAP,
            )
            .unwrap()
        };
        let la: Vec<_> = (0..=1).map(|i| loci(&fa, i)).collect();
        let lb: Vec<_> = (0..=1).map(|i| loci(&fb, i)).collect();
        let v1 = loci_product(&la, &lb, 1).unwrap();
        let side_a: BTreeSet<usize> = (0..n).collect();
        let side_b: BTreeSet<usize> = (n..n + m).collect();
        assert_eq!(v1.subsets, vec![side_a, side_b]);
    }
}
