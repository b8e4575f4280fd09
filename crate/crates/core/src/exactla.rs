//! Rational-subspace calculus on top of the exact integer linear algebra:
//! canonical forms, containment, intersection, and irredundant unions.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, PrimeField};
use crate::intmat::{self, IMat};

pub use crate::intmat::{smith_form, SmithForm};

/// Rank of an integer matrix reduced mod p.
pub fn rank_mod_p(m: &IMat, p: u64) -> Result<usize> {
    let field = PrimeField::new(p)?;
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut fm = FpMatrix::zero(field, rows, cols);
    let big_p = BigInt::from(p);
    for i in 0..rows {
        for j in 0..cols {
            let r = num_integer::Integer::mod_floor(&m[i][j], &big_p);
            fm.set(i, j, u64::try_from(&r).unwrap());
        }
    }
    Ok(fm.rank())
}

/// A rationally defined linear subspace of Q^n, stored as the kernel of a
/// canonical (Hermite-reduced, saturated) integer normal matrix. Equal
/// subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalSubspace {
    ambient: usize,
    normals: IMat,
}

impl RationalSubspace {
    /// Subspace {x : row · x = 0 for every row}.
    pub fn from_normals(ambient: usize, rows: &IMat) -> Result<Self> {
        for r in rows {
            if r.len() != ambient {
                return Err(Error::Invalid(format!(
                    "normal vector length {} != ambient {}",
                    r.len(),
                    ambient
                )));
            }
        }
        // Saturate: the canonical normal lattice is the annihilator of the
        // subspace's integer points (kernel of the kernel). Empty matrices
        // carry no column count, so handle those cases explicitly.
        let span = if rows.is_empty() {
            intmat::identity(ambient)
        } else {
            intmat::kernel_basis(rows)
        };
        let saturated = if span.is_empty() {
            intmat::identity(ambient)
        } else {
            intmat::kernel_basis(&span)
        };
        Ok(RationalSubspace {
            ambient,
            normals: intmat::hnf(&saturated),
        })
    }

    pub fn from_normals_i64(ambient: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_normals(ambient, &intmat::from_i64(rows))
    }

    pub fn full(ambient: usize) -> Self {
        RationalSubspace {
            ambient,
            normals: Vec::new(),
        }
    }

    pub fn origin(ambient: usize) -> Self {
        Self::from_normals(
            ambient,
            &(0..ambient)
                .map(|i| {
                    (0..ambient)
                        .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    /// Coordinate subspace {x : x_i = 0 for i outside the given set}.
    pub fn coordinate(ambient: usize, support: &[usize]) -> Self {
        let rows: Vec<Vec<i64>> = (0..ambient)
            .filter(|i| !support.contains(i))
            .map(|i| {
                (0..ambient)
                    .map(|j| i64::from(i == j))
                    .collect()
            })
            .collect();
        Self::from_normals_i64(ambient, &rows).unwrap()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn normal_matrix(&self) -> &IMat {
        &self.normals
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.normals.len()
    }

    pub fn is_origin(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.normals.is_empty()
    }

    /// Saturated integer basis of the subspace (rows).
    pub fn basis(&self) -> IMat {
        if self.normals.is_empty() {
            return (0..self.ambient)
                .map(|i| {
                    (0..self.ambient)
                        .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                        .collect()
                })
                .collect();
        }
        intmat::kernel_basis(&self.normals)
    }

    /// self ⊆ other: every normal of `other` lies in the row space of
    /// self's normals.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        assert_eq!(self.ambient, other.ambient);
        if other.normals.is_empty() {
            return true;
        }
        let mut stacked = self.normals.clone();
        stacked.extend(other.normals.iter().cloned());
        intmat::rank(&stacked) == self.normals.len()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut stacked = self.normals.clone();
        stacked.extend(other.normals.iter().cloned());
        Self::from_normals(self.ambient, &stacked).unwrap()
    }

    pub fn contains_point(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.normals.iter().all(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum::<BigInt>()
                .is_zero()
        })
    }

    pub fn contains_point_i64(&self, v: &[i64]) -> bool {
        let bv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains_point(&bv)
    }
}

/// A finite union of rational subspaces, kept irredundant (no member
/// contained in another) and deterministically ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceArrangement {
    ambient: usize,
    members: Vec<RationalSubspace>,
}

impl SubspaceArrangement {
    pub fn empty(ambient: usize) -> Self {
        SubspaceArrangement {
            ambient,
            members: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_members(ambient, vec![RationalSubspace::full(ambient)])
    }

    pub fn origin_only(ambient: usize) -> Self {
        Self::from_members(ambient, vec![RationalSubspace::origin(ambient)])
    }

    pub fn from_members(ambient: usize, members: Vec<RationalSubspace>) -> Self {
        let mut kept: Vec<RationalSubspace> = Vec::new();
        for m in members {
            assert_eq!(m.ambient(), ambient);
            if kept.iter().any(|k| m.is_contained_in(k)) {
                continue;
            }
            kept.retain(|k| !k.is_contained_in(&m));
            kept.push(m);
        }
        kept.sort();
        kept.dedup();
        SubspaceArrangement {
            ambient,
            members: kept,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[RationalSubspace] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.members.clone();
        all.extend(other.members.iter().cloned());
        Self::from_members(self.ambient, all)
    }

    /// Pointwise intersection: union of pairwise intersections.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut out = Vec::new();
        for a in &self.members {
            for b in &other.members {
                out.push(a.intersect(b));
            }
        }
        Self::from_members(self.ambient, out)
    }

    pub fn contains_point(&self, v: &[BigInt]) -> bool {
        self.members.iter().any(|m| m.contains_point(v))
    }

    pub fn contains_point_i64(&self, v: &[i64]) -> bool {
        self.members.iter().any(|m| m.contains_point_i64(v))
    }

    pub fn contains_subspace(&self, s: &RationalSubspace) -> bool {
        self.members.iter().any(|m| s.is_contained_in(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_agree() {
        // Same plane in Q^3 described by different normal sets.
        let a = RationalSubspace::from_normals_i64(3, &[vec![1, 1, 0], vec![2, 2, 0]]).unwrap();
        let b = RationalSubspace::from_normals_i64(3, &[vec![3, 3, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn saturation() {
        // {2x = 0} and {x = 0} are the same subspace.
        let a = RationalSubspace::from_normals_i64(2, &[vec![2, 0]]).unwrap();
        let b = RationalSubspace::from_normals_i64(2, &[vec![1, 0]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn containment_and_intersection() {
        let plane = RationalSubspace::from_normals_i64(3, &[vec![0, 0, 1]]).unwrap();
        let line = RationalSubspace::from_normals_i64(3, &[vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(line.is_contained_in(&plane));
        assert!(!plane.is_contained_in(&line));
        let i = plane.intersect(&line);
        assert_eq!(i, line);
        assert!(RationalSubspace::origin(3).is_contained_in(&line));
    }

    #[test]
    fn arrangement_irredundancy() {
        let plane = RationalSubspace::from_normals_i64(3, &[vec![0, 0, 1]]).unwrap();
        let line = RationalSubspace::from_normals_i64(3, &[vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        let arr = SubspaceArrangement::from_members(3, vec![line, plane.clone()]);
        assert_eq!(arr.members().len(), 1);
        assert_eq!(arr.members()[0], plane);
    }

    #[test]
    fn arrangement_ops() {
        let x_axis = RationalSubspace::coordinate(2, &[0]);
        let y_axis = RationalSubspace::coordinate(2, &[1]);
        let cross = SubspaceArrangement::from_members(2, vec![x_axis.clone(), y_axis.clone()]);
        assert_eq!(cross.members().len(), 2);
        assert!(cross.contains_point_i64(&[3, 0]));
        assert!(!cross.contains_point_i64(&[1, 1]));
        let diag = SubspaceArrangement::from_members(
            2,
            vec![RationalSubspace::from_normals_i64(2, &[vec![1, -1]]).unwrap()],
        );
        let inter = cross.intersect(&diag);
        assert_eq!(inter.members().len(), 1);
        assert!(inter.members()[0].is_origin());
    }

    #[test]
    fn rank_mod_p_drops() {
        let m = intmat::from_i64(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 2);
        // det = -2 ≡ 0 mod 2
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
    }
}
