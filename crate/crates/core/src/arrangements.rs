//! Line arrangements in C² and CP²: intersection lattices, the degree-2
//! Orlik–Solomon cup structure, resonance components, Zariski-type
//! classifiers, arrangement Alexander polynomials, Milnor-fiber Betti
//! numbers, and boundary-manifold invariants.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::RationalSubspace;
use crate::fp::{euler_phi, divisors, PrimeField};
use crate::jumploci::{depth, Character};
use crate::laurent::LaurentPoly;
use crate::presentations::GroupPresentation;
use crate::resonance::{resonance_membership, CupStructure, LinearFormMatrix};
use crate::word::Word;

// ---------------------------------------------------------------------------
// Arrangements and lattices
// ---------------------------------------------------------------------------

/// Affine line arrangement: line i is a·z₁ + b·z₂ + c = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineArrangement {
    pub lines: Vec<[BigRational; 3]>,
}

impl LineArrangement {
    pub fn new(lines: Vec<[BigRational; 3]>) -> Result<Self> {
        for (i, l) in lines.iter().enumerate() {
            if l[0].is_zero() && l[1].is_zero() {
                return Err(Error::Invalid(format!("line {} is degenerate", i + 1)));
            }
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if proportional3(&lines[i], &lines[j]) {
                    return Err(Error::Invalid(format!(
                        "lines {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(LineArrangement { lines })
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }
}

fn proportional3(u: &[BigRational; 3], v: &[BigRational; 3]) -> bool {
    for a in 0..3 {
        for b in a + 1..3 {
            if &u[a] * &v[b] != &u[b] * &v[a] {
                return false;
            }
        }
    }
    true
}

/// Rank-≤2 intersection data of a line arrangement: all pairwise
/// intersection points (multiplicity ≥ 2) and the partition of lines into
/// parallel classes (singletons included). `coordinates`, when present,
/// carries the geometric point locations in the same order as `points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    pub n: usize,
    pub points: Vec<BTreeSet<usize>>,
    pub parallel_classes: Vec<Vec<usize>>,
    pub coordinates: Option<Vec<(BigRational, BigRational)>>,
}

impl IntersectionLattice {
    /// Build from combinatorial data: the points of multiplicity ≥ 3 plus
    /// parallel classes of size ≥ 2; the remaining double points are filled
    /// in automatically.
    pub fn from_combinatorics(
        n: usize,
        multiple_points: &[BTreeSet<usize>],
        parallel_classes: &[Vec<usize>],
    ) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for c in parallel_classes {
            let id = classes.len();
            let mut sorted = c.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != c.len() {
                return Err(Error::Invalid("repeated line in parallel class".into()));
            }
            for &l in &sorted {
                if l >= n {
                    return Err(Error::Invalid(format!("line index {l} out of range")));
                }
                if class_of[l] != usize::MAX {
                    return Err(Error::Invalid(format!(
                        "line {l} appears in two parallel classes"
                    )));
                }
                class_of[l] = id;
            }
            classes.push(sorted);
        }
        for l in 0..n {
            if class_of[l] == usize::MAX {
                class_of[l] = classes.len();
                classes.push(vec![l]);
            }
        }
        let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut points: Vec<BTreeSet<usize>> = Vec::new();
        for p in multiple_points {
            if p.len() < 2 {
                return Err(Error::Invalid("intersection point needs ≥ 2 lines".into()));
            }
            let ls: Vec<usize> = p.iter().copied().collect();
            for a in 0..ls.len() {
                if ls[a] >= n {
                    return Err(Error::Invalid(format!("line index {} out of range", ls[a])));
                }
                for b in a + 1..ls.len() {
                    if class_of[ls[a]] == class_of[ls[b]] && classes[class_of[ls[a]]].len() > 1 {
                        return Err(Error::Invalid(format!(
                            "parallel lines {} and {} cannot meet",
                            ls[a], ls[b]
                        )));
                    }
                    if !covered.insert((ls[a], ls[b])) {
                        return Err(Error::Invalid(format!(
                            "lines {} and {} share two points",
                            ls[a], ls[b]
                        )));
                    }
                }
            }
            points.push(p.clone());
        }
        // Remaining non-parallel pairs are double points.
        for a in 0..n {
            for b in a + 1..n {
                if class_of[a] == class_of[b] && classes[class_of[a]].len() > 1 {
                    continue;
                }
                if !covered.contains(&(a, b)) {
                    points.push(BTreeSet::from([a, b]));
                }
            }
        }
        points.sort();
        classes.sort();
        Ok(IntersectionLattice {
            n,
            points,
            parallel_classes: classes,
            coordinates: None,
        })
    }

    pub fn multiple_points(&self) -> impl Iterator<Item = &BTreeSet<usize>> {
        self.points.iter().filter(|p| p.len() >= 3)
    }

    pub fn points_on_line(&self, l: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].contains(&l))
            .collect()
    }
}

/// Exact pairwise intersection of the lines; points grouped by location,
/// parallel classes by direction.
pub fn intersection_lattice(arr: &LineArrangement) -> Result<IntersectionLattice> {
    let n = arr.n();
    let mut by_point: BTreeMap<(BigRational, BigRational), BTreeSet<usize>> = BTreeMap::new();
    let mut by_dir: BTreeMap<(BigRational, BigRational), Vec<usize>> = BTreeMap::new();
    for (i, l) in arr.lines.iter().enumerate() {
        // Direction key: (a : b) normalized with leading coefficient 1.
        let key = if !l[0].is_zero() {
            (BigRational::one(), &l[1] / &l[0])
        } else {
            (BigRational::zero(), BigRational::one())
        };
        by_dir.entry(key).or_default().push(i);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a1, b1, c1) = (&arr.lines[i][0], &arr.lines[i][1], &arr.lines[i][2]);
            let (a2, b2, c2) = (&arr.lines[j][0], &arr.lines[j][1], &arr.lines[j][2]);
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let x = (b1 * c2 - b2 * c1) / &det;
            let y = (a2 * c1 - a1 * c2) / &det;
            let e = by_point.entry((x, y)).or_default();
            e.insert(i);
            e.insert(j);
        }
    }
    let mut pairs: Vec<(BTreeSet<usize>, (BigRational, BigRational))> = by_point
        .into_iter()
        .map(|(coord, ls)| (ls, coord))
        .collect();
    pairs.sort();
    let mut classes: Vec<Vec<usize>> = by_dir.into_values().collect();
    classes.sort();
    Ok(IntersectionLattice {
        n,
        points: pairs.iter().map(|(ls, _)| ls.clone()).collect(),
        coordinates: Some(pairs.into_iter().map(|(_, c)| c).collect()),
        parallel_classes: classes,
    })
}

// ---------------------------------------------------------------------------
// Orlik–Solomon degree 2
// ---------------------------------------------------------------------------

/// Degree-≤2 Orlik–Solomon structure: A¹ = kⁿ on e₁..e_n, A² the quotient of
/// Λ² by parallel pairs e_i∧e_j and concurrency relations
/// (e_i−e_k)∧(e_j−e_k) for triples at a common point. The A² basis is the
/// lexicographically greedy set of surviving pair monomials.
pub fn os2_structure(lat: &IntersectionLattice) -> Result<CupStructure> {
    let n = lat.n;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let pair_index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let np = pairs.len();
    // Relation rows in the pair basis.
    let mut rels: Vec<Vec<BigRational>> = Vec::new();
    for c in &lat.parallel_classes {
        for a in 0..c.len() {
            for b in a + 1..c.len() {
                let mut row = vec![BigRational::zero(); np];
                row[pair_index[&(c[a], c[b])]] = BigRational::one();
                rels.push(row);
            }
        }
    }
    for p in lat.multiple_points() {
        let ls: Vec<usize> = p.iter().copied().collect();
        for x in 0..ls.len() {
            for y in x + 1..ls.len() {
                for z in y + 1..ls.len() {
                    // (e_i - e_k)(e_j - e_k) with i<j<k: e_ij - e_ik + e_jk.
                    let (i, j, k) = (ls[x], ls[y], ls[z]);
                    let mut row = vec![BigRational::zero(); np];
                    row[pair_index[&(i, j)]] = BigRational::one();
                    row[pair_index[&(i, k)]] = -BigRational::one();
                    row[pair_index[&(j, k)]] = BigRational::one();
                    rels.push(row);
                }
            }
        }
    }
    // Row reduce; pivot columns are eliminated, the rest form the A² basis.
    let mut pivots: Vec<usize> = Vec::new();
    let mut reduced: Vec<Vec<BigRational>> = Vec::new();
    for mut row in rels {
        for (r, &pc) in reduced.iter().zip(&pivots) {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for c in 0..np {
                    let v = &row[c] - &f * &r[c];
                    row[c] = v;
                }
            }
        }
        if let Some(pc) = (0..np).find(|&c| !row[c].is_zero()) {
            let lead = row[pc].clone();
            for c in 0..np {
                let v = &row[c] / &lead;
                row[c] = v;
            }
            reduced.push(row);
            pivots.push(pc);
        }
    }
    // Back-substitute so pivot rows are expressed over basis columns only.
    for i in (0..reduced.len()).rev() {
        for j in 0..i {
            let (head, tail) = reduced.split_at_mut(i);
            if !head[j][pivots[i]].is_zero() {
                let f = head[j][pivots[i]].clone();
                for c in 0..np {
                    let v = &head[j][c] - &f * &tail[0][c];
                    head[j][c] = v;
                }
            }
        }
    }
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let basis: Vec<usize> = (0..np).filter(|c| !pivot_set.contains(c)).collect();
    let b2 = basis.len();
    let basis_pos: BTreeMap<usize, usize> =
        basis.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    // Image of each pair monomial in the quotient basis.
    let mut image = vec![vec![BigRational::zero(); b2]; np];
    for (c, img) in image.iter_mut().enumerate() {
        if let Some(&r) = basis_pos.get(&c) {
            img[r] = BigRational::one();
        } else {
            let ri = pivots.iter().position(|&p| p == c).unwrap();
            for (bc, &col) in basis.iter().enumerate() {
                img[bc] = -&reduced[ri][col];
            }
        }
    }
    let mut mu = vec![vec![vec![BigInt::zero(); n]; n]; b2];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for r in 0..b2 {
            let v = &image[k][r];
            if !v.denom().is_one() {
                return Err(Error::Invalid(
                    "Orlik-Solomon structure constants are not integral".into(),
                ));
            }
            mu[r][i][j] = v.numer().clone();
            mu[r][j][i] = -v.numer();
        }
    }
    CupStructure::new(n, b2, mu)
}

// ---------------------------------------------------------------------------
// Resonance components
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    /// Intersection point of multiplicity ≥ 3.
    Local(BTreeSet<usize>),
    /// Parallel class of ≥ 2 lines (a pencil at infinity).
    Parallel(Vec<usize>),
    /// User-supplied candidate (e.g. a neighborly-partition component).
    Supplied,
}

#[derive(Debug, Clone)]
pub struct ResonanceComponent {
    pub kind: ComponentKind,
    pub subspace: RationalSubspace,
    pub dim: usize,
    pub verified: bool,
}

#[derive(Debug, Clone)]
pub struct ResonanceReport {
    pub components: Vec<ResonanceComponent>,
    pub all_verified: bool,
}

/// Local component of a point with incident lines J:
/// {Σ_{j∈J} x_j = 0, x_i = 0 for i ∉ J}.
pub fn local_component(n: usize, j: &BTreeSet<usize>) -> RationalSubspace {
    let mut normals: Vec<Vec<i64>> = Vec::new();
    let sum: Vec<i64> = (0..n).map(|i| i64::from(j.contains(&i))).collect();
    normals.push(sum);
    for i in 0..n {
        if !j.contains(&i) {
            let mut row = vec![0i64; n];
            row[i] = 1;
            normals.push(row);
        }
    }
    RationalSubspace::from_normals_i64(n, &normals).unwrap()
}

/// Known components of R₁ from the lattice (local points of multiplicity
/// ≥ 3 and parallel classes of ≥ 2 lines) plus any user-supplied extras,
/// each verified by a resonance-membership test at a random rational point.
pub fn resonance_components(
    lat: &IntersectionLattice,
    extras: &[RationalSubspace],
    seed: u64,
) -> Result<ResonanceReport> {
    let n = lat.n;
    let cup = os2_structure(lat)?;
    let theta = cup.theta();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut components = Vec::new();
    for p in lat.multiple_points() {
        let sub = local_component(n, p);
        debug_assert_eq!(sub.dim(), p.len() - 1);
        debug_assert!(sub.is_contained_in(
            &RationalSubspace::from_normals_i64(n, &[vec![1; n]]).unwrap()
        ));
        let verified = verify_component(&theta, &sub, &mut rng)?;
        components.push(ResonanceComponent {
            kind: ComponentKind::Local(p.clone()),
            dim: sub.dim(),
            subspace: sub,
            verified,
        });
    }
    for c in &lat.parallel_classes {
        if c.len() < 2 {
            continue;
        }
        let sub = RationalSubspace::coordinate(n, c);
        let verified = verify_component(&theta, &sub, &mut rng)?;
        components.push(ResonanceComponent {
            kind: ComponentKind::Parallel(c.clone()),
            dim: sub.dim(),
            subspace: sub,
            verified,
        });
    }
    for sub in extras {
        if sub.ambient() != n {
            return Err(Error::Invalid("extra component has wrong ambient".into()));
        }
        let verified = verify_component(&theta, sub, &mut rng)?;
        components.push(ResonanceComponent {
            kind: ComponentKind::Supplied,
            dim: sub.dim(),
            subspace: sub.clone(),
            verified,
        });
    }
    let all_verified = components.iter().all(|c| c.verified);
    Ok(ResonanceReport {
        components,
        all_verified,
    })
}

fn verify_component(
    theta: &LinearFormMatrix,
    sub: &RationalSubspace,
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    let basis = sub.basis();
    if basis.is_empty() {
        return Ok(false);
    }
    let n = sub.ambient();
    for _ in 0..16 {
        let coeffs: Vec<BigInt> = (0..basis.len())
            .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
            .collect();
        let mut a = vec![BigInt::zero(); n];
        for (c, row) in coeffs.iter().zip(&basis) {
            for i in 0..n {
                a[i] += c * &row[i];
            }
        }
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        let a_rat: Vec<BigRational> = a.into_iter().map(BigRational::from).collect();
        return resonance_membership(theta, &a_rat, 1);
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Classifiers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementClass {
    /// Sizes of the parallel directions when the arrangement is nodal
    /// (only double points), largest first.
    pub type_am: Option<Vec<usize>>,
    /// All lines parallel: the group is free.
    pub free_group: bool,
    /// General position with an even number of lines.
    pub kahler_group: bool,
    /// Multiplicity graph is a forest: the group is a RAAG (a product of
    /// free groups).
    pub raag: bool,
}

pub fn arr_classify(lat: &IntersectionLattice) -> ArrangementClass {
    let nodal = lat.multiple_points().next().is_none();
    let type_am = if nodal {
        let mut sizes: Vec<usize> = lat.parallel_classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Some(sizes)
    } else {
        None
    };
    let free_group = lat.parallel_classes.len() == 1 && lat.n >= 1;
    let general_position = nodal && lat.parallel_classes.iter().all(|c| c.len() == 1);
    ArrangementClass {
        kahler_group: general_position && lat.n % 2 == 0 && lat.n > 0,
        raag: multiplicity_graph_is_forest(lat),
        type_am,
        free_group,
    }
}

/// Fan's multiplicity graph: vertices are the points of multiplicity ≥ 3;
/// each line passing through k ≥ 2 of them contributes the k−1 segments
/// between consecutive points (geometric order along the line when
/// coordinates are available, index order otherwise).
pub fn multiplicity_graph_is_forest(lat: &IntersectionLattice) -> bool {
    let verts: Vec<usize> = (0..lat.points.len())
        .filter(|&i| lat.points[i].len() >= 3)
        .collect();
    let vpos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for l in 0..lat.n {
        let mut on_line: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&i| lat.points[i].contains(&l))
            .collect();
        if let Some(coords) = &lat.coordinates {
            on_line.sort_by(|&a, &b| coords[a].cmp(&coords[b]));
        }
        for w in on_line.windows(2) {
            let (a, b) = (vpos[&w[0]], vpos[&w[1]]);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Arrangement Alexander polynomials
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlexClass {
    Pencil,
    NearPencil { transverse: usize },
    Other,
}

#[derive(Debug, Clone)]
pub struct ArrAlexReport {
    pub class: AlexClass,
    /// Δ in n variables for pencils and near-pencils; None for the
    /// constant case (Δ ≐ const up to units).
    pub delta: Option<LaurentPoly>,
}

/// Alexander-polynomial trichotomy: pencils give (t₁⋯t_n − 1)^{n−2}, type A(n−1,1)
/// gives (t_n − 1)^{n−2}, everything else has constant Δ.
pub fn arr_alex_poly(lat: &IntersectionLattice) -> ArrAlexReport {
    let n = lat.n;
    let is_pencil = n == 1 || lat.points.iter().any(|p| p.len() == n);
    if is_pencil {
        let delta = if n <= 1 {
            LaurentPoly::zero(n)
        } else if n == 2 {
            LaurentPoly::one(n)
        } else {
            let mut prod = LaurentPoly::monomial(n, vec![1; n], BigInt::one());
            prod = prod.sub(&LaurentPoly::one(n));
            prod.pow((n - 2) as u32)
        };
        return ArrAlexReport {
            class: AlexClass::Pencil,
            delta: Some(delta),
        };
    }
    let nodal = lat.multiple_points().next().is_none();
    let mut sizes: Vec<&Vec<usize>> = lat.parallel_classes.iter().collect();
    sizes.sort_by_key(|c| std::cmp::Reverse(c.len()));
    if nodal
        && n >= 3
        && lat.parallel_classes.len() == 2
        && sizes[0].len() == n - 1
        && sizes[1].len() == 1
    {
        let transverse = sizes[1][0];
        let base = LaurentPoly::var(n, transverse).sub(&LaurentPoly::one(n));
        return ArrAlexReport {
            class: AlexClass::NearPencil { transverse },
            delta: Some(base.pow((n - 2) as u32)),
        };
    }
    ArrAlexReport {
        class: AlexClass::Other,
        delta: None,
    }
}

// ---------------------------------------------------------------------------
// Milnor fiber
// ---------------------------------------------------------------------------

/// Quotient presentation of the projectivized complement: append the single
/// relator γ₁^{n₁}⋯γ_s^{n_s} in the given meridian order.
pub fn projective_quotient(
    p: &GroupPresentation,
    meridians: &[usize],
    degrees: &[u64],
) -> Result<GroupPresentation> {
    if meridians.len() != degrees.len() {
        return Err(Error::Invalid("meridian/degree length mismatch".into()));
    }
    let mut w = Word::identity();
    for (&m, &d) in meridians.iter().zip(degrees) {
        if m >= p.ngens() {
            return Err(Error::Invalid(format!("meridian index {m} out of range")));
        }
        w = w.mul(&Word::generator(m).pow(d as i64));
    }
    let mut rels = p.relators.clone();
    rels.push(w);
    GroupPresentation::new(p.generators.clone(), rels)
}

/// dim H₁(F, F_p) of the Milnor fiber of f = f₁^{a₁}⋯f_s^{a_s} via depth:
/// (s − 1) + Σ_{1≠e|n} φ(e)·depth(ρ^{n/e}), where ρ(γ_i) = ζ^{a_i} for a
/// primitive n-th root ζ ∈ F_p and n = Σ a_i·deg f_i. `pu` must present the
/// projectivized complement with every generator a marked meridian.
pub fn milnor_b1(
    pu: &GroupPresentation,
    meridians: &[usize],
    exponents: &[u64],
    degrees: &[u64],
    prime: u64,
) -> Result<usize> {
    let s = meridians.len();
    if exponents.len() != s || degrees.len() != s {
        return Err(Error::Invalid("exponent/degree length mismatch".into()));
    }
    if s == 0 {
        return Err(Error::Precondition("need at least one factor".into()));
    }
    let g = exponents.iter().fold(0u64, |acc, &a| num_integer::gcd(acc, a));
    if g != 1 {
        return Err(Error::Precondition("gcd of exponents must be 1".into()));
    }
    let n: u64 = exponents.iter().zip(degrees).map(|(&a, &d)| a * d).sum();
    if n == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    if n % prime == 0 {
        return Err(Error::Precondition("prime must not divide the degree".into()));
    }
    if (prime - 1) % n != 0 {
        return Err(Error::Precondition(
            "need n-th roots of unity: n must divide prime − 1".into(),
        ));
    }
    let mut marked = vec![false; pu.ngens()];
    for &m in meridians {
        if m >= pu.ngens() {
            return Err(Error::Invalid(format!("meridian index {m} out of range")));
        }
        marked[m] = true;
    }
    if marked.iter().any(|&m| !m) {
        return Err(Error::Precondition(
            "every generator must be a marked meridian".into(),
        ));
    }
    let field = PrimeField::new(prime)?;
    let zeta = field.primitive_nth_root(n)?;
    let mut values = vec![0u64; pu.ngens()];
    for (&m, &a) in meridians.iter().zip(exponents) {
        values[m] = field.pow(zeta, a % n);
    }
    let rho = Character::new(pu, prime, values)?;
    let mut b1 = s - 1;
    for e in divisors(n) {
        if e == 1 {
            continue;
        }
        let d = depth(pu, &rho.pow(n / e))?;
        b1 += (euler_phi(e) as usize) * d.depth;
    }
    Ok(b1)
}

/// The standard presentation of the pure braid group P_m on generators
/// A_{rs}, 1 ≤ r < s ≤ m, listed in lexicographic order.
pub fn pure_braid_group(m: usize) -> GroupPresentation {
    let pairs: Vec<(usize, usize)> = (1..=m)
        .flat_map(|r| (r + 1..=m).map(move |s| (r, s)))
        .collect();
    let idx: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let gen = |r: usize, s: usize| Word::generator(idx[&(r, s)]);
    let mut rels = Vec::new();
    for &(r, s) in &pairs {
        for &(i, j) in &pairs {
            if (r, s) == (i, j) {
                continue;
            }
            // A_{rs}^{-1} A_{ij} A_{rs} = rhs, by the relative position of
            // the index pairs (Birman's presentation).
            let rhs = if s < i || (i < r && s < j) {
                // Disjoint (s < i) or nested (i < r < s < j): commute.
                gen(i, j)
            } else if s == i {
                let c = gen(r, j);
                c.mul(&gen(i, j)).mul(&c.inverse())
            } else if r == i && i < s && s < j {
                let c = gen(r, j).mul(&gen(s, j));
                c.mul(&gen(i, j)).mul(&c.inverse())
            } else if r < i && i < s && s < j {
                let c = Word::commutator(&gen(r, j), &gen(s, j));
                c.mul(&gen(i, j)).mul(&c.inverse())
            } else {
                continue;
            };
            let lhs = gen(r, s).inverse().mul(&gen(i, j)).mul(&gen(r, s));
            rels.push(lhs.mul(&rhs.inverse()));
        }
    }
    rels.retain(|w| !w.is_identity());
    let names = pairs.iter().map(|&(r, s)| format!("a{r}{s}")).collect();
    GroupPresentation::new(names, rels).unwrap()
}

/// Full-twist ordering of the pure braid generators: Δ² = Π_j (A_{1j}⋯A_{j−1,j}).
pub fn full_twist_order(m: usize) -> Vec<usize> {
    let pairs: Vec<(usize, usize)> = (1..=m)
        .flat_map(|r| (r + 1..=m).map(move |s| (r, s)))
        .collect();
    let idx: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut order = Vec::new();
    for j in 2..=m {
        for r in 1..j {
            order.push(idx[&(r, j)]);
        }
    }
    order
}

// ---------------------------------------------------------------------------
// Boundary manifolds
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryVertex {
    pub label: String,
    /// Line indices whose meridian variables multiply to t_v.
    pub lines: Vec<usize>,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryGraph {
    pub vertices: Vec<BoundaryVertex>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryClass {
    Pencil,
    NearPencil,
    Other,
}

#[derive(Debug, Clone)]
pub struct BoundaryInvariants {
    pub graph: BoundaryGraph,
    pub class: BoundaryClass,
    pub essential: bool,
    /// Δ_G = Π_v (t_v − 1)^{m_v − 2}; None when the arrangement is
    /// non-essential (a pencil), where the product formula does not apply.
    pub delta: Option<LaurentPoly>,
    /// V₁ components {t_v = 1} for vertices of degree ≥ 3, as line subsets.
    pub v1: Vec<Vec<usize>>,
    /// R₁ of π₁(M): C^n (pencil), C^{2(n−1)} (near-pencil), or all of H¹.
    pub r1: &'static str,
    /// Closed-form homeomorphism type when one is known.
    pub manifold: Option<String>,
}

/// Graph-manifold invariants of the boundary of a regular neighborhood of
/// a projective line arrangement. The lattice must be projective: no
/// parallel lines (every pair meets).
pub fn boundary_invariants(lat: &IntersectionLattice) -> Result<BoundaryInvariants> {
    let n_total = lat.n;
    if lat.parallel_classes.iter().any(|c| c.len() > 1) {
        return Err(Error::Precondition(
            "projective arrangement required: no parallel lines".into(),
        ));
    }
    if n_total < 2 {
        return Err(Error::Precondition("need at least two lines".into()));
    }
    let mut vertices: Vec<BoundaryVertex> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n_total {
        vertices.push(BoundaryVertex {
            label: format!("v{}", i + 1),
            lines: vec![i],
            degree: lat.points_on_line(i).len(),
        });
    }
    for p in lat.multiple_points() {
        let vi = vertices.len();
        let lines: Vec<usize> = p.iter().copied().collect();
        vertices.push(BoundaryVertex {
            label: format!(
                "v{{{}}}",
                lines.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(",")
            ),
            lines: lines.clone(),
            degree: p.len(),
        });
        for &l in &lines {
            edges.push((l, vi));
        }
    }
    for p in &lat.points {
        if p.len() == 2 {
            let ls: Vec<usize> = p.iter().copied().collect();
            edges.push((ls[0], ls[1]));
        }
    }
    let class = if lat.points.iter().any(|p| p.len() == n_total) {
        BoundaryClass::Pencil
    } else if lat.points.iter().any(|p| p.len() == n_total - 1) {
        BoundaryClass::NearPencil
    } else {
        BoundaryClass::Other
    };
    let essential = class != BoundaryClass::Pencil;
    let delta = if essential {
        let mut d = LaurentPoly::one(n_total);
        for v in &vertices {
            let exp = v.degree as i64 - 2;
            if exp < 0 {
                return Err(Error::Invalid(
                    "vertex of degree < 2 in an essential arrangement".into(),
                ));
            }
            let mut e = vec![0i64; n_total];
            for &l in &v.lines {
                e[l] = 1;
            }
            let f = LaurentPoly::monomial(n_total, e, BigInt::one()).sub(&LaurentPoly::one(n_total));
            d = d.mul(&f.pow(exp as u32));
        }
        Some(d)
    } else {
        None
    };
    let v1 = vertices
        .iter()
        .filter(|v| v.degree >= 3)
        .map(|v| v.lines.clone())
        .collect();
    let n = n_total - 1; // number of affine lines before closing up
    let (r1, manifold) = match class {
        BoundaryClass::Pencil => ("C^n", Some(format!("#^{n} S^1 x S^2"))),
        BoundaryClass::NearPencil => ("C^(2(n-1))", Some(format!("S^1 x Sigma_{}", n - 1))),
        BoundaryClass::Other => ("H^1(G,C)", None),
    };
    Ok(BoundaryInvariants {
        graph: BoundaryGraph { vertices, edges },
        class,
        essential,
        delta,
        v1,
        r1,
        manifold,
    })
}

/// Projective closure of an affine lattice: append the line at infinity
/// (new index n); each direction class becomes a point on it.
pub fn projectivize(lat: &IntersectionLattice) -> IntersectionLattice {
    let n = lat.n;
    let mut points = lat.points.clone();
    for c in &lat.parallel_classes {
        let mut p: BTreeSet<usize> = c.iter().copied().collect();
        p.insert(n);
        points.push(p);
    }
    points.sort();
    IntersectionLattice {
        n: n + 1,
        points,
        parallel_classes: (0..=n).map(|i| vec![i]).collect(),
        coordinates: None,
    }
}
