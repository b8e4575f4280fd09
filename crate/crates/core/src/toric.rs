//! Closed-form jump loci of toric complexes and right-angled Artin groups:
//! reduced simplicial homology, the coordinate-subtorus formula, and the
//! graph-theoretic classifiers.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactla::{RationalSubspace, SubspaceArrangement};
use crate::fp::{FpMatrix, PrimeField};
use crate::intmat::{self, IMat};
use crate::word::Word;

pub const DEFAULT_VERTEX_CAP: usize = 16;

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// Finite simple graph on labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub labels: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>, // stored with a < b
}

impl Graph {
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::Invalid(format!("loop at vertex {a}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { labels, edges: set })
    }

    pub fn with_default_labels(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new((1..=n).map(|i| format!("x{i}")).collect(), edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::with_default_labels(n, &edges).unwrap()
    }

    pub fn discrete(n: usize) -> Self {
        Graph::with_default_labels(n, &[]).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::with_default_labels(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::with_default_labels(n, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Graph::with_default_labels(a + b, &edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Connected components of the induced subgraph on `verts`.
    pub fn components_within(&self, verts: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut remaining: BTreeSet<usize> = verts.clone();
        let mut comps = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            remaining.remove(&start);
            comp.insert(start);
            while let Some(v) = stack.pop() {
                let adjacent: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&u| self.has_edge(u, v))
                    .collect();
                for u in adjacent {
                    remaining.remove(&u);
                    comp.insert(u);
                    stack.push(u);
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected_within(&self, verts: &BTreeSet<usize>) -> bool {
        self.components_within(verts).len() <= 1
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&(0..self.n()).collect())
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.has_edge(a, b) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(self.labels.clone(), &edges).unwrap()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edges.len() == n * (n - 1) / 2
    }

    fn is_clique(&self, verts: &BTreeSet<usize>) -> bool {
        let vs: Vec<usize> = verts.iter().copied().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !self.has_edge(vs[i], vs[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Vertex connectivity κ(Γ): 0 for disconnected graphs or a single
    /// vertex; n − 1 for complete graphs; otherwise the size of a smallest
    /// disconnecting vertex set.
    pub fn connectivity(&self) -> usize {
        let n = self.n();
        if n <= 1 || !self.is_connected() {
            return 0;
        }
        if self.is_complete() {
            return n - 1;
        }
        let all: Vec<usize> = (0..n).collect();
        for k in 1..n - 1 {
            for cut in subsets_of_size(&all, k) {
                let rest: BTreeSet<usize> =
                    (0..n).filter(|v| !cut.contains(v)).collect();
                if !self.is_connected_within(&rest) {
                    return k;
                }
            }
        }
        n - 1
    }

    /// Flag (clique) complex of the graph.
    pub fn flag_complex(&self) -> SimplicialComplex {
        let n = self.n();
        let mut cliques: Vec<BTreeSet<usize>> = Vec::new();
        // Enumerate cliques by extension (n ≤ 16 in practice).
        let mut stack: Vec<BTreeSet<usize>> =
            (0..n).map(|v| BTreeSet::from([v])).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = stack.iter().cloned().collect();
        while let Some(c) = stack.pop() {
            let max = *c.iter().max().unwrap();
            let mut extended = false;
            for v in max + 1..n {
                if c.iter().all(|&u| self.has_edge(u, v)) {
                    let mut c2 = c.clone();
                    c2.insert(v);
                    if seen.insert(c2.clone()) {
                        stack.push(c2);
                    }
                    extended = true;
                }
            }
            if !extended {
                cliques.push(c);
            }
        }
        if cliques.is_empty() && n > 0 {
            cliques = (0..n).map(|v| BTreeSet::from([v])).collect();
        }
        SimplicialComplex::from_facets(self.labels.clone(), cliques).unwrap()
    }
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        items: &[usize],
        start: usize,
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.iter().copied().collect());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, k, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Simplicial complexes
// ---------------------------------------------------------------------------

type Face = BTreeSet<usize>;

/// Finite abstract simplicial complex on labelled vertices. The face set
/// always contains the empty face unless the complex is void (no faces at
/// all). Vertices of the ambient set need not all be used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub labels: Vec<String>,
    faces: BTreeSet<Face>,
}

impl SimplicialComplex {
    /// Build from facets; faces are closed downwards. An empty facet list
    /// yields the void complex; a list containing only the empty set yields
    /// the empty complex {∅}.
    pub fn from_facets(labels: Vec<String>, facets: Vec<Face>) -> Result<Self> {
        let n = labels.len();
        let mut faces: BTreeSet<Face> = BTreeSet::new();
        for f in &facets {
            for &v in f {
                if v >= n {
                    return Err(Error::Invalid(format!("vertex {v} out of range")));
                }
            }
            // All subsets of f.
            let elems: Vec<usize> = f.iter().copied().collect();
            for mask in 0..(1usize << elems.len()) {
                let sub: Face = elems
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(sub);
            }
        }
        Ok(SimplicialComplex { labels, faces })
    }

    pub fn void(labels: Vec<String>) -> Self {
        SimplicialComplex {
            labels,
            faces: BTreeSet::new(),
        }
    }

    pub fn empty_complex(labels: Vec<String>) -> Self {
        SimplicialComplex {
            labels,
            faces: BTreeSet::from([Face::new()]),
        }
    }

    pub fn full_simplex(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        SimplicialComplex::from_facets(labels, vec![(0..n).collect()]).unwrap()
    }

    pub fn discrete_points(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        SimplicialComplex::from_facets(labels, (0..n).map(|v| Face::from([v])).collect())
            .unwrap()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn has_face(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    pub fn facets(&self) -> Vec<Face> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.is_subset(g))
            })
            .cloned()
            .collect()
    }

    /// Induced subcomplex on a vertex subset (faces contained in W), on the
    /// same ambient vertex set.
    pub fn induced(&self, w: &Face) -> SimplicialComplex {
        SimplicialComplex {
            labels: self.labels.clone(),
            faces: self
                .faces
                .iter()
                .filter(|f| f.is_subset(w))
                .cloned()
                .collect(),
        }
    }

    /// Link of σ inside the induced subcomplex on W: faces τ ⊆ W with
    /// τ ∪ σ a face (W and σ disjoint). Void if σ itself is not a face.
    pub fn link_within(&self, sigma: &Face, w: &Face) -> SimplicialComplex {
        if !self.faces.contains(sigma) {
            return SimplicialComplex::void(self.labels.clone());
        }
        let faces = self
            .faces
            .iter()
            .filter(|f| f.is_subset(w))
            .filter(|f| {
                let mut u = (*f).clone();
                u.extend(sigma.iter().copied());
                self.faces.contains(&u)
            })
            .cloned()
            .collect();
        SimplicialComplex {
            labels: self.labels.clone(),
            faces,
        }
    }

    /// Simplicial join: faces σ ∪ τ with σ from self, τ from other
    /// (vertex sets concatenated).
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.n();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut faces = BTreeSet::new();
        for f in &self.faces {
            for g in &other.faces {
                let mut u = f.clone();
                u.extend(g.iter().map(|&v| v + offset));
                faces.insert(u);
            }
        }
        SimplicialComplex { labels, faces }
    }

    /// Faces of cardinality k, sorted.
    fn faces_of_card(&self, k: usize) -> Vec<Face> {
        self.faces.iter().filter(|f| f.len() == k).cloned().collect()
    }
}

/// Coefficients for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Fp(u64),
    /// Rational dimensions plus integer torsion.
    Integer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    /// dim over F_p, or the free rank over Z.
    pub rank: usize,
    /// Invariant factors > 1 (empty for F_p coefficients).
    pub torsion: Vec<BigInt>,
}

/// Reduced simplicial homology H̃_i. Conventions: the empty complex {∅} has
/// H̃_{-1} of rank 1; the void complex has no homology at all; i < -1 is 0.
pub fn reduced_homology(k: &SimplicialComplex, i: i64, coeffs: Coefficients) -> Result<Homology> {
    if k.is_void() || i < -1 {
        return Ok(Homology {
            rank: 0,
            torsion: Vec::new(),
        });
    }
    // Chain group C_i has basis the faces of cardinality i+1 (C_{-1} = <∅>).
    let card = (i + 1) as usize;
    let c_i = k.faces_of_card(card);
    if c_i.is_empty() {
        return Ok(Homology {
            rank: 0,
            torsion: Vec::new(),
        });
    }
    let c_down = if card == 0 {
        Vec::new()
    } else {
        k.faces_of_card(card - 1)
    };
    let c_up = k.faces_of_card(card + 1);
    let d_i = boundary_matrix(&c_i, &c_down); // C_i -> C_{i-1}
    let d_up = boundary_matrix(&c_up, &c_i); // C_{i+1} -> C_i
    match coeffs {
        Coefficients::Fp(p) => {
            let field = PrimeField::new(p)?;
            let r1 = fp_rank(&d_i, field);
            let r2 = fp_rank(&d_up, field);
            Ok(Homology {
                rank: c_i.len() - r1 - r2,
                torsion: Vec::new(),
            })
        }
        Coefficients::Integer => {
            let r1 = if d_i.is_empty() { 0 } else { intmat::rank(&d_i) };
            let (r2, torsion) = if d_up.is_empty() {
                (0, Vec::new())
            } else {
                let s = intmat::smith_form(&d_up);
                (s.rank, s.torsion())
            };
            Ok(Homology {
                rank: c_i.len() - r1 - r2,
                torsion,
            })
        }
    }
}

/// Boundary matrix: rows indexed by faces of cardinality k-1, columns by
/// faces of cardinality k, with alternating signs.
fn boundary_matrix(cols: &[Face], rows: &[Face]) -> IMat {
    if cols.is_empty() {
        return Vec::new();
    }
    let row_index: std::collections::BTreeMap<&Face, usize> =
        rows.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = intmat::zeros(rows.len().max(1), cols.len());
    if rows.is_empty() {
        // Boundary into the zero group (e.g. ∂ of the empty face's chain
        // group when i = -1): the zero matrix with a single placeholder row.
        return intmat::zeros(1, cols.len());
    }
    for (j, f) in cols.iter().enumerate() {
        for (pos, &v) in f.iter().enumerate() {
            let mut sub = f.clone();
            sub.remove(&v);
            if let Some(&ri) = row_index.get(&sub) {
                m[ri][j] = if pos % 2 == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
            }
        }
    }
    m
}

fn fp_rank(m: &IMat, field: PrimeField) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut fm = FpMatrix::zero(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let r = num_integer::Integer::mod_floor(&m[i][j], &BigInt::from(field.p()));
            fm.set(i, j, u64::try_from(&r).unwrap());
        }
    }
    fm.rank()
}

// ---------------------------------------------------------------------------
// Coordinate loci
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusKind {
    /// Union of coordinate subtori (k^×)^W of the character torus.
    Characteristic,
    /// Union of coordinate subspaces k^W of affine space.
    Resonance,
}

/// A finite union of coordinate subtori/subspaces, recorded by the maximal
/// qualifying vertex subsets. An empty subset list is the empty locus; a
/// list containing only ∅ is the single point {1} (resp. {0}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateLocusSet {
    pub labels: Vec<String>,
    pub subsets: Vec<BTreeSet<usize>>,
    pub kind: LocusKind,
}

impl CoordinateLocusSet {
    pub fn new(labels: Vec<String>, mut subsets: Vec<BTreeSet<usize>>, kind: LocusKind) -> Self {
        // Keep maximal subsets only, deterministically ordered.
        subsets.sort();
        subsets.dedup();
        let maximal: Vec<BTreeSet<usize>> = subsets
            .iter()
            .filter(|s| !subsets.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
            .cloned()
            .collect();
        CoordinateLocusSet {
            labels,
            subsets: maximal,
            kind,
        }
    }

    pub fn is_empty_locus(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Membership of a point recorded by its support (coordinates where the
    /// point differs from the basepoint 1/0).
    pub fn contains_support(&self, support: &BTreeSet<usize>) -> bool {
        self.subsets.iter().any(|w| support.is_subset(w))
    }

    /// The union as a subspace arrangement (for resonance-type loci, the
    /// subsets literally span coordinate subspaces).
    pub fn as_subspace_arrangement(&self) -> SubspaceArrangement {
        let n = self.labels.len();
        let members = self
            .subsets
            .iter()
            .map(|w| {
                let sup: Vec<usize> = w.iter().copied().collect();
                RationalSubspace::coordinate(n, &sup)
            })
            .collect();
        SubspaceArrangement::from_members(n, members)
    }
}

/// The degree-i depth-d jump locus of the toric complex on L: the union of
/// (k^×)^W over subsets W with
///   Σ_{σ ∈ L_{V∖W}} dim H̃_{i−1−|σ|}(lk_{L_W}(σ)) ≥ d.
/// The resonance flavour uses the same combinatorial formula.
pub fn toric_jump_loci(
    l: &SimplicialComplex,
    i: i64,
    d: usize,
    kind: LocusKind,
    coeffs: Coefficients,
    vertex_cap: usize,
) -> Result<CoordinateLocusSet> {
    let n = l.n();
    if n > vertex_cap {
        return Err(Error::CapExceeded {
            what: "toric vertex count",
            value: n as u128,
            limit: vertex_cap as u128,
        });
    }
    if d == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    let mut qualifying: Vec<BTreeSet<usize>> = Vec::new();
    for mask in 0..(1usize << n) {
        let w: Face = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let complement: Face = (0..n).filter(|v| mask >> v & 1 == 0).collect();
        let outside = l.induced(&complement);
        if outside.is_void() {
            continue;
        }
        let mut total = 0usize;
        for sigma in outside.faces() {
            let lk = l.link_within(sigma, &w);
            let deg = i - 1 - sigma.len() as i64;
            total += reduced_homology(&lk, deg, coeffs)?.rank;
            if total >= d {
                break;
            }
        }
        if total >= d {
            qualifying.push(w);
        }
    }
    Ok(CoordinateLocusSet::new(l.labels.clone(), qualifying, kind))
}

// ---------------------------------------------------------------------------
// Right-angled Artin groups
// ---------------------------------------------------------------------------

/// V₁ of the RAAG on Γ: maximal vertex subsets W inducing a disconnected
/// subgraph. The trivial character always lies in V₁ (as the ∅-stratum) and
/// is not listed separately.
pub fn raag_v1(gamma: &Graph) -> CoordinateLocusSet {
    let n = gamma.n();
    let mut qualifying = Vec::new();
    for mask in 0..(1usize << n) {
        let w: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if w.len() >= 2 && gamma.components_within(&w).len() >= 2 {
            qualifying.push(w);
        }
    }
    CoordinateLocusSet::new(gamma.labels.clone(), qualifying, LocusKind::Characteristic)
}

/// The RAAG presentation of Γ.
pub fn raag_presentation(gamma: &Graph) -> crate::presentations::GroupPresentation {
    let edges: Vec<(usize, usize)> = gamma.edges.iter().copied().collect();
    crate::presentations::GroupPresentation::raag(&gamma.labels, &edges).unwrap()
}

/// Δ of a RAAG is non-constant exactly when the graph is connected with a
/// cut vertex. For graphs on ≥ 3 vertices this is κ = 1; the cut-vertex
/// test is the form that also covers K₂, where κ = 1 but Δ ≐ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaagDeltaStatus {
    pub connectivity: usize,
    pub has_cut_vertex: bool,
    pub delta_nonconstant: bool,
    pub agrees: bool,
}

pub fn raag_delta_status(gamma: &Graph, minor_cap: u128) -> Result<RaagDeltaStatus> {
    let p = raag_presentation(gamma);
    let d = crate::alexinv::alexander_polynomial(&p, minor_cap)?;
    let nonconstant = crate::alexinv::is_nonconstant(&d.poly);
    let n = gamma.n();
    let cut = gamma.is_connected()
        && (0..n).any(|v| {
            let rest: BTreeSet<usize> = (0..n).filter(|&u| u != v).collect();
            !rest.is_empty() && !gamma.is_connected_within(&rest)
        });
    Ok(RaagDeltaStatus {
        connectivity: gamma.connectivity(),
        has_cut_vertex: cut,
        delta_nonconstant: nonconstant,
        agrees: nonconstant == cut,
    })
}

/// Upper-bound complement for the BNS-type invariant Σ^q of a RAAG: the
/// union over i ≤ q of the degree-i depth-1 resonance loci (real points),
/// valid when the integral torsion condition on links holds.
#[derive(Debug, Clone)]
pub struct SigmaComplementReport {
    pub locus: CoordinateLocusSet,
    pub torsion_condition_holds: bool,
}

pub fn raag_sigma_complement(
    gamma: &Graph,
    q: i64,
    vertex_cap: usize,
) -> Result<SigmaComplementReport> {
    let flag = gamma.flag_complex();
    let n = gamma.n();
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    for i in 0..=q {
        let locus = toric_jump_loci(
            &flag,
            i,
            1,
            LocusKind::Resonance,
            Coefficients::Integer,
            vertex_cap,
        )?;
        subsets.extend(locus.subsets);
    }
    // Torsion condition: for every simplex σ and every W ⊆ V \ σ,
    // H̃_j(lk_{Δ_W}(σ), Z) is torsion-free for all j ≤ q − dim σ − 2.
    let mut torsion_ok = true;
    'outer: for sigma in flag.faces() {
        let rest: Face = (0..n).filter(|v| !sigma.contains(v)).collect();
        let rest_vec: Vec<usize> = rest.iter().copied().collect();
        for mask in 0..(1usize << rest_vec.len()) {
            let w: Face = rest_vec
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let lk = flag.link_within(sigma, &w);
            let dim_sigma = sigma.len() as i64 - 1;
            for j in -1..=(q - dim_sigma - 2) {
                if !reduced_homology(&lk, j, Coefficients::Integer)?
                    .torsion
                    .is_empty()
                {
                    torsion_ok = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(SigmaComplementReport {
        locus: CoordinateLocusSet::new(gamma.labels.clone(), subsets, LocusKind::Resonance),
        torsion_condition_holds: torsion_ok,
    })
}

/// Quasi-Kähler and Kähler classification of a RAAG by its graph: the group
/// is quasi-Kähler iff Γ is complete multipartite, and Kähler iff Γ is a
/// complete graph on an even number of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaagClassification {
    pub quasi_kahler: bool,
    /// Sizes of the multipartite parts when quasi-Kähler.
    pub partition: Option<Vec<usize>>,
    pub kahler: bool,
}

pub fn raag_classify(gamma: &Graph) -> RaagClassification {
    let comp = gamma.complement();
    let comps = comp.components_within(&(0..gamma.n()).collect());
    let multipartite = comps.iter().all(|c| comp.is_clique(c));
    let partition = if multipartite {
        let mut sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Some(sizes)
    } else {
        None
    };
    RaagClassification {
        quasi_kahler: multipartite,
        partition,
        kahler: gamma.n() > 0 && gamma.is_complete() && gamma.n() % 2 == 0,
    }
}

/// Membership of a character in the RAAG V₁ by the support criterion:
/// nontrivial ρ lies in the union iff its support {i : ρ(x_i) ≠ 1} lies in
/// some qualifying W; the trivial character always lies in V₁.
pub fn raag_v1_contains(locus: &CoordinateLocusSet, values: &[u64]) -> bool {
    let support: BTreeSet<usize> = values
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != 1)
        .map(|(i, _)| i)
        .collect();
    if support.is_empty() {
        return true;
    }
    locus.contains_support(&support)
}

/// Word used by RAAG presentations for a vertex generator (re-exported for
/// fixture construction).
pub fn vertex_generator(v: usize) -> Word {
    Word::generator(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    #[test]
    fn homology_conventions() {
        let labels: Vec<String> = vec!["a".into()];
        let void = SimplicialComplex::void(labels.clone());
        for i in -1..=2 {
            assert_eq!(
                reduced_homology(&void, i, Coefficients::Integer).unwrap().rank,
                0
            );
        }
        let empty = SimplicialComplex::empty_complex(labels);
        assert_eq!(
            reduced_homology(&empty, -1, Coefficients::Integer).unwrap().rank,
            1
        );
        assert_eq!(
            reduced_homology(&empty, 0, Coefficients::Integer).unwrap().rank,
            0
        );
    }

    #[test]
    fn homology_of_spheres_and_points() {
        // n discrete points: H̃_0 rank n-1.
        let pts = SimplicialComplex::discrete_points(4);
        assert_eq!(
            reduced_homology(&pts, 0, Coefficients::Integer).unwrap().rank,
            3
        );
        assert_eq!(
            reduced_homology(&pts, -1, Coefficients::Integer).unwrap().rank,
            0
        );
        // Boundary of a triangle = S^1.
        let circle = SimplicialComplex::from_facets(
            vec!["a".into(), "b".into(), "c".into()],
            vec![set(&[0, 1]), set(&[1, 2]), set(&[0, 2])],
        )
        .unwrap();
        assert_eq!(
            reduced_homology(&circle, 1, Coefficients::Integer).unwrap().rank,
            1
        );
        assert_eq!(
            reduced_homology(&circle, 0, Coefficients::Integer).unwrap().rank,
            0
        );
        // Full simplex: contractible.
        let simplex = SimplicialComplex::full_simplex(4);
        for i in -1..=3 {
            assert_eq!(
                reduced_homology(&simplex, i, Coefficients::Integer).unwrap().rank,
                0,
                "H_{i}"
            );
        }
    }

    #[test]
    fn homology_torsion_projective_plane() {
        // Minimal 6-vertex, 10-triangle triangulation of RP^2.
        let facets = vec![
            set(&[0, 1, 3]),
            set(&[0, 1, 4]),
            set(&[0, 2, 3]),
            set(&[0, 2, 5]),
            set(&[0, 4, 5]),
            set(&[1, 2, 4]),
            set(&[1, 2, 5]),
            set(&[1, 3, 5]),
            set(&[2, 3, 4]),
            set(&[3, 4, 5]),
        ];
        let labels = (0..6).map(|i| format!("v{i}")).collect();
        let rp2 = SimplicialComplex::from_facets(labels, facets).unwrap();
        let h1 = reduced_homology(&rp2, 1, Coefficients::Integer).unwrap();
        assert_eq!(h1.rank, 0);
        assert_eq!(h1.torsion, vec![BigInt::from(2)]);
        let h2 = reduced_homology(&rp2, 2, Coefficients::Integer).unwrap();
        assert_eq!(h2.rank, 0);
        // Over F_2 both H_1 and H_2 see the torsion.
        assert_eq!(
            reduced_homology(&rp2, 1, Coefficients::Fp(2)).unwrap().rank,
            1
        );
        assert_eq!(
            reduced_homology(&rp2, 2, Coefficients::Fp(2)).unwrap().rank,
            1
        );
    }

    #[test]
    fn toric_loci_of_torus() {
        // Full simplex on n vertices: V^i_d = {1} iff d ≤ C(n, i), else ∅.
        let l = SimplicialComplex::full_simplex(4);
        for i in 0..=3i64 {
            let c = [1usize, 4, 6, 4][i as usize];
            for d in 1..=c {
                let locus = toric_jump_loci(
                    &l,
                    i,
                    d,
                    LocusKind::Characteristic,
                    Coefficients::Fp(3),
                    DEFAULT_VERTEX_CAP,
                )
                .unwrap();
                assert_eq!(locus.subsets, vec![BTreeSet::new()], "i={i} d={d}");
            }
            let locus = toric_jump_loci(
                &l,
                i,
                c + 1,
                LocusKind::Characteristic,
                Coefficients::Fp(3),
                DEFAULT_VERTEX_CAP,
            )
            .unwrap();
            assert!(locus.is_empty_locus(), "i={i} d={}", c + 1);
        }
    }

    #[test]
    fn toric_loci_of_wedge() {
        // n discrete points (wedge of n circles): V¹_d full torus for
        // d ≤ n-1, {1} at d = n, empty beyond.
        let n = 4;
        let l = SimplicialComplex::discrete_points(n);
        for d in 1..n {
            let locus = toric_jump_loci(
                &l,
                1,
                d,
                LocusKind::Characteristic,
                Coefficients::Fp(3),
                DEFAULT_VERTEX_CAP,
            )
            .unwrap();
            assert_eq!(locus.subsets, vec![set(&[0, 1, 2, 3])], "d={d}");
        }
        let locus = toric_jump_loci(
            &l,
            1,
            n,
            LocusKind::Characteristic,
            Coefficients::Fp(3),
            DEFAULT_VERTEX_CAP,
        )
        .unwrap();
        assert_eq!(locus.subsets, vec![BTreeSet::new()]);
        let locus = toric_jump_loci(
            &l,
            1,
            n + 1,
            LocusKind::Characteristic,
            Coefficients::Fp(3),
            DEFAULT_VERTEX_CAP,
        )
        .unwrap();
        assert!(locus.is_empty_locus());
    }

    #[test]
    fn raag_v1_matches_toric_formula() {
        for gamma in [
            Graph::path(3),
            Graph::path(4),
            Graph::cycle(4),
            Graph::complete(3),
            Graph::discrete(3),
            Graph::complete_bipartite(2, 3),
        ] {
            let direct = raag_v1(&gamma);
            let via_toric = toric_jump_loci(
                &gamma.flag_complex(),
                1,
                1,
                LocusKind::Characteristic,
                Coefficients::Fp(3),
                DEFAULT_VERTEX_CAP,
            )
            .unwrap();
            // The toric formula also reports the ∅ stratum ({1}) when no
            // larger subset qualifies; normalize by dropping it.
            let mut toric_subsets = via_toric.subsets.clone();
            toric_subsets.retain(|s| !s.is_empty());
            assert_eq!(direct.subsets, toric_subsets, "graph {:?}", gamma.edges);
        }
    }

    #[test]
    fn raag_v1_examples() {
        // P3: only {1,3} (0-indexed {0,2}) disconnects.
        let v1 = raag_v1(&Graph::path(3));
        assert_eq!(v1.subsets, vec![set(&[0, 2])]);
        // K_n: nothing disconnects.
        assert!(raag_v1(&Graph::complete(4)).is_empty_locus());
        // Discrete graph: the whole torus.
        let v1 = raag_v1(&Graph::discrete(3));
        assert_eq!(v1.subsets, vec![set(&[0, 1, 2])]);
        // K_{2,3}: the two sides.
        let v1 = raag_v1(&Graph::complete_bipartite(2, 3));
        assert_eq!(v1.subsets, vec![set(&[0, 1]), set(&[2, 3, 4])]);
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(Graph::complete(4).connectivity(), 3);
        assert_eq!(Graph::path(3).connectivity(), 1);
        assert_eq!(Graph::cycle(4).connectivity(), 2);
        assert_eq!(Graph::discrete(3).connectivity(), 0);
        assert_eq!(Graph::complete(1).connectivity(), 0);
        assert_eq!(Graph::complete_bipartite(2, 3).connectivity(), 2);
    }

    #[test]
    fn delta_status_small_graphs() {
        for (gamma, expect_nonconst) in [
            (Graph::path(3), true),     // cut vertex
            (Graph::complete(3), false), // 2-connected
            (Graph::discrete(2), false), // disconnected: Δ = 0
            (Graph::complete(1), false), // single vertex
        ] {
            let st = raag_delta_status(&gamma, crate::alexinv::DEFAULT_MINOR_CAP).unwrap();
            assert!(st.agrees, "graph {:?}", gamma.edges);
            assert_eq!(st.delta_nonconstant, expect_nonconst, "graph {:?}", gamma.edges);
        }
    }

    #[test]
    fn classification() {
        let c = raag_classify(&Graph::complete_bipartite(2, 3));
        assert!(c.quasi_kahler);
        assert_eq!(c.partition, Some(vec![3, 2]));
        assert!(!c.kahler);
        let c = raag_classify(&Graph::complete(4));
        assert!(c.quasi_kahler);
        assert!(c.kahler);
        let c = raag_classify(&Graph::complete(3));
        assert!(!c.kahler);
        // P4 is not complete multipartite.
        let c = raag_classify(&Graph::path(4));
        assert!(!c.quasi_kahler);
        // P3 = K_{1,2} is complete multipartite.
        let c = raag_classify(&Graph::path(3));
        assert!(c.quasi_kahler);
    }

    #[test]
    fn sigma_complement_examples() {
        // F_n (discrete graph): Σ¹ complement is everything.
        let r = raag_sigma_complement(&Graph::discrete(3), 1, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.locus.subsets, vec![set(&[0, 1, 2])]);
        assert!(r.torsion_condition_holds);
        // Z^n: only the origin.
        let r = raag_sigma_complement(&Graph::complete(3), 1, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.locus.subsets, vec![BTreeSet::new()]);
        // K_{2,3}: the two sides.
        let r =
            raag_sigma_complement(&Graph::complete_bipartite(2, 3), 1, DEFAULT_VERTEX_CAP)
                .unwrap();
        assert_eq!(r.locus.subsets, vec![set(&[0, 1]), set(&[2, 3, 4])]);
        assert!(r.torsion_condition_holds);
    }

    #[test]
    fn join_multiplies_toric_complexes() {
        let a = SimplicialComplex::discrete_points(2);
        let b = SimplicialComplex::discrete_points(3);
        let j = a.join(&b);
        // Join of discrete sets = flag complex of K_{2,3}.
        let flag = Graph::complete_bipartite(2, 3).flag_complex();
        assert_eq!(j.facets().len(), flag.facets().len());
        assert_eq!(j.faces.len(), flag.faces.len());
    }
}
