//! Presentation parsing, Fox calculus, abelianization, the Alexander
//! matrix, and permutation lifts of the Fox Jacobian.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intmat::{self, IMat};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::word::Word;

/// G = ⟨x_1, …, x_q | r_1, …, r_m⟩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("empty generator list".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        let q = generators.len();
        for r in &relators {
            for &(g, _) in r.runs() {
                if g >= q {
                    return Err(Error::Invalid(format!(
                        "generator index {g} out of range in relator"
                    )));
                }
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn nrels(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Canonical text form; `parse_presentation` round-trips through it.
    pub fn serialize(&self) -> String {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display(&self.generators))
            .collect();
        format!("<{} | {}>", self.generators.join(","), rels.join(", "))
    }

    /// m×q matrix of total exponents of each relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_vector(self.ngens()))
            .collect()
    }

    /// True when every relator has zero total exponent in every generator.
    pub fn is_commutator_relators(&self) -> bool {
        self.exponent_matrix()
            .iter()
            .all(|row| row.iter().all(|&e| e == 0))
    }

    /// Right-angled Artin presentation of a graph: one generator per vertex,
    /// one commutator relator per edge.
    pub fn raag(labels: &[String], edges: &[(usize, usize)]) -> Result<Self> {
        let relators = edges
            .iter()
            .map(|&(a, b)| Word::commutator(&Word::generator(a), &Word::generator(b)))
            .collect();
        GroupPresentation::new(labels.to_vec(), relators)
    }
}

/// Element of the group ring Z F_q.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity(), 1)
    }

    pub fn from_word(w: Word, c: i64) -> Self {
        let mut e = Self::default();
        e.add_term(w, c);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.get(&w).copied().unwrap_or(0) + c;
        if v == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left-multiply by a single group element.
    pub fn translate(&self, g: &Word) -> Self {
        GroupRingElement {
            terms: self
                .terms
                .iter()
                .map(|(w, &c)| (g.mul(w), c))
                .collect(),
        }
    }

    /// Augmentation ε: sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

/// Fox derivative ∂_j(w), computed run by run with the product rule.
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &(g, e) in w.runs() {
        if g == j {
            // ∂(x^e) = Σ_{k=0}^{e-1} x^k for e > 0, −Σ_{k=1}^{-e} x^{-k} for e < 0.
            if e > 0 {
                for k in 0..e {
                    out.add_term(prefix.mul(&Word::generator(j).pow(k)), 1);
                }
            } else {
                for k in 1..=(-e) {
                    out.add_term(prefix.mul(&Word::generator(j).pow(-k)), -1);
                }
            }
        }
        prefix = prefix.mul(&Word::generator(g).pow(e));
    }
    out
}

/// The m×q matrix of Fox derivatives ∂_j(r_i) over the free-group ring.
pub fn fox_jacobian(p: &GroupPresentation) -> Vec<Vec<GroupRingElement>> {
    p.relators
        .iter()
        .map(|r| (0..p.ngens()).map(|j| fox_derivative(r, j)).collect())
        .collect()
}

/// The maximal torsion-free abelian quotient H ≅ Z^rank of G, with the
/// torsion of the full abelianization recorded alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    /// Image of each generator in Z^rank.
    pub generator_images: Vec<Vec<i64>>,
    pub exponent_matrix: Vec<Vec<i64>>,
}

impl Abelianization {
    /// Image of a word in Z^rank.
    pub fn word_image(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &(g, e) in w.runs() {
            for (k, x) in self.generator_images[g].iter().enumerate() {
                v[k] += x * e;
            }
        }
        v
    }
}

pub fn abelianize(p: &GroupPresentation) -> Abelianization {
    let q = p.ngens();
    let e_rows = p.exponent_matrix();
    let e: IMat = intmat::from_i64(&e_rows);
    if p.is_commutator_relators() {
        // Preferred basis: the generators themselves.
        let images = (0..q)
            .map(|j| (0..q).map(|k| i64::from(k == j)).collect())
            .collect();
        return Abelianization {
            rank: q,
            torsion: Vec::new(),
            generator_images: images,
            exponent_matrix: e_rows,
        };
    }
    // Full abelianization = coker(E^T : Z^m -> Z^q), read off from U with
    // U E^T V = D: the class of x is U x in Smith coordinates.
    let m = intmat::transpose(&e);
    let s = intmat::smith_form(&m);
    let rank = q - s.rank;
    let torsion = s.torsion();
    // Rows of U past the Smith rank descend to a basis of the torsion-free
    // quotient; Hermite-reduce for a reproducible choice.
    let free: IMat = (s.rank..q).map(|i| s.left[i].clone()).collect();
    let proj = intmat::hnf(&free);
    assert_eq!(proj.len(), rank);
    let generator_images = (0..q)
        .map(|j| {
            proj.iter()
                .map(|row| i64::try_from(&row[j]).expect("image fits in i64"))
                .collect()
        })
        .collect();
    Abelianization {
        rank,
        torsion,
        generator_images,
        exponent_matrix: e_rows,
    }
}

/// Abelianized image of a group-ring element as a Laurent polynomial in
/// `ab.rank` variables.
pub fn laurent_image(ab: &Abelianization, e: &GroupRingElement) -> LaurentPoly {
    let mut f = LaurentPoly::zero(ab.rank);
    for (w, c) in e.terms() {
        f.add_term(ab.word_image(w), BigInt::from(c));
    }
    f
}

/// The Alexander matrix Φ_G: Fox Jacobian pushed through the torsion-free
/// abelianization.
pub fn alexander_matrix(p: &GroupPresentation) -> (LaurentMatrix, Abelianization) {
    let ab = abelianize(p);
    let jac = fox_jacobian(p);
    let entries = jac
        .iter()
        .map(|row| row.iter().map(|e| laurent_image(&ab, e)).collect())
        .collect();
    (
        LaurentMatrix::new(p.nrels(), p.ngens(), ab.rank, entries),
        ab,
    )
}

/// An epimorphism G ↠ Z_n given by residues of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModEpimorphism {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl ModEpimorphism {
    pub fn new(p: &GroupPresentation, modulus: u64, residues: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Invalid("modulus must be positive".into()));
        }
        if residues.len() != p.ngens() {
            return Err(Error::Invalid(format!(
                "expected {} residues, got {}",
                p.ngens(),
                residues.len()
            )));
        }
        let residues: Vec<u64> = residues.into_iter().map(|r| r % modulus).collect();
        let mut g = modulus;
        for &r in &residues {
            g = num_integer::gcd(g, r);
        }
        if g != 1 && modulus != 1 {
            return Err(Error::Invalid(format!(
                "residues do not generate Z_{modulus}"
            )));
        }
        let lift = ModEpimorphism { modulus, residues };
        for (i, r) in p.relators.iter().enumerate() {
            if lift.word_residue(r) != 0 {
                return Err(Error::Invalid(format!(
                    "relator {} has nonzero image mod {}",
                    i + 1,
                    modulus
                )));
            }
        }
        Ok(lift)
    }

    pub fn word_residue(&self, w: &Word) -> u64 {
        let n = self.modulus as i64;
        let mut acc = 0i64;
        for &(g, e) in w.runs() {
            acc = (acc + (self.residues[g] as i64 % n) * (e % n)).rem_euclid(n);
        }
        acc as u64
    }
}

/// Replace each Fox Jacobian entry Σ c_g·g by Σ c_g·P(λ(g)) with P(k) the
/// n×n cyclic-shift matrix. The cokernel of the result presents
/// H₁(ker λ̂) ⊕ Z^{n−1}.
pub fn permutation_lift(p: &GroupPresentation, lambda: &ModEpimorphism) -> IMat {
    let n = lambda.modulus as usize;
    let (m, q) = (p.nrels(), p.ngens());
    let jac = fox_jacobian(p);
    let mut out = intmat::zeros(m * n, q * n);
    for (i, row) in jac.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            for (w, c) in entry.terms() {
                let k = lambda.word_residue(w) as usize;
                // P(k)[a][b] = 1 iff a ≡ b + k (mod n)
                for b in 0..n {
                    let a = (b + k) % n;
                    out[i * n + a][j * n + b] += BigInt::from(c);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            toks.push((start, Tok::Ident(text[start..i].to_string())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let v: i64 = text[start..i]
                .parse()
                .map_err(|_| Error::Parse {
                    pos: start,
                    msg: "integer out of range".into(),
                })?;
            toks.push((start, Tok::Int(v)));
        } else if "<>|,^()[]*-+".contains(c) {
            toks.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(toks)
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        Ok(Lexer {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(usize::MAX)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            _ => Err(Error::Parse {
                pos: if pos == usize::MAX { 0 } else { pos },
                msg: format!("expected `{c}`"),
            }),
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: if self.here() == usize::MAX {
                0
            } else {
                self.here()
            },
            msg: msg.to_string(),
        })
    }
}

fn parse_signed_int(lx: &mut Lexer) -> Result<i64> {
    match lx.peek() {
        Some(Tok::Sym('-')) => {
            lx.next();
            match lx.next() {
                Some(Tok::Int(v)) => Ok(-v),
                _ => lx.err("expected integer after `-`"),
            }
        }
        Some(Tok::Int(_)) => match lx.next() {
            Some(Tok::Int(v)) => Ok(v),
            _ => unreachable!(),
        },
        _ => lx.err("expected integer exponent"),
    }
}

fn parse_factor(lx: &mut Lexer, gens: &[String]) -> Result<Word> {
    match lx.peek() {
        Some(Tok::Ident(_)) => {
            let pos = lx.here();
            let Some(Tok::Ident(name)) = lx.next() else {
                unreachable!()
            };
            match gens.iter().position(|g| *g == name) {
                Some(idx) => Ok(Word::generator(idx)),
                // An identifier like "x1x2x3" is the juxtaposed word
                // x1·x2·x3; split it into generator names, longest first.
                None => match split_generators(&name, gens) {
                    Some(indices) => Ok(indices
                        .into_iter()
                        .fold(Word::identity(), |w, i| w.mul(&Word::generator(i)))),
                    None => Err(Error::Parse {
                        pos,
                        msg: format!("unknown generator `{name}`"),
                    }),
                },
            }
        }
        Some(Tok::Sym('(')) => {
            lx.next();
            let w = parse_word(lx, gens)?;
            lx.expect_sym(')')?;
            Ok(w)
        }
        Some(Tok::Sym('[')) => {
            lx.next();
            let u = parse_word(lx, gens)?;
            lx.expect_sym(',')?;
            let v = parse_word(lx, gens)?;
            lx.expect_sym(']')?;
            Ok(Word::commutator(&u, &v))
        }
        _ => lx.err("expected generator, `(` or `[`"),
    }
}

/// Decompose `name` into a concatenation of generator names, preferring
/// longer matches and backtracking on failure.
fn split_generators(name: &str, gens: &[String]) -> Option<Vec<usize>> {
    if name.is_empty() {
        return Some(Vec::new());
    }
    let mut candidates: Vec<usize> = (0..gens.len())
        .filter(|&i| name.starts_with(gens[i].as_str()))
        .collect();
    candidates.sort_by_key(|&i| std::cmp::Reverse(gens[i].len()));
    for i in candidates {
        if let Some(mut rest) = split_generators(&name[gens[i].len()..], gens) {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

fn parse_term(lx: &mut Lexer, gens: &[String]) -> Result<Word> {
    let f = parse_factor(lx, gens)?;
    if let Some(Tok::Sym('^')) = lx.peek() {
        lx.next();
        let pos = lx.here();
        let e = parse_signed_int(lx)?;
        if e == 0 {
            return Err(Error::Parse {
                pos,
                msg: "zero exponent is not a valid term".into(),
            });
        }
        Ok(f.pow(e))
    } else {
        Ok(f)
    }
}

fn starts_factor(t: Option<&Tok>) -> bool {
    matches!(
        t,
        Some(Tok::Ident(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('['))
    )
}

fn parse_word(lx: &mut Lexer, gens: &[String]) -> Result<Word> {
    let mut w = parse_term(lx, gens)?;
    loop {
        if let Some(Tok::Sym('*')) = lx.peek() {
            lx.next();
            let t = parse_term(lx, gens)?;
            w = w.mul(&t);
        } else if starts_factor(lx.peek()) {
            let t = parse_term(lx, gens)?;
            w = w.mul(&t);
        } else {
            break;
        }
    }
    Ok(w)
}

/// Parse a presentation "<x1,x2 | [x1,x2], x1^2>".
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut lx = Lexer::new(text)?;
    lx.expect_sym('<')?;
    let mut gens = Vec::new();
    loop {
        match lx.next() {
            Some(Tok::Ident(name)) => gens.push(name),
            _ => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "expected generator name".into(),
                })
            }
        }
        match lx.peek() {
            Some(Tok::Sym(',')) => {
                lx.next();
            }
            _ => break,
        }
    }
    lx.expect_sym('|')?;
    let mut relators = Vec::new();
    if !matches!(lx.peek(), Some(Tok::Sym('>'))) {
        loop {
            relators.push(parse_word(&mut lx, &gens)?);
            match lx.peek() {
                Some(Tok::Sym(',')) => {
                    lx.next();
                }
                _ => break,
            }
        }
    }
    lx.expect_sym('>')?;
    if lx.peek().is_some() {
        return lx.err("trailing input after `>`");
    }
    GroupPresentation::new(gens, relators)
}

/// Parse a single word against an existing presentation's generators.
pub fn parse_word_text(text: &str, gens: &[String]) -> Result<Word> {
    let mut lx = Lexer::new(text)?;
    let w = parse_word(&mut lx, gens)?;
    if lx.peek().is_some() {
        return lx.err("trailing input after word");
    }
    Ok(w)
}

// ---------------------------------------------------------------------------
// Stock presentations
// ---------------------------------------------------------------------------

/// Free group F_q.
pub fn free_group(q: usize) -> GroupPresentation {
    let gens = (1..=q).map(|i| format!("x{i}")).collect();
    GroupPresentation::new(gens, Vec::new()).unwrap()
}

/// Free abelian group Z^q (all commutators).
pub fn free_abelian(q: usize) -> GroupPresentation {
    let gens: Vec<String> = (1..=q).map(|i| format!("x{i}")).collect();
    let mut rels = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            rels.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
        }
    }
    GroupPresentation::new(gens, rels).unwrap()
}

/// Fundamental group of the complement of a pencil of n lines through a
/// point: generators x_1..x_n, relators [x_i, x_1⋯x_n] for i < n.
pub fn pencil_group(n: usize) -> GroupPresentation {
    let gens: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let total = Word::from_runs((0..n).map(|i| (i, 1)));
    let rels = (0..n.saturating_sub(1))
        .map(|i| Word::commutator(&Word::generator(i), &total))
        .collect();
    GroupPresentation::new(gens, rels).unwrap()
}

/// Complement of n-1 parallel lines plus one transverse line: x_n central.
pub fn near_pencil_group(n: usize) -> GroupPresentation {
    let gens: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let rels = (0..n.saturating_sub(1))
        .map(|i| Word::commutator(&Word::generator(i), &Word::generator(n - 1)))
        .collect();
    GroupPresentation::new(gens, rels).unwrap()
}

/// Heisenberg group ⟨x1,x2 | [[x1,x2],x1], [[x1,x2],x2]⟩.
pub fn heisenberg_group() -> GroupPresentation {
    let x = Word::generator(0);
    let y = Word::generator(1);
    let c = Word::commutator(&x, &y);
    GroupPresentation::new(
        vec!["x1".into(), "x2".into()],
        vec![Word::commutator(&c, &x), Word::commutator(&c, &y)],
    )
    .unwrap()
}
