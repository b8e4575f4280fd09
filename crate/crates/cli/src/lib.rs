//! Command-line surface for the jump-loci toolkit.
//!
//! Every subcommand prints a single JSON object (default) or flat text to
//! stdout and exits 0 on success, 2 on input errors, 3 on cap overflow.

use std::collections::BTreeSet;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use loci_core::alexinv::{alexander_polynomial, newton_segment_report, DEFAULT_MINOR_CAP};
use loci_core::arrangements::{
    arr_alex_poly, arr_classify, boundary_invariants, intersection_lattice, milnor_b1,
    os2_structure, projective_quotient, projectivize, resonance_components, AlexClass,
    BoundaryClass, ComponentKind, IntersectionLattice, LineArrangement,
};
use loci_core::exactla::{RationalSubspace, SubspaceArrangement};
use loci_core::jumploci::{
    codim1_stratum, congruence_b1, cover_betti_depth, cover_h1_snf, depth, Character,
    Codim1Case, DEFAULT_CHARACTER_CAP,
};
use loci_core::laurent::{parse_poly, render};
use loci_core::presentations::{parse_presentation, GroupPresentation, ModEpimorphism};
use loci_core::resonance::{linearized_alexander_matrix, resonance_betti, resonance_membership};
use loci_core::tcone::{
    bns_upper_bound, dwyer_fried_rank1, tau1_of_polynomial, DEFAULT_SUPPORT_CAP,
};
use loci_core::toric::{
    raag_classify, raag_delta_status, raag_sigma_complement, toric_jump_loci, Coefficients,
    CoordinateLocusSet, Graph, LocusKind, SimplicialComplex, DEFAULT_VERTEX_CAP,
};
use loci_core::Error;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CoverMethod {
    Depth,
    Snf,
    Both,
}

#[derive(Args)]
struct Caps {
    /// Override the minor-enumeration budget (env: LOCI_MINOR_CAP).
    #[arg(long, global = true)]
    minor_cap: Option<u128>,
    /// Override the character-enumeration budget (env: LOCI_CHARACTER_CAP).
    #[arg(long, global = true)]
    character_cap: Option<u128>,
    /// Override the polynomial support-size budget (env: LOCI_SUPPORT_CAP).
    #[arg(long, global = true)]
    support_cap: Option<usize>,
    /// Override the simplicial vertex budget (env: LOCI_VERTEX_CAP).
    #[arg(long, global = true)]
    vertex_cap: Option<usize>,
}

impl Caps {
    fn minor(&self) -> u128 {
        self.minor_cap
            .or_else(|| env_cap("LOCI_MINOR_CAP"))
            .unwrap_or(DEFAULT_MINOR_CAP)
    }
    fn character(&self) -> u128 {
        self.character_cap
            .or_else(|| env_cap("LOCI_CHARACTER_CAP"))
            .unwrap_or(DEFAULT_CHARACTER_CAP)
    }
    fn support(&self) -> usize {
        self.support_cap
            .or_else(|| env_cap::<usize>("LOCI_SUPPORT_CAP"))
            .unwrap_or(DEFAULT_SUPPORT_CAP)
    }
    fn vertex(&self) -> usize {
        self.vertex_cap
            .or_else(|| env_cap::<usize>("LOCI_VERTEX_CAP"))
            .unwrap_or(DEFAULT_VERTEX_CAP)
    }
}

fn env_cap<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

#[derive(Parser)]
#[command(name = "loci", version, about = "Alexander invariants and jump loci")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Alexander polynomial with Newton-polytope report.
    AlexPoly {
        /// Presentation, e.g. "<x1,x2 | [x1,x2]>".
        #[arg(long)]
        pres: String,
    },
    /// Depth of a finite-field character in the first characteristic variety.
    Depth {
        #[arg(long)]
        pres: String,
        #[arg(long)]
        prime: u64,
        /// Character values, e.g. "x1=3,x2=1".
        #[arg(long)]
        values: String,
    },
    /// Codimension-one stratum of the first characteristic variety.
    Codim1 {
        #[arg(long)]
        pres: String,
    },
    /// First Betti number of a finite cyclic cover.
    CoverBetti {
        #[arg(long)]
        pres: String,
        #[arg(long = "mod")]
        modulus: u64,
        /// Epimorphism residues, e.g. "x1=1,x2=1".
        #[arg(long)]
        values: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "both")]
        method: CoverMethod,
    },
    /// Betti-number estimate of the n-congruence cover.
    CongruenceB1 {
        #[arg(long)]
        pres: String,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        prime: u64,
    },
    /// Exponential tangent cone of a Laurent-polynomial hypersurface.
    Tau1 {
        /// Laurent polynomial, e.g. "t1*t2 - 1".
        #[arg(long)]
        poly: String,
        /// Ambient variable count when larger than the highest index used.
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Tangent-cone upper bound for the BNS invariant.
    BnsBound {
        #[arg(long)]
        pres: String,
    },
    /// Rank-one Dwyer-Fried test: is H1 of the free abelian cover finite?
    DwyerFried {
        #[arg(long)]
        pres: String,
        /// Integral class in H1, e.g. "1,0".
        #[arg(long)]
        nu: String,
    },
    /// Resonance-variety queries.
    #[command(subcommand)]
    Resonance(ResonanceCmd),
    /// Toric complexes and right-angled Artin groups.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Line arrangements.
    #[command(subcommand)]
    Arr(ArrCmd),
}

#[derive(Subcommand)]
enum ResonanceCmd {
    /// Is a rational class in R1 at the given depth?
    Membership {
        #[arg(long)]
        pres: String,
        /// Rational coordinates, e.g. "1,0,-1/2".
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "1")]
        depth: usize,
    },
    /// Linearized Alexander matrix of a commutator-relators presentation.
    Linearize {
        #[arg(long)]
        pres: String,
    },
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Jump loci of a toric complex as coordinate subtori/subspaces.
    Loci {
        /// Complex as JSON: {"n":3,"facets":[[1,2],[3]]} (1-based vertices).
        #[arg(long)]
        complex: String,
        #[arg(long, short)]
        i: i64,
        #[arg(long, short, default_value = "1")]
        d: usize,
        #[arg(long, value_enum, default_value = "characteristic")]
        kind: CliLocusKind,
        /// Field characteristic; omit for integral coefficients.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Kaehler / quasi-Kaehler classification of a right-angled Artin group.
    Classify {
        /// Graph as JSON: {"n":4,"edges":[[1,2],[2,3]]} (1-based vertices).
        #[arg(long)]
        graph: String,
    },
    /// Complement of the BNSR invariant Sigma^q of a right-angled Artin group.
    Sigma {
        #[arg(long)]
        graph: String,
        #[arg(long, short, default_value = "1")]
        q: i64,
    },
    /// Does Delta nonconstancy match graph connectivity one?
    DeltaStatus {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CliLocusKind {
    Characteristic,
    Resonance,
}

#[derive(Subcommand)]
enum ArrCmd {
    /// Intersection lattice of a line arrangement.
    Lattice {
        /// Arrangement JSON; see --help for the two accepted shapes.
        #[arg(long)]
        arr: String,
    },
    /// First resonance variety, component by component.
    Resonance {
        #[arg(long)]
        arr: String,
        /// Extra non-local components as JSON normals, e.g. [[[1,0,1,0,1],...]].
        #[arg(long)]
        extras: Option<String>,
        #[arg(long, default_value = "0")]
        seed: u64,
    },
    /// Fundamental-group classifiers: free, Kaehler, RAAG, type A(m).
    Classify {
        #[arg(long)]
        arr: String,
    },
    /// Alexander polynomial trichotomy of the complement.
    Alex {
        #[arg(long)]
        arr: String,
    },
    /// Mod-p first Betti number of the Milnor fiber.
    MilnorB1 {
        /// Presentation of the affine complement with meridian generators.
        #[arg(long)]
        pres: String,
        /// Meridian generators in factor order, e.g. "x1,x2,x3".
        #[arg(long)]
        meridians: String,
        /// Multiplicities a_i of the factors, e.g. "1,1,1".
        #[arg(long)]
        exponents: String,
        /// Degrees of the factors, e.g. "1,1,1".
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        prime: u64,
    },
    /// Boundary-manifold invariants of a projectivized arrangement.
    Boundary {
        #[arg(long)]
        arr: String,
        /// Append the line at infinity before computing.
        #[arg(long)]
        projectivize: bool,
    },
}

/// Parse and dispatch; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            emit(cli.format, &report);
            0
        }
        Err(e) => {
            let code = match e {
                Error::CapExceeded { .. } => 3,
                _ => 2,
            };
            let kind = match e {
                Error::CapExceeded { .. } => "cap_exceeded",
                Error::Parse { .. } => "parse",
                Error::UnknownGenerator(_) => "unknown_generator",
                Error::InvalidCharacter(_) => "invalid_character",
                Error::Precondition(_) => "precondition",
                Error::Invalid(_) => "invalid",
            };
            emit(
                cli.format,
                &json!({ "error": { "kind": kind, "message": e.to_string() } }),
            );
            code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Value, Error> {
    let caps = &cli.caps;
    match &cli.cmd {
        Cmd::AlexPoly { pres } => {
            let p = parse_presentation(pres)?;
            let delta = alexander_polynomial(&p, caps.minor())?;
            let newton = newton_segment_report(&p, caps.minor())?;
            Ok(json!({
                "delta": render(&delta.poly),
                "b1": delta.b1,
                "delta_is_zero": newton.delta_is_zero,
                "delta_is_constant": newton.delta_is_constant,
                "newton_vertices": newton.newton_vertices,
                "newton_is_segment": newton.is_segment,
                "kahler_obstructed": newton.kahler_obstructed,
                "quasikahler_obstructed": newton.quasikahler_obstructed,
            }))
        }
        Cmd::Depth {
            pres,
            prime,
            values,
        } => {
            let p = parse_presentation(pres)?;
            let vals = parse_assignments(&p, values)?;
            let rho = Character::new(&p, *prime, vals)?;
            let profile = depth(&p, &rho)?;
            Ok(json!({
                "depth": profile.depth,
                "jacobian_rank": profile.jacobian_rank,
                "trivial_character": profile.is_trivial_character,
            }))
        }
        Cmd::Codim1 { pres } => {
            let p = parse_presentation(pres)?;
            let report = codim1_stratum(&p, caps.minor())?;
            let (case, adjoin) = match report.case {
                Codim1Case::FullTorus => ("full_torus", false),
                Codim1Case::Empty => ("empty", false),
                Codim1Case::Hypersurface { adjoin_trivial } => ("hypersurface", adjoin_trivial),
            };
            Ok(json!({
                "b1": report.b1,
                "delta": render(&report.delta.poly),
                "case": case,
                "adjoin_trivial": adjoin,
            }))
        }
        Cmd::CoverBetti {
            pres,
            modulus,
            values,
            prime,
            method,
        } => {
            let p = parse_presentation(pres)?;
            let residues = parse_assignments(&p, values)?;
            let lambda = ModEpimorphism::new(&p, *modulus, residues)?;
            let via_depth = match method {
                CoverMethod::Snf => None,
                _ => Some(cover_betti_depth(&p, &lambda, *prime)?),
            };
            let via_snf = match method {
                CoverMethod::Depth => None,
                _ => Some(cover_h1_snf(&p, &lambda)?),
            };
            let b1 = via_depth
                .or_else(|| via_snf.as_ref().map(|h| h.betti_mod_p(*prime)))
                .unwrap();
            let mut report = json!({ "b1": b1, "prime": prime });
            if let Some(h) = &via_snf {
                report["rank"] = json!(h.rank);
                report["torsion"] = json!(bigints(&h.torsion));
            }
            if let (Some(a), Some(h)) = (via_depth, &via_snf) {
                let agree = a == h.betti_mod_p(*prime);
                report["agreement"] = json!(agree);
                if !agree {
                    return Err(Error::Invalid(format!(
                        "oracle disagreement: depth method {a}, snf method {}",
                        h.betti_mod_p(*prime)
                    )));
                }
            }
            Ok(report)
        }
        Cmd::CongruenceB1 {
            pres,
            modulus,
            prime,
        } => {
            let p = parse_presentation(pres)?;
            let b1 = congruence_b1(&p, *modulus, *prime, caps.character())?;
            Ok(json!({ "b1": b1, "mod": modulus, "prime": prime }))
        }
        Cmd::Tau1 { poly, nvars } => {
            let f = parse_poly(poly, *nvars)?;
            let cone = tau1_of_polynomial(&f, caps.support())?;
            Ok(arrangement_json(&cone))
        }
        Cmd::BnsBound { pres } => {
            let p = parse_presentation(pres)?;
            let cone = bns_upper_bound(&p, caps.minor(), caps.support())?;
            Ok(arrangement_json(&cone))
        }
        Cmd::DwyerFried { pres, nu } => {
            let p = parse_presentation(pres)?;
            let cone = bns_upper_bound(&p, caps.minor(), caps.support())?;
            let class: Vec<BigInt> = parse_int_list(nu)?
                .into_iter()
                .map(BigInt::from)
                .collect();
            let finite = dwyer_fried_rank1(&cone, &class)?;
            Ok(json!({ "finite_betti": finite }))
        }
        Cmd::Resonance(rc) => resonance_cmd(rc),
        Cmd::Toric(tc) => toric_cmd(tc, caps),
        Cmd::Arr(ac) => arr_cmd(ac, caps),
    }
}

fn resonance_cmd(rc: &ResonanceCmd) -> Result<Value, Error> {
    match rc {
        ResonanceCmd::Membership { pres, point, depth } => {
            let p = parse_presentation(pres)?;
            let theta = linearized_alexander_matrix(&p)?;
            let a = parse_rational_list(point)?;
            let member = resonance_membership(&theta, &a, *depth)?;
            let mut report = json!({ "member": member, "depth": depth });
            if a.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                report["betti"] = json!(resonance_betti(&theta, &a)?);
            }
            Ok(report)
        }
        ResonanceCmd::Linearize { pres } => {
            let p = parse_presentation(pres)?;
            let theta = linearized_alexander_matrix(&p)?;
            let entries: Vec<Vec<Vec<String>>> = theta
                .coeffs
                .iter()
                .map(|row| row.iter().map(|e| bigints(e)).collect())
                .collect();
            Ok(json!({
                "rows": theta.rows,
                "cols": theta.cols,
                "nvars": theta.nvars,
                "coefficients": entries,
            }))
        }
    }
}

fn toric_cmd(tc: &ToricCmd, caps: &Caps) -> Result<Value, Error> {
    match tc {
        ToricCmd::Loci {
            complex,
            i,
            d,
            kind,
            prime,
        } => {
            let l = parse_complex(complex)?;
            let kind = match kind {
                CliLocusKind::Characteristic => LocusKind::Characteristic,
                CliLocusKind::Resonance => LocusKind::Resonance,
            };
            let coeffs = match prime {
                Some(p) => Coefficients::Fp(*p),
                None => Coefficients::Integer,
            };
            let locus = toric_jump_loci(&l, *i, *d, kind, coeffs, caps.vertex())?;
            Ok(locus_json(&locus))
        }
        ToricCmd::Classify { graph } => {
            let g = parse_graph(graph)?;
            let c = raag_classify(&g);
            Ok(json!({
                "quasi_kahler": c.quasi_kahler,
                "partition": c.partition,
                "kahler": c.kahler,
            }))
        }
        ToricCmd::Sigma { graph, q } => {
            let g = parse_graph(graph)?;
            let report = raag_sigma_complement(&g, *q, caps.vertex())?;
            Ok(json!({
                "complement": locus_json(&report.locus),
                "torsion_condition_holds": report.torsion_condition_holds,
            }))
        }
        ToricCmd::DeltaStatus { graph } => {
            let g = parse_graph(graph)?;
            let status = raag_delta_status(&g, caps.minor())?;
            Ok(json!({
                "connectivity": status.connectivity,
                "has_cut_vertex": status.has_cut_vertex,
                "delta_nonconstant": status.delta_nonconstant,
                "agrees": status.agrees,
            }))
        }
    }
}

fn arr_cmd(ac: &ArrCmd, caps: &Caps) -> Result<Value, Error> {
    match ac {
        ArrCmd::Lattice { arr } => {
            let lat = parse_arrangement(arr)?;
            let cup = os2_structure(&lat)?;
            Ok(json!({
                "n": lat.n,
                "multiple_points": one_based_sets(&lat.points),
                "parallel_classes": one_based_lists(&lat.parallel_classes),
                "b1": cup.b1,
                "b2": cup.b2,
            }))
        }
        ArrCmd::Resonance { arr, extras, seed } => {
            let lat = parse_arrangement(arr)?;
            let extra_subspaces = match extras {
                Some(text) => parse_extras(text, lat.n)?,
                None => Vec::new(),
            };
            let report = resonance_components(&lat, &extra_subspaces, *seed)?;
            let components: Vec<Value> = report
                .components
                .iter()
                .map(|c| {
                    let (kind, support): (&str, Option<Vec<usize>>) = match &c.kind {
                        ComponentKind::Local(j) => {
                            ("local", Some(j.iter().map(|&l| l + 1).collect()))
                        }
                        ComponentKind::Parallel(j) => {
                            ("parallel", Some(j.iter().map(|&l| l + 1).collect()))
                        }
                        ComponentKind::Supplied => ("supplied", None),
                    };
                    json!({
                        "kind": kind,
                        "lines": support,
                        "dim": c.dim,
                        "normals": matrix_strings(c.subspace.normal_matrix()),
                        "verified": c.verified,
                    })
                })
                .collect();
            Ok(json!({
                "components": components,
                "all_verified": report.all_verified,
            }))
        }
        ArrCmd::Classify { arr } => {
            let lat = parse_arrangement(arr)?;
            let c = arr_classify(&lat);
            Ok(json!({
                "free_group": c.free_group,
                "kahler_group": c.kahler_group,
                "raag": c.raag,
                "type_am": c.type_am,
            }))
        }
        ArrCmd::Alex { arr } => {
            let lat = parse_arrangement(arr)?;
            let report = arr_alex_poly(&lat);
            let class = match report.class {
                AlexClass::Pencil => json!({ "kind": "pencil" }),
                AlexClass::NearPencil { transverse } => {
                    json!({ "kind": "near_pencil", "transverse": transverse + 1 })
                }
                AlexClass::Other => json!({ "kind": "other" }),
            };
            Ok(json!({
                "class": class,
                "delta": report.delta.as_ref().map(render),
            }))
        }
        ArrCmd::MilnorB1 {
            pres,
            meridians,
            exponents,
            degrees,
            prime,
        } => {
            let p = parse_presentation(pres)?;
            let mer = parse_generator_list(&p, meridians)?;
            let exps: Vec<u64> = parse_int_list(exponents)?
                .into_iter()
                .map(|x| u64::try_from(x).map_err(|_| Error::Invalid("negative exponent".into())))
                .collect::<Result<_, _>>()?;
            let degs: Vec<u64> = parse_int_list(degrees)?
                .into_iter()
                .map(|x| u64::try_from(x).map_err(|_| Error::Invalid("negative degree".into())))
                .collect::<Result<_, _>>()?;
            let pu = projective_quotient(&p, &mer, &degs)?;
            let b1 = milnor_b1(&pu, &mer, &exps, &degs, *prime)?;
            Ok(json!({ "b1": b1, "prime": prime }))
        }
        ArrCmd::Boundary {
            arr,
            projectivize: proj,
        } => {
            let mut lat = parse_arrangement(arr)?;
            if *proj {
                lat = projectivize(&lat);
            }
            let inv = boundary_invariants(&lat)?;
            let _ = caps;
            let vertices: Vec<Value> = inv
                .graph
                .vertices
                .iter()
                .map(|v| {
                    json!({
                        "label": v.label,
                        "lines": v.lines.iter().map(|&l| l + 1).collect::<Vec<_>>(),
                        "degree": v.degree,
                    })
                })
                .collect();
            Ok(json!({
                "graph": { "vertices": vertices, "edges": inv.graph.edges },
                "class": match inv.class {
                    BoundaryClass::Pencil => "pencil",
                    BoundaryClass::NearPencil => "near_pencil",
                    BoundaryClass::Other => "other",
                },
                "essential": inv.essential,
                "delta": inv.delta.as_ref().map(render),
                "v1": one_based_lists(&inv.v1),
                "r1": inv.r1,
                "manifold": inv.manifold,
            }))
        }
    }
}

// ---------------------------------------------------------------------------
// Input parsing
// ---------------------------------------------------------------------------

/// "x1=3,x2=1" against the presentation's generator list, in generator order.
fn parse_assignments(p: &GroupPresentation, text: &str) -> Result<Vec<u64>, Error> {
    let mut values = vec![None; p.ngens()];
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (name, val) = piece
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected name=value, got `{piece}`")))?;
        let idx = p.generator_index(name.trim())?;
        let v: u64 = val
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad value `{val}`")))?;
        values[idx] = Some(v);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Invalid(format!("missing value for generator {}", p.generators[i]))))
        .collect()
}

fn parse_generator_list(p: &GroupPresentation, text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|name| p.generator_index(name.trim()))
        .collect()
}

fn parse_int_list(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad integer `{x}`")))
        })
        .collect()
}

fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, Error> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad rational `{x}`")))
        })
        .collect()
}

fn json_input(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad JSON: {e}")))
}

fn json_usize(v: &Value, what: &str) -> Result<usize, Error> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Invalid(format!("{what} must be a nonnegative integer")))
}

/// 1-based vertex lists from JSON arrays.
fn json_subsets(v: &Value, n: usize, what: &str) -> Result<Vec<Vec<usize>>, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("{what} must be an array")))?;
    arr.iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Invalid(format!("{what} entries must be arrays")))?;
            row.iter()
                .map(|x| {
                    let k = json_usize(x, what)?;
                    if k == 0 || k > n {
                        return Err(Error::Invalid(format!(
                            "{what} vertex {k} out of range 1..={n}"
                        )));
                    }
                    Ok(k - 1)
                })
                .collect()
        })
        .collect()
}

fn parse_graph(text: &str) -> Result<Graph, Error> {
    let v = json_input(text)?;
    let n = json_usize(
        v.get("n").ok_or_else(|| Error::Invalid("graph needs `n`".into()))?,
        "n",
    )?;
    let edges = match v.get("edges") {
        Some(e) => json_subsets(e, n, "edges")?,
        None => Vec::new(),
    };
    let pairs: Vec<(usize, usize)> = edges
        .iter()
        .map(|e| {
            if e.len() != 2 {
                return Err(Error::Invalid("each edge needs two vertices".into()));
            }
            Ok((e[0], e[1]))
        })
        .collect::<Result<_, _>>()?;
    Graph::with_default_labels(n, &pairs)
}

fn parse_complex(text: &str) -> Result<SimplicialComplex, Error> {
    let v = json_input(text)?;
    let n = json_usize(
        v.get("n").ok_or_else(|| Error::Invalid("complex needs `n`".into()))?,
        "n",
    )?;
    let facets: Vec<BTreeSet<usize>> = match v.get("facets") {
        Some(f) => json_subsets(f, n, "facets")?
            .into_iter()
            .map(|f| f.into_iter().collect())
            .collect(),
        None => Vec::new(),
    };
    let labels = (1..=n).map(|i| format!("x{i}")).collect();
    SimplicialComplex::from_facets(labels, facets)
}

/// Either {"lines":[["1","0","0"],...]} with rational coefficients of
/// a*x + b*y + c = 0, or {"combinatorics":{"n":..,"multiple_points":[..],
/// "parallel_classes":[..]}} with 1-based line indices.
fn parse_arrangement(text: &str) -> Result<IntersectionLattice, Error> {
    let v = json_input(text)?;
    if let Some(lines) = v.get("lines") {
        let rows = lines
            .as_array()
            .ok_or_else(|| Error::Invalid("`lines` must be an array".into()))?;
        let mut parsed = Vec::new();
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Invalid("each line must be an array [a,b,c]".into()))?;
            if row.len() != 3 {
                return Err(Error::Invalid("each line needs coefficients [a,b,c]".into()));
            }
            let mut coeffs: Vec<BigRational> = Vec::with_capacity(3);
            for x in row {
                let s = match x {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(Error::Invalid("line coefficients must be rationals".into())),
                };
                coeffs.push(
                    s.parse()
                        .map_err(|_| Error::Invalid(format!("bad rational `{s}`")))?,
                );
            }
            parsed.push([coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()]);
        }
        return intersection_lattice(&LineArrangement { lines: parsed });
    }
    if let Some(c) = v.get("combinatorics") {
        let n = json_usize(
            c.get("n").ok_or_else(|| Error::Invalid("combinatorics needs `n`".into()))?,
            "n",
        )?;
        let points: Vec<BTreeSet<usize>> = match c.get("multiple_points") {
            Some(p) => json_subsets(p, n, "multiple_points")?
                .into_iter()
                .map(|p| p.into_iter().collect())
                .collect(),
            None => Vec::new(),
        };
        let classes = match c.get("parallel_classes") {
            Some(p) => json_subsets(p, n, "parallel_classes")?,
            None => Vec::new(),
        };
        return IntersectionLattice::from_combinatorics(n, &points, &classes);
    }
    Err(Error::Invalid(
        "arrangement needs `lines` or `combinatorics`".into(),
    ))
}

/// Extra resonance components as an array of normal matrices.
fn parse_extras(text: &str, n: usize) -> Result<Vec<RationalSubspace>, Error> {
    let v = json_input(text)?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("extras must be an array of normal matrices".into()))?;
    arr.iter()
        .map(|m| {
            let rows = m
                .as_array()
                .ok_or_else(|| Error::Invalid("each extra must be a matrix".into()))?;
            let normals: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Invalid("matrix rows must be arrays".into()))?
                        .iter()
                        .map(|x| {
                            x.as_i64()
                                .ok_or_else(|| Error::Invalid("normals must be integers".into()))
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            RationalSubspace::from_normals_i64(n, &normals)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

fn one_based_sets(sets: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    sets.iter()
        .map(|s| s.iter().map(|&x| x + 1).collect())
        .collect()
}

fn one_based_lists(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    lists
        .iter()
        .map(|l| l.iter().map(|&x| x + 1).collect())
        .collect()
}

fn bigints(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn matrix_strings(m: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    m.iter().map(|row| bigints(row)).collect()
}

fn subspace_json(s: &RationalSubspace) -> Value {
    json!({
        "dim": s.dim(),
        "normals": matrix_strings(s.normal_matrix()),
        "basis": matrix_strings(&s.basis()),
    })
}

fn arrangement_json(a: &SubspaceArrangement) -> Value {
    let members: Vec<Value> = a.members().iter().map(subspace_json).collect();
    json!({
        "ambient": a.ambient(),
        "empty": a.is_empty(),
        "full": a.members().iter().any(|s| s.is_full()),
        "members": members,
    })
}

fn locus_json(l: &CoordinateLocusSet) -> Value {
    let subsets: Vec<Vec<String>> = l
        .subsets
        .iter()
        .map(|w| w.iter().map(|&v| l.labels[v].clone()).collect())
        .collect();
    json!({
        "kind": match l.kind {
            LocusKind::Characteristic => "characteristic",
            LocusKind::Resonance => "resonance",
        },
        "labels": l.labels,
        "subsets": subsets,
    })
}

fn emit(format: Format, report: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", report, &mut lines);
            for line in lines {
                println!("{line}");
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, val, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let joined: Vec<String> = items.iter().map(scalar_text).collect();
                out.push(format!("{prefix}: [{}]", joined.join(", ")));
            } else {
                for (i, item) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{i}]"), item, out);
                }
            }
        }
        _ => out.push(format!("{prefix}: {}", scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}
