//! `birkhoff`: run one verification and print its report as JSON.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage or input error, 3 precondition
//! violated. Reports go to stdout, diagnostics to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use birkhoff_core::birkhoff::{
    decompose_symmetry, verify_intersection_table, verify_symmetry_group, verify_transformation_law,
};
use birkhoff_core::cdlattice::{cd_lattice_bounded, verify_sn_cent_est};
use birkhoff_core::format::{parse_alpha, parse_group_file, parse_points, MatrixGroupDocument, PolytopeDocument};
use birkhoff_core::gamma::{normalizer_in_full_symmetric, regular_pairs_report, verify_wreath_quotient};
use birkhoff_core::groups::{display_name, named_group};
use birkhoff_core::hull::facet_enumeration;
use birkhoff_core::perm::{Permutation, PermutationGroup, DEFAULT_SUBGROUP_BOUND};
use birkhoff_core::reppoly::{
    c6_exceptional_document, default_catalog, matrix_closure, representation_polytope, uniqueness_check,
    verify_gamma_acts, CatalogEntry, DEFAULT_MATRIX_GROUP_BOUND,
};
use birkhoff_core::Error;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "birkhoff", version, about = "Exact checks on Birkhoff and representation polytopes")]
struct Cli {
    /// Emit JSON (the only output format; accepted for explicitness).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GroupArg {
    /// Built-in name (s3, s4, s5, c2, c3, c4, c6, v4, d4, q8) or a group file.
    #[arg(long)]
    group: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection sizes |A_ij ∩ A_kl| for all index quadruples.
    VerifyTable { n: usize },
    /// σ A_ij τ⁻¹ = A_{τ(i),σ(j)} for all σ, τ, and A_ij⁻¹ = A_ji.
    VerifyTransform { n: usize },
    /// Combinatorial automorphism group of B_n and its decomposition.
    VerifySymmetryGroup { n: usize },
    /// Write a vertex permutation of B_n as π ↦ σ π^ε τ.
    Decompose {
        n: usize,
        /// File with n! images, one per line.
        alpha_file: Option<PathBuf>,
        #[arg(long, conflicts_with = "alpha_file")]
        alpha: Option<PathBuf>,
        /// Decompose the identity.
        #[arg(long, conflicts_with_all = ["alpha_file", "alpha"])]
        identity: bool,
    },
    /// Chermak-Delgado lattice of a group.
    CdLattice {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_BOUND)]
        bound: usize,
    },
    /// |U||C(U)| ≤ n! over all subgroups U of S_n.
    SnCentEst {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_BOUND)]
        bound: usize,
    },
    /// Order of Γ(G) against 2|G|²/|Z(G)|.
    Wreath {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Commuting pairs of regular subgroups of Γ(G).
    RegularPairs {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Normalizer of Γ(G) in Sym(G) against Aut(G)·Γ(G).
    Normalizer {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Compare catalog representation polytopes with B_n.
    Uniqueness {
        n: usize,
        /// Extra matrix-group files to compare.
        #[arg(long)]
        entry: Vec<PathBuf>,
    },
    /// Facets of the convex hull of a point file.
    Hull { file: PathBuf },
    /// Representation polytope of a matrix-group file (default: the shipped
    /// C6 example) and the action of Γ(G) on it.
    RepPolytope {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MATRIX_GROUP_BOUND)]
        bound: usize,
    },
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    inputs: Value,
    pass: bool,
    details: Value,
    runtime_ms: u128,
}

/// Failures that end a run before a report exists.
enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            e => Failure::Core(e),
        }
    }
}

type Outcome = Result<(bool, Value), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn resolve_group(arg: &GroupArg) -> Result<(PermutationGroup, String), Failure> {
    if let Some(g) = named_group(&arg.group) {
        return Ok((g, display_name(&arg.group)));
    }
    let path = Path::new(&arg.group);
    if !path.exists() {
        return Err(Failure::Usage(format!(
            "unknown group {:?}: not a built-in name and no such file",
            arg.group
        )));
    }
    Ok((parse_group_file(&read(path)?)?, arg.group.clone()))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn reported<T: Serialize>(pass: bool, x: &T) -> Outcome {
    Ok((pass, to_value(x)))
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::VerifyTable { n } => {
            let r = verify_intersection_table(*n)?;
            reported(r.pass, &r)
        }
        Command::VerifyTransform { n } => {
            let r = verify_transformation_law(*n)?;
            reported(r.pass, &r)
        }
        Command::VerifySymmetryGroup { n } => {
            let r = verify_symmetry_group(*n)?;
            reported(r.pass, &r)
        }
        Command::Decompose {
            n,
            alpha_file,
            alpha,
            identity,
        } => {
            let count: usize = (1..=*n).product();
            let alpha = match (alpha_file.as_ref().or(alpha.as_ref()), identity) {
                (Some(path), _) => parse_alpha(&read(path)?, count)?,
                (None, true) => Permutation::identity(count),
                (None, false) => return Err(Failure::Usage("decompose needs an alpha file or --identity".into())),
            };
            match decompose_symmetry(*n, &alpha) {
                Ok(d) => Ok((
                    true,
                    json!({
                        "sigma": d.sigma.images(),
                        "tau": d.tau.images(),
                        "epsilon": d.epsilon,
                        "sigma_cycles": d.sigma.to_string(),
                        "tau_cycles": d.tau.to_string(),
                    }),
                )),
                Err(e @ (Error::NotAFacetSymmetry(_) | Error::Inconsistent(_))) => {
                    Ok((false, json!({ "failure": e.to_string(), "alpha": alpha.images() })))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::CdLattice { group, bound } => {
            let (g, name) = resolve_group(group)?;
            let r = cd_lattice_bounded(&g, &name, *bound)?;
            let labels: Vec<&str> = r.lattice.iter().map(|m| m.label.as_str()).collect();
            let mut details = to_value(&r);
            details["lattice_labels"] = json!(labels);
            Ok((r.pass, details))
        }
        Command::SnCentEst { n, bound } => {
            let r = verify_sn_cent_est(*n, *bound)?;
            reported(r.pass, &r)
        }
        Command::Wreath { group } => {
            let (g, name) = resolve_group(group)?;
            let r = verify_wreath_quotient(&g, &name)?;
            reported(r.pass, &r)
        }
        Command::RegularPairs { group } => {
            let (g, name) = resolve_group(group)?;
            let r = regular_pairs_report(&g, &name)?;
            reported(r.pass, &r)
        }
        Command::Normalizer { group } => {
            let (g, name) = resolve_group(group)?;
            let r = normalizer_in_full_symmetric(&g, &name)?;
            reported(r.pass, &r)
        }
        Command::Uniqueness { n, entry } => {
            let mut catalog = default_catalog(*n)?;
            for path in entry {
                let doc = MatrixGroupDocument::parse(&read(path)?)?;
                catalog.push(CatalogEntry::from_document(&doc, None)?);
            }
            let r = uniqueness_check(*n, &catalog)?;
            reported(r.pass, &r)
        }
        Command::Hull { file } => {
            let points = parse_points(&read(file)?)?;
            let p = facet_enumeration(&points)?;
            let mut details = to_value(&PolytopeDocument::from(&p));
            details["all_points_are_vertices"] = json!(p.points_are_vertices());
            Ok((true, details))
        }
        Command::RepPolytope { file, bound } => {
            let doc = match file {
                Some(path) => MatrixGroupDocument::parse(&read(path)?)?,
                None => c6_exceptional_document(),
            };
            let m = matrix_closure(&doc.matrices()?, *bound)?;
            if let Some(k) = doc.order.filter(|&k| k != m.order()) {
                return Err(Error::Unfaithful(format!("generators close to order {}, expected {k}", m.order())).into());
            }
            let polytope = representation_polytope(&m)?;
            let gamma = verify_gamma_acts(&m)?;
            Ok((
                gamma.pass,
                json!({
                    "name": doc.name,
                    "order": m.order(),
                    "polytope": to_value(&PolytopeDocument::from(&polytope)),
                    "gamma_action": to_value(&gamma),
                }),
            ))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyTable { .. } => "verify-table",
        Command::VerifyTransform { .. } => "verify-transform",
        Command::VerifySymmetryGroup { .. } => "verify-symmetry-group",
        Command::Decompose { .. } => "decompose",
        Command::CdLattice { .. } => "cd-lattice",
        Command::SnCentEst { .. } => "sn-cent-est",
        Command::Wreath { .. } => "wreath",
        Command::RegularPairs { .. } => "regular-pairs",
        Command::Normalizer { .. } => "normalizer",
        Command::Uniqueness { .. } => "uniqueness",
        Command::Hull { .. } => "hull",
        Command::RepPolytope { .. } => "rep-polytope",
    }
}

fn inputs(c: &Command) -> Value {
    match c {
        Command::VerifyTable { n } | Command::VerifyTransform { n } | Command::VerifySymmetryGroup { n } => {
            json!({ "n": n })
        }
        Command::Decompose {
            n,
            alpha_file,
            alpha,
            identity,
        } => json!({ "n": n, "alpha": alpha_file.as_ref().or(alpha.as_ref()), "identity": identity }),
        Command::CdLattice { group, bound } => json!({ "group": group.group, "bound": bound }),
        Command::SnCentEst { n, bound } => json!({ "n": n, "bound": bound }),
        Command::Wreath { group } | Command::RegularPairs { group } | Command::Normalizer { group } => {
            json!({ "group": group.group })
        }
        Command::Uniqueness { n, entry } => json!({ "n": n, "entries": entry }),
        Command::Hull { file } => json!({ "file": file }),
        Command::RepPolytope { file, bound } => json!({ "file": file, "bound": bound }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli.command);
    let (pass, details, code) = match outcome {
        Ok((pass, details)) => (pass, details, if pass { 0 } else { 1 }),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            (false, json!({ "failure": e.to_string() }), 3)
        }
    };
    let report = Report {
        command: command_name(&cli.command),
        inputs: inputs(&cli.command),
        pass,
        details,
        runtime_ms: start.elapsed().as_millis(),
    };
    // A closed pipe downstream is not an error of the check itself.
    let mut out = std::io::stdout().lock();
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    let _ = writeln!(out, "{text}");
    ExitCode::from(code)
}
