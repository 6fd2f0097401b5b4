//! Command-line front end: class groups, affine class groups, divisor
//! classification, catalog lookups, and oracle cross-checks over ring
//! description files.

mod input;

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use divclass::catalog;
use divclass::lattice::FGAbelianGroup;
use divclass::monoid::MonoidRing;
use divclass::oracle::{
    oracle_cross_model, oracle_effective_supports, oracle_hyperbola_strong, oracle_is_coaffine,
    oracle_realizable_supports, BoxBound,
};

use input::{load_ring, parse_divisor, Ring};

#[derive(Parser)]
#[command(
    name = "divclass",
    about = "Divisor class groups, affine class groups, and coaffineness tests \
             for monoid rings and hyperbola rings",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a stable machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the divisor class group of a ring
    Cl {
        ring: PathBuf,
        /// Also list the canonical facet order that indexes divisors
        #[arg(long)]
        verbose: bool,
    },
    /// Print the affine class group of a ring
    Acl { ring: PathBuf },
    /// Classify a divisor: coaffine, strongly coaffine, affine trivial
    Coaffine {
        ring: PathBuf,
        /// Comma-separated coefficients: facet order for monoid rings
        /// (printed by `cl --verbose`), exponent order for hyperbolas
        #[arg(long)]
        divisor: String,
    },
    /// Report whether a monoid ring is simplicial
    Simplicial { ring: PathBuf },
    /// Closed-form catalog entries
    Catalog {
        #[command(subcommand)]
        entry: CatalogEntry,
    },
    /// Compare production decisions against enumeration oracles
    Oracle {
        ring: PathBuf,
        /// Enumeration box bound (and multiple bound for hyperbolas)
        #[arg(long, default_value_t = 8)]
        bound: u32,
        /// Optional divisor to cross-check
        #[arg(long)]
        divisor: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogEntry {
    /// Generic determinantal ring: m x n matrix, k-minors
    Detring {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

enum CliError {
    Validation(String),
    Disagreement(String),
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                0
            } else {
                1
            };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(CliError::Validation(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(CliError::Disagreement(message)) => {
            eprintln!("disagreement: {message}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Cl { ring, verbose } => cmd_cl(ring, *verbose, cli.json),
        Command::Acl { ring } => cmd_acl(ring, cli.json),
        Command::Coaffine { ring, divisor } => cmd_coaffine(ring, divisor, cli.json),
        Command::Simplicial { ring } => cmd_simplicial(ring, cli.json),
        Command::Catalog {
            entry: CatalogEntry::Detring { m, n, k },
        } => cmd_detring(*m, *n, *k, cli.json),
        Command::Oracle {
            ring,
            bound,
            divisor,
        } => cmd_oracle(ring, *bound, divisor.as_deref(), cli.json),
    }
}

fn load(path: &Path) -> Result<(Ring, String), CliError> {
    let (ring, canonical) = load_ring(path).map_err(CliError::Validation)?;
    let hash = format!("fnv1a64:{:016x}", fnv1a64(canonical.as_bytes()));
    Ok((ring, hash))
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn group_json(g: &FGAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion_invariants().iter().map(int_json).collect::<Vec<_>>(),
        "text": g.to_string(),
    })
}

fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn report_header(command: &str, kind: &str, hash: &str) -> Value {
    json!({
        "schema": input::SCHEMA_VERSION,
        "command": command,
        "kind": kind,
        "input_hash": hash,
    })
}

fn emit(mut header: Value, payload: Value) {
    let map = header.as_object_mut().expect("header is an object");
    for (k, v) in payload.as_object().expect("payload is an object") {
        map.insert(k.clone(), v.clone());
    }
    println!("{header}");
}

fn print_facets(ring: &MonoidRing) {
    println!("facets (canonical order):");
    for (i, normal) in ring.cone().facet_normals().iter().enumerate() {
        println!("  {}: normal {}", i + 1, fmt_vec(normal));
    }
}

fn cmd_cl(path: &Path, verbose: bool, as_json: bool) -> Result<(), CliError> {
    let (ring, hash) = load(path)?;
    let (cl, extra) = match &ring {
        Ring::Monoid(m) => (
            m.class_group(),
            json!({
                "lattice_rank": m.lattice_rank(),
                "facet_normals": m.cone().facet_normals().iter()
                    .map(|n| vec_json(n)).collect::<Vec<_>>(),
            }),
        ),
        Ring::Hyperbola(h) => (
            h.class_group(),
            json!({ "exponents": vec_json(h.exponents()) }),
        ),
        Ring::Determinantal(d) => (
            catalog::determinantal_report(d).class_group,
            json!({ "m": d.m, "n": d.n, "k": d.k }),
        ),
    };
    if as_json {
        let mut payload = json!({ "class_group": group_json(&cl) });
        merge(&mut payload, extra);
        emit(report_header("cl", ring.kind(), &hash), payload);
    } else {
        if verbose {
            match &ring {
                Ring::Monoid(m) => print_facets(m),
                Ring::Hyperbola(h) => println!("exponents: d = {}", fmt_vec(h.exponents())),
                Ring::Determinantal(_) => {}
            }
        }
        println!("Cl = {cl}");
    }
    Ok(())
}

fn cmd_acl(path: &Path, as_json: bool) -> Result<(), CliError> {
    let (ring, hash) = load(path)?;
    match &ring {
        Ring::Monoid(m) => {
            let acl = m.affine_class_group();
            if as_json {
                emit(
                    report_header("acl", ring.kind(), &hash),
                    json!({ "affine_class_group": group_json(&acl) }),
                );
            } else {
                println!("ACl = {acl}");
            }
        }
        Ring::Hyperbola(h) if h.base_is_local() => {
            let acl = h.affine_class_group_local().map_err(validation)?;
            if as_json {
                emit(
                    report_header("acl", ring.kind(), &hash),
                    json!({ "affine_class_group": group_json(&acl) }),
                );
            } else {
                println!("ACl = {acl}");
            }
        }
        Ring::Hyperbola(h) => {
            // non-local base: only the vanishing criterion is available
            let vanishes = h.acl_vanishes_nonlocal().map_err(validation)?;
            if as_json {
                emit(
                    report_header("acl", ring.kind(), &hash),
                    json!({ "acl_vanishes": vanishes }),
                );
            } else if vanishes {
                println!("ACl = 0 (all pairs of base primes are comaximal)");
            } else {
                println!("ACl != 0 (some pair of base primes is not comaximal; the group is not determined by this datum)");
            }
        }
        Ring::Determinantal(d) => {
            let acl = catalog::determinantal_report(d).affine_class_group;
            if as_json {
                emit(
                    report_header("acl", ring.kind(), &hash),
                    json!({ "affine_class_group": group_json(&acl) }),
                );
            } else {
                println!("ACl = {acl}");
            }
        }
    }
    Ok(())
}

fn cmd_coaffine(path: &Path, divisor: &str, as_json: bool) -> Result<(), CliError> {
    let (ring, hash) = load(path)?;
    match &ring {
        Ring::Monoid(m) => {
            let coeffs = parse_divisor(divisor, m.facet_count()).map_err(CliError::Validation)?;
            let n = m.divisor(coeffs).map_err(validation)?;
            let obstruction = m.coaffine_obstruction(&n);
            let coaffine = obstruction.is_none();
            let principal_multiple = m.principal_multiple(&n);
            let trivial = principal_multiple.is_some();
            if as_json {
                emit(
                    report_header("coaffine", ring.kind(), &hash),
                    json!({
                        "divisor": vec_json(n.coefficients()),
                        "coaffine": coaffine,
                        "strongly_coaffine": trivial,
                        "affine_trivial": trivial,
                        "principal_multiple": principal_multiple.as_ref().map(int_json),
                        "obstruction": obstruction.as_ref().map(|(s, gamma)| json!({
                            "support": s.indices().map(|i| i + 1).collect::<Vec<_>>(),
                            "shift_monomial": vec_json(gamma),
                        })),
                    }),
                );
            } else {
                println!(
                    "coaffine: {coaffine}, strongly coaffine: {trivial}, affine trivial: {trivial}"
                );
                if let Some((s, gamma)) = &obstruction {
                    let facets: Vec<String> = s.indices().map(|i| (i + 1).to_string()).collect();
                    println!(
                        "  witness: shifting by the monomial {} gives an effective representative with support {{{}}}, which is not the support of any monomial",
                        fmt_vec(gamma),
                        facets.join(", ")
                    );
                }
                if let Some(k) = &principal_multiple {
                    println!("  witness: {k} * divisor is principal");
                }
            }
        }
        Ring::Hyperbola(h) => {
            let coeffs = parse_divisor(divisor, h.rank()).map_err(CliError::Validation)?;
            let n = h.divisor(coeffs).map_err(validation)?;
            let coaffine = h.is_coaffine(&n).map_err(validation)?;
            let trivial = h.is_affine_trivial(&n).map_err(validation)?;
            let principal_multiple = h.principal_multiple(&n).map_err(validation)?;
            let shift = h.coaffine_shift(&n).map_err(validation)?;
            if as_json {
                emit(
                    report_header("coaffine", ring.kind(), &hash),
                    json!({
                        "divisor": vec_json(n.coefficients()),
                        "coaffine": coaffine,
                        "strongly_coaffine": trivial,
                        "affine_trivial": trivial,
                        "principal_multiple": principal_multiple.as_ref().map(int_json),
                        "interior_shift": shift.as_ref().map(int_json),
                    }),
                );
            } else {
                println!(
                    "coaffine: {coaffine}, strongly coaffine: {trivial}, affine trivial: {trivial}"
                );
                if h.is_principal(&n) {
                    println!("  witness: the divisor is principal");
                } else if let Some(k) = &shift {
                    println!(
                        "  witness: subtracting {k} * d moves the class into the open box (0, d)"
                    );
                }
                if let Some(k) = &principal_multiple {
                    println!("  witness: {k} * divisor is principal");
                }
            }
        }
        Ring::Determinantal(_) => {
            return Err(CliError::Validation(
                "divisor classification is not modeled for determinantal rings".into(),
            ))
        }
    }
    Ok(())
}

fn cmd_simplicial(path: &Path, as_json: bool) -> Result<(), CliError> {
    let (ring, hash) = load(path)?;
    let Ring::Monoid(m) = &ring else {
        return Err(CliError::Validation(
            "simplicial applies to monoid rings only".into(),
        ));
    };
    let simplicial = m.is_simplicial();
    if as_json {
        emit(
            report_header("simplicial", ring.kind(), &hash),
            json!({
                "simplicial": simplicial,
                "facet_count": m.facet_count(),
                "lattice_rank": m.lattice_rank(),
                "acl_vanishes": m.acl_vanishes(),
            }),
        );
    } else {
        println!(
            "simplicial: {simplicial} (facets {}, lattice rank {})",
            m.facet_count(),
            m.lattice_rank()
        );
    }
    Ok(())
}

fn cmd_detring(m: u64, n: u64, k: u64, as_json: bool) -> Result<(), CliError> {
    let datum = catalog::DeterminantalDatum::new(m, n, k).map_err(validation)?;
    let report = catalog::determinantal_report(&datum);
    if as_json {
        emit(
            report_header("catalog detring", "determinantal", ""),
            json!({
                "m": m, "n": n, "k": k,
                "dimension": report.dimension,
                "ideal_height": report.ideal_height,
                "class_group": group_json(&report.class_group),
                "affine_class_group": group_json(&report.affine_class_group),
                "witness_height": report.witness_height,
                "notes": report.notes,
            }),
        );
    } else {
        println!(
            "dim {}, height {}, Cl = ACl = {}",
            report.dimension, report.ideal_height, report.class_group
        );
        println!("witness height: {}", report.witness_height);
        println!("{}", report.notes);
    }
    Ok(())
}

struct OracleCheck {
    name: String,
    production: String,
    enumeration: String,
    agree: bool,
}

fn cmd_oracle(
    path: &Path,
    bound: u32,
    divisor: Option<&str>,
    as_json: bool,
) -> Result<(), CliError> {
    if bound < 1 {
        return Err(CliError::Validation("bound must be at least 1".into()));
    }
    let (ring, hash) = load(path)?;
    let mut checks: Vec<OracleCheck> = Vec::new();

    match &ring {
        Ring::Monoid(m) => {
            let b = BoxBound::new(bound);
            let r = m.facet_count();
            let enumerated = oracle_realizable_supports(m, b);
            let decided: std::collections::BTreeSet<_> = (0..(1u64 << r))
                .map(|mask| (0..r).filter(|i| mask & (1 << i) != 0).collect())
                .filter(|s| m.is_realizable_support(s))
                .collect();
            checks.push(OracleCheck {
                name: "realizable supports".into(),
                production: format!("{} patterns", decided.len()),
                enumeration: format!("{} patterns", enumerated.len()),
                agree: decided == enumerated,
            });
            if let Some(text) = divisor {
                let coeffs = parse_divisor(text, r).map_err(CliError::Validation)?;
                let n = m.divisor(coeffs).map_err(validation)?;
                let produced = m.effective_supports(&n);
                let enumerated = oracle_effective_supports(m, &n, b);
                checks.push(OracleCheck {
                    name: format!("effective supports of {}", fmt_vec(n.coefficients())),
                    production: format!("{} patterns", produced.len()),
                    enumeration: format!("{} patterns", enumerated.len()),
                    agree: produced == enumerated,
                });
                let fast = m.is_coaffine(&n);
                let slow = oracle_is_coaffine(m, &n, b);
                checks.push(OracleCheck {
                    name: format!("coaffine for {}", fmt_vec(n.coefficients())),
                    production: fast.to_string(),
                    enumeration: slow.to_string(),
                    agree: fast == slow,
                });
            }
        }
        Ring::Hyperbola(h) => {
            let report = oracle_cross_model(h).map_err(validation)?;
            checks.push(OracleCheck {
                name: format!("cross-model ({} divisors)", report.divisors_checked),
                production: "formulas".into(),
                enumeration: if report.is_consistent() {
                    "no disagreements".into()
                } else {
                    report.disagreements.join("; ")
                },
                agree: report.is_consistent(),
            });
            if let Some(text) = divisor {
                let coeffs = parse_divisor(text, h.rank()).map_err(CliError::Validation)?;
                let n = h.divisor(coeffs).map_err(validation)?;
                let fast = h.is_strongly_coaffine(&n).map_err(validation)?;
                let slow = oracle_hyperbola_strong(h, &n, bound).map_err(validation)?;
                checks.push(OracleCheck {
                    name: format!(
                        "strong coaffineness for {} over |k| <= {bound}",
                        fmt_vec(n.coefficients())
                    ),
                    production: fast.to_string(),
                    enumeration: slow.to_string(),
                    agree: fast == slow,
                });
            }
        }
        Ring::Determinantal(_) => {
            return Err(CliError::Validation(
                "oracle comparisons are not available for determinantal rings".into(),
            ))
        }
    }

    let agreement = checks.iter().all(|c| c.agree);
    if as_json {
        emit(
            report_header("oracle", ring.kind(), &hash),
            json!({
                "bound": bound,
                "agreement": agreement,
                "checks": checks.iter().map(|c| json!({
                    "name": c.name,
                    "production": c.production,
                    "enumeration": c.enumeration,
                    "agree": c.agree,
                })).collect::<Vec<_>>(),
            }),
        );
    } else {
        for c in &checks {
            println!(
                "{}: production {}, enumeration {}, agree: {}",
                c.name,
                c.production,
                c.enumeration,
                if c.agree { "yes" } else { "NO" }
            );
        }
        println!("agreement: {}", if agreement { "yes" } else { "NO" });
    }
    if agreement {
        Ok(())
    } else {
        Err(CliError::Disagreement(
            "production and oracle paths disagree; see the report above".into(),
        ))
    }
}

fn merge(target: &mut Value, extra: Value) {
    let map = target.as_object_mut().expect("target is an object");
    for (k, v) in extra.as_object().expect("extra is an object") {
        map.insert(k.clone(), v.clone());
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}
