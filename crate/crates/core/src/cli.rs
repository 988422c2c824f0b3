//! Command-line interface.
//!
//! Exit codes: `0` when the requested check holds (or for pure queries),
//! `1` when a check is falsified (the report explains why), `2` for usage
//! and file errors. With `--format structured`, every command emits a
//! single JSON document with sorted keys, so output is byte-stable.

use crate::collapse::{collapse_by_dmf, trace_certifies_point, CollapseError, MorseModel};
use crate::complex::{ComplexError, SymmetricDeltaComplex};
use crate::homology::{betti, reduced_betti, HomologyError};
use crate::io::{self, IoError};
use crate::matching::{
    matching_to_dmf, search_matching, validate_matching, MatchingError, MatchingViolation,
    OrbitHasse,
};
use crate::morse::{validate_dmf, DmfViolation};
use crate::permissibility::{self, NonPermissibleReason, Verdict};
use crate::tropical::{certify_coloop, coloop_matching, enumerate_coloop_complex, TropicalError};
use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "symmorse",
    version,
    about = "Discrete Morse theory on finite symmetric Δ-complexes"
)]
struct Cli {
    /// Output format: human-readable lines or one JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Cap on the dimension for symmetric-group enumeration ((p+1)! elements).
    #[arg(long, global = true)]
    factorial_limit: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check the five relation families of a complex presentation.
    Validate { complex: PathBuf },
    /// List simplex orbits with sizes and automorphism-group orders.
    Orbits { complex: PathBuf },
    /// Report permissibility of codimension-one cover pairs.
    Permissible {
        complex: PathBuf,
        /// Examine one pair in detail (requires --upper).
        #[arg(long, requires = "upper")]
        lower: Option<String>,
        #[arg(long, requires = "lower")]
        upper: Option<String>,
    },
    /// Validate a discrete Morse function and report critical orbits.
    CheckDmf { complex: PathBuf, function: PathBuf },
    /// Extract the level subcomplex at a cutoff value.
    Levels {
        complex: PathBuf,
        function: PathBuf,
        /// Rational cutoff, e.g. `2` or `7/2`.
        #[arg(long)]
        cutoff: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an inclusion-maximal acyclic permissible matching.
    Match {
        complex: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a matching file against the matching conditions.
    MatchCheck { complex: PathBuf, matching: PathBuf },
    /// Convert a valid matching into a discrete Morse function.
    DmfFromMatching {
        complex: PathBuf,
        matching: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay the collapsing sequence of a function or matching.
    Collapse {
        complex: PathBuf,
        #[arg(long, conflicts_with = "matching")]
        dmf: Option<PathBuf>,
        #[arg(long)]
        matching: Option<PathBuf>,
        /// Also require the trace to certify a single point (exit 1 if not).
        #[arg(long)]
        certify: bool,
    },
    /// Rational Betti numbers of the orientable orbit chain complex.
    Homology {
        complex: PathBuf,
        #[arg(long)]
        reduced: bool,
    },
    /// Coloop censuses of tropical cone space.
    #[command(subcommand)]
    Ag(AgCommand),
}

#[derive(Subcommand)]
enum AgCommand {
    /// Enumerate the census for a rank bound and write its complex file.
    Build {
        g: usize,
        /// Acknowledge that rank bound 4 rests on the classification of
        /// regular matroids.
        #[arg(long)]
        allow_g4: bool,
        /// Output path for the complex (default `coloop_g<g>.json`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the census and certify the coloop matching.
    Certify {
        g: usize,
        #[arg(long)]
        allow_g4: bool,
    },
}

enum Failure {
    Usage(String),
    /// The output stream itself failed; nothing further can be reported.
    Write,
}

macro_rules! from_usage {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}
from_usage!(IoError, ComplexError, TropicalError, HomologyError);

impl From<std::io::Error> for Failure {
    fn from(_: std::io::Error) -> Self {
        Failure::Write
    }
}

/// Entry point shared by the binary and the test suite. `argv[0]` is the
/// program name. Everything, including error messages, goes to `out`.
pub fn run<W: Write>(argv: &[String], out: &mut W) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            2
        }
        Err(Failure::Write) => 2,
    }
}

fn emit<W: Write>(out: &mut W, value: &serde_json::Value) -> Result<(), Failure> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("in-memory serialization")
    )?;
    Ok(())
}

fn dispatch<W: Write>(cli: Cli, out: &mut W) -> Result<u8, Failure> {
    let load = |path: &PathBuf| -> Result<SymmetricDeltaComplex, Failure> {
        let mut x = io::read_complex(path)?;
        if let Some(limit) = cli.factorial_limit {
            x.set_factorial_limit(limit);
        }
        Ok(x)
    };
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { complex } => cmd_validate(&load(complex)?, fmt, out),
        Command::Orbits { complex } => cmd_orbits(&load(complex)?, fmt, out),
        Command::Permissible {
            complex,
            lower,
            upper,
        } => match (lower, upper) {
            (Some(l), Some(u)) => cmd_permissible_pair(&load(complex)?, l, u, fmt, out),
            _ => cmd_permissible_list(&load(complex)?, fmt, out),
        },
        Command::CheckDmf { complex, function } => {
            let x = load(complex)?;
            let f = io::read_dmf(function, &x)?;
            cmd_check_dmf(&x, &f, fmt, out)
        }
        Command::Levels {
            complex,
            function,
            cutoff,
            out: dest,
        } => {
            let x = load(complex)?;
            let f = io::read_dmf(function, &x)?;
            let cutoff = BigRational::from_str(cutoff)
                .map_err(|e| Failure::Usage(format!("bad cutoff `{cutoff}`: {e}")))?;
            cmd_levels(&x, &f, &cutoff, dest.as_deref(), fmt, out)
        }
        Command::Match {
            complex,
            seed,
            out: dest,
        } => cmd_match(&load(complex)?, *seed, dest.as_deref(), fmt, out),
        Command::MatchCheck { complex, matching } => {
            let x = load(complex)?;
            let m = io::read_matching(matching, &x)?;
            cmd_match_check(&x, &m, fmt, out)
        }
        Command::DmfFromMatching {
            complex,
            matching,
            out: dest,
        } => {
            let x = load(complex)?;
            let m = io::read_matching(matching, &x)?;
            cmd_dmf_from_matching(&x, &m, dest.as_deref(), fmt, out)
        }
        Command::Collapse {
            complex,
            dmf,
            matching,
            certify,
        } => {
            let x = load(complex)?;
            let trace = match (dmf, matching) {
                (Some(fp), None) => {
                    let f = io::read_dmf(fp, &x)?;
                    collapse_by_dmf(&x, &f)
                }
                (None, Some(mp)) => {
                    let m = io::read_matching(mp, &x)?;
                    let hasse = OrbitHasse::new(&x)?;
                    crate::collapse::collapse_by_matching(&x, &hasse, &m)
                }
                _ => {
                    return Err(Failure::Usage(
                        "pass exactly one of --dmf or --matching".to_string(),
                    ))
                }
            };
            cmd_collapse(trace, *certify, fmt, out)
        }
        Command::Homology { complex, reduced } => cmd_homology(&load(complex)?, *reduced, fmt, out),
        Command::Ag(AgCommand::Build {
            g,
            allow_g4,
            out: dest,
        }) => cmd_ag_build(*g, *allow_g4, dest.as_deref(), fmt, out),
        Command::Ag(AgCommand::Certify { g, allow_g4 }) => cmd_ag_certify(*g, *allow_g4, fmt, out),
    }
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Permissible => "permissible",
        Verdict::NotPermissible(NonPermissibleReason::NoFace) => {
            "not permissible (no gluing injections)"
        }
        Verdict::NotPermissible(NonPermissibleReason::ImagesDiffer) => {
            "not permissible (gluing images differ)"
        }
        Verdict::NotPermissible(NonPermissibleReason::TransferNotBijective) => {
            "not permissible (transfer map is not bijective)"
        }
    }
}

fn dmf_violation_str(v: &DmfViolation) -> String {
    match v {
        DmfViolation::NonIncreasingCover { lower, upper } => format!(
            "value does not strictly increase along the non-permissible cover [{lower}] < [{upper}]"
        ),
        DmfViolation::UpCountExceeded { orbit, count } => {
            format!(
                "orbit [{orbit}] has {count} non-increasing permissible covers (at most 1 allowed)"
            )
        }
        DmfViolation::DownCountExceeded { orbit, count } => {
            format!(
                "orbit [{orbit}] has {count} non-decreasing permissible faces (at most 1 allowed)"
            )
        }
    }
}

fn matching_violation_str(v: &MatchingViolation) -> String {
    match v {
        MatchingViolation::NotACover { lower, upper } => {
            format!("[{lower}] < [{upper}] is not a codimension-one cover pair")
        }
        MatchingViolation::NotPermissible { lower, upper } => {
            format!("[{lower}] < [{upper}] is not permissible")
        }
        MatchingViolation::OrbitReused { orbit } => {
            format!("orbit [{orbit}] appears in more than one pair")
        }
        MatchingViolation::Cycle { orbits } => {
            format!("directed cycle: {}", orbits.join(" -> "))
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_validate<W: Write>(
    x: &SymmetricDeltaComplex,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let report = x.validate();
    let total: usize = (0..=x.max_dim()).map(|d| x.simplex_count(d)).sum();
    if fmt == Format::Structured {
        emit(
            out,
            &json!({
                "valid": report.is_valid(),
                "simplices": total,
                "max_dim": x.max_dim(),
                "violations": report.violations,
            }),
        )?;
    } else {
        writeln!(out, "{total} simplices, top dimension {}", x.max_dim())?;
        for v in &report.violations {
            writeln!(
                out,
                "violation [{}] dim {} at `{}`: {}",
                v.family, v.dim, v.witness, v.detail
            )?;
        }
        if report.is_valid() {
            writeln!(out, "all relation families hold")?;
        } else {
            writeln!(out, "INVALID: {} violations", report.violations.len())?;
        }
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn cmd_orbits<W: Write>(
    x: &SymmetricDeltaComplex,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let orbits = x.all_orbits();
    let mut rows = Vec::new();
    for &o in &orbits {
        let rep = x.orbit_rep(o);
        let members: Vec<&str> = x.orbit_members(o).iter().map(|&s| x.name(s)).collect();
        let aut = x.automorphisms(rep).map_err(Failure::from)?.len();
        rows.push((o.dim, x.name(rep).to_string(), members, aut));
    }
    if fmt == Format::Structured {
        let value: Vec<_> = rows
            .iter()
            .map(|(dim, rep, members, aut)| {
                json!({
                    "dim": dim,
                    "rep": rep,
                    "size": members.len(),
                    "aut_order": aut,
                    "members": members,
                })
            })
            .collect();
        emit(out, &json!(value))?;
    } else {
        for (dim, rep, members, aut) in &rows {
            writeln!(out, "dim {dim}: [{rep}] size {} |Aut| {aut}", members.len())?;
        }
        writeln!(out, "total orbits: {}", rows.len())?;
    }
    Ok(0)
}

fn cmd_permissible_list<W: Write>(
    x: &SymmetricDeltaComplex,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let mut rows = Vec::new();
    for (lo, up) in x.cover_orbit_pairs() {
        let cert = permissibility::is_permissible(x, x.orbit_rep(lo), x.orbit_rep(up))
            .map_err(Failure::from)?;
        rows.push((
            x.orbit_rep_name(lo).to_string(),
            x.orbit_rep_name(up).to_string(),
            cert.verdict,
        ));
    }
    if fmt == Format::Structured {
        let value: Vec<_> = rows
            .iter()
            .map(|(l, u, v)| json!({"lower": l, "upper": u, "verdict": v}))
            .collect();
        emit(out, &json!(value))?;
    } else {
        for (l, u, v) in &rows {
            writeln!(out, "[{l}] < [{u}]: {}", verdict_str(*v))?;
        }
        writeln!(out, "total cover pairs: {}", rows.len())?;
    }
    Ok(0)
}

fn cmd_permissible_pair<W: Write>(
    x: &SymmetricDeltaComplex,
    lower: &str,
    upper: &str,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let ls = x
        .simplex(lower)
        .ok_or_else(|| Failure::Usage(format!("no simplex named `{lower}`")))?;
    let us = x
        .simplex(upper)
        .ok_or_else(|| Failure::Usage(format!("no simplex named `{upper}`")))?;
    let cert = permissibility::is_permissible(x, ls, us).map_err(Failure::from)?;
    if fmt == Format::Structured {
        emit(
            out,
            &json!({
                "lower": lower,
                "upper": upper,
                "gluings": cert.gluings.iter().map(|g| g.values().to_vec()).collect::<Vec<_>>(),
                "common_image": cert.common_image,
                "transfer": cert
                    .transfer
                    .iter()
                    .map(|(a, b)| (a.images().to_vec(), b.images().to_vec()))
                    .collect::<Vec<_>>(),
                "verdict": cert.verdict,
            }),
        )?;
    } else {
        writeln!(
            out,
            "gluings of `{lower}` into `{upper}`: {}",
            cert.gluings.len()
        )?;
        for g in &cert.gluings {
            writeln!(out, "  {:?}", g.values())?;
        }
        match &cert.common_image {
            Some(im) => writeln!(out, "common image: {im:?}")?,
            None => writeln!(out, "common image: none")?,
        }
        for (a, b) in &cert.transfer {
            writeln!(out, "transfer: {:?} -> {:?}", a.images(), b.images())?;
        }
        writeln!(out, "verdict: {}", verdict_str(cert.verdict))?;
    }
    Ok(if cert.is_permissible() { 0 } else { 1 })
}

fn cmd_check_dmf<W: Write>(
    x: &SymmetricDeltaComplex,
    f: &crate::morse::DiscreteMorseFunction,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let report = validate_dmf(x, f).map_err(Failure::from)?;
    let name = |o| x.orbit_rep_name(o).to_string();
    let critical: Vec<String> = report.critical.iter().map(|&o| name(o)).collect();
    let inversions: Vec<(String, String)> = report
        .inversions
        .iter()
        .map(|&(l, u)| (name(l), name(u)))
        .collect();
    if fmt == Format::Structured {
        let counts: std::collections::BTreeMap<String, (usize, usize)> =
            report.counts.iter().map(|(&o, &c)| (name(o), c)).collect();
        emit(
            out,
            &json!({
                "valid": report.is_valid(),
                "violations": report.violations,
                "critical": critical,
                "inversions": inversions,
                "counts": counts,
            }),
        )?;
    } else {
        for (l, u) in &inversions {
            writeln!(out, "inversion: [{l}] < [{u}]")?;
        }
        writeln!(out, "critical orbits: {}", critical.join(", "))?;
        for v in &report.violations {
            writeln!(out, "violation: {}", dmf_violation_str(v))?;
        }
        writeln!(
            out,
            "{}",
            if report.is_valid() {
                "discrete Morse function: VALID"
            } else {
                "discrete Morse function: INVALID"
            }
        )?;
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn cmd_levels<W: Write>(
    x: &SymmetricDeltaComplex,
    f: &crate::morse::DiscreteMorseFunction,
    cutoff: &BigRational,
    dest: Option<&std::path::Path>,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let sub = crate::morse::level_subcomplex(x, f, cutoff);
    let total: usize = if sub.is_empty() {
        0
    } else {
        (0..=sub.max_dim()).map(|d| sub.simplex_count(d)).sum()
    };
    match dest {
        Some(path) => {
            io::write_complex(path, &sub)?;
            if fmt == Format::Structured {
                emit(
                    out,
                    &json!({
                        "cutoff": cutoff.to_string(),
                        "simplices": total,
                        "path": path.display().to_string(),
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "wrote level subcomplex (f <= {cutoff}) with {total} simplices to {}",
                    path.display()
                )?;
            }
        }
        None => write!(out, "{}", io::complex_to_string(&sub))?,
    }
    Ok(0)
}

fn cmd_match<W: Write>(
    x: &SymmetricDeltaComplex,
    seed: u64,
    dest: Option<&std::path::Path>,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let hasse = OrbitHasse::new(x).map_err(Failure::from)?;
    let m = search_matching(x, &hasse, seed);
    let report = validate_matching(x, &hasse, &m);
    let unmatched: Vec<String> = report
        .unmatched
        .iter()
        .map(|&o| x.orbit_rep_name(o).to_string())
        .collect();
    match dest {
        Some(path) => {
            io::write_matching(path, x, &m)?;
            if fmt == Format::Structured {
                emit(
                    out,
                    &json!({
                        "pairs": m.to_named(x),
                        "unmatched": unmatched,
                        "path": path.display().to_string(),
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "matched {} pairs ({} unmatched: {}), wrote {}",
                    m.len(),
                    unmatched.len(),
                    unmatched.join(", "),
                    path.display()
                )?;
            }
        }
        None => write!(out, "{}", io::matching_to_string(x, &m))?,
    }
    Ok(0)
}

fn cmd_match_check<W: Write>(
    x: &SymmetricDeltaComplex,
    m: &crate::matching::Matching,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let hasse = OrbitHasse::new(x).map_err(Failure::from)?;
    let report = validate_matching(x, &hasse, m);
    let unmatched: Vec<String> = report
        .unmatched
        .iter()
        .map(|&o| x.orbit_rep_name(o).to_string())
        .collect();
    if fmt == Format::Structured {
        emit(
            out,
            &json!({
                "valid": report.is_valid(),
                "pairs": m.to_named(x),
                "violations": report.violations,
                "unmatched": unmatched,
            }),
        )?;
    } else {
        for v in &report.violations {
            writeln!(out, "violation: {}", matching_violation_str(v))?;
        }
        writeln!(out, "unmatched orbits: {}", unmatched.join(", "))?;
        writeln!(
            out,
            "{}",
            if report.is_valid() {
                "matching: VALID"
            } else {
                "matching: INVALID"
            }
        )?;
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn cmd_dmf_from_matching<W: Write>(
    x: &SymmetricDeltaComplex,
    m: &crate::matching::Matching,
    dest: Option<&std::path::Path>,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let hasse = OrbitHasse::new(x).map_err(Failure::from)?;
    let f = match matching_to_dmf(x, &hasse, m) {
        Ok(f) => f,
        Err(MatchingError::InvalidMatching(violations)) => {
            for v in &violations {
                writeln!(out, "violation: {}", matching_violation_str(v))?;
            }
            writeln!(out, "matching: INVALID")?;
            return Ok(1);
        }
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    match dest {
        Some(path) => {
            io::write_dmf(path, x, &f)?;
            if fmt == Format::Structured {
                emit(out, &json!({"path": path.display().to_string()}))?;
            } else {
                writeln!(out, "wrote function to {}", path.display())?;
            }
        }
        None => write!(out, "{}", io::dmf_to_string(x, &f))?,
    }
    Ok(0)
}

fn cmd_collapse<W: Write>(
    trace: Result<crate::collapse::CollapseTrace, CollapseError>,
    certify: bool,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let trace = match trace {
        Ok(t) => t,
        Err(CollapseError::InvalidFunction(violations)) => {
            for v in &violations {
                writeln!(out, "violation: {}", dmf_violation_str(v))?;
            }
            writeln!(out, "discrete Morse function: INVALID")?;
            return Ok(1);
        }
        Err(CollapseError::Matching(MatchingError::InvalidMatching(violations))) => {
            for v in &violations {
                writeln!(out, "violation: {}", matching_violation_str(v))?;
            }
            writeln!(out, "matching: INVALID")?;
            return Ok(1);
        }
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    let model = MorseModel::from_trace(&trace);
    let point = trace_certifies_point(&trace);
    if fmt == Format::Structured {
        emit(
            out,
            &json!({
                "events": trace.events,
                "cell_counts": model.cell_counts(),
                "certifies_point": point,
            }),
        )?;
    } else {
        for e in &trace.events {
            match e {
                crate::collapse::CollapseEvent::Attach { orbit, dim, group } => {
                    writeln!(out, "attach [{orbit}] dim {dim} |G| = {}", group.order)?
                }
                crate::collapse::CollapseEvent::Collapse { lower, upper } => {
                    writeln!(out, "collapse [{lower}] < [{upper}]")?
                }
            }
        }
        writeln!(out, "cells per dimension: {:?}", model.cell_counts())?;
        if certify {
            writeln!(
                out,
                "point certificate: {}",
                if point { "PASS" } else { "FAIL" }
            )?;
        } else {
            writeln!(out, "certifies a point: {point}")?;
        }
    }
    Ok(if certify && !point { 1 } else { 0 })
}

fn cmd_homology<W: Write>(
    x: &SymmetricDeltaComplex,
    reduced: bool,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let numbers = if reduced {
        reduced_betti(x).map_err(Failure::from)?
    } else {
        betti(x).map_err(Failure::from)?
    };
    if fmt == Format::Structured {
        emit(out, &json!({"betti": numbers, "reduced": reduced}))?;
    } else {
        let label = if reduced { "reduced Betti" } else { "Betti" };
        writeln!(out, "{label} numbers: {numbers:?}")?;
    }
    Ok(0)
}

/// Name the CLI flag when the library asks for the rank-4 opt-in.
fn ag_failure(e: TropicalError) -> Failure {
    match e {
        TropicalError::G4RequiresOptIn => Failure::Usage(format!("{e} (pass --allow-g4)")),
        other => Failure::from(other),
    }
}

fn cmd_ag_build<W: Write>(
    g: usize,
    allow_g4: bool,
    dest: Option<&std::path::Path>,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let (x, census) = enumerate_coloop_complex(g, allow_g4).map_err(ag_failure)?;
    let default = PathBuf::from(format!("coloop_g{g}.json"));
    let path = dest.unwrap_or(&default);
    io::write_complex(path, &x)?;
    let orbit_counts: Vec<usize> = (0..=x.max_dim()).map(|d| x.orbit_count(d)).collect();
    if fmt == Format::Structured {
        emit(
            out,
            &json!({
                "g": g,
                "classes": census.table(),
                "orbit_counts": orbit_counts,
                "path": path.display().to_string(),
            }),
        )?;
    } else {
        writeln!(
            out,
            "{:>3} {:<30} {:>8} {:>4} {:>7} {:>6}",
            "dim", "class", "elements", "rank", "coloops", "|Aut|"
        )?;
        for row in census.table() {
            writeln!(
                out,
                "{:>3} {:<30} {:>8} {:>4} {:>7} {:>6}",
                row.dim, row.label, row.elements, row.rank, row.coloops, row.aut_order
            )?;
        }
        writeln!(out, "orbits per dimension: {orbit_counts:?}")?;
        writeln!(out, "wrote complex to {}", path.display())?;
    }
    Ok(0)
}

fn cmd_ag_certify<W: Write>(
    g: usize,
    allow_g4: bool,
    fmt: Format,
    out: &mut W,
) -> Result<u8, Failure> {
    let (x, census) = enumerate_coloop_complex(g, allow_g4).map_err(ag_failure)?;
    let m = coloop_matching(&x, &census);
    let cert = certify_coloop(&x, &census).map_err(Failure::from)?;
    if fmt == Format::Structured {
        emit(
            out,
            &json!({
                "g": g,
                "matching": cert.matching_pairs,
                "matching_valid": cert.matching_valid(),
                "matching_violations": cert.matching_violations,
                "unmatched": cert.unmatched,
                "unmatched_as_expected": cert.unmatched_as_expected,
                "coloop_swaps": cert.coloop_swaps,
                "reduced_betti": cert.reduced_betti,
                "betti_trivial": cert.betti_trivial(),
                "ok": cert.ok(),
            }),
        )?;
    } else {
        writeln!(out, "coloop matching: {} pairs", m.len())?;
        for &(lo, up) in m.pairs() {
            writeln!(
                out,
                "  [{}] {} <-> [{}] {}",
                x.orbit_rep_name(lo),
                census.classes[census.orbit_class(&x, lo)].label,
                x.orbit_rep_name(up),
                census.classes[census.orbit_class(&x, up)].label,
            )?;
        }
        let pf = |b: bool| if b { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "clause 1 (matching is valid, acyclic, permissible): {}",
            pf(cert.matching_valid())
        )?;
        for v in &cert.matching_violations {
            writeln!(out, "  violation: {}", matching_violation_str(v))?;
        }
        writeln!(
            out,
            "clause 2 (unmatched = point + multi-coloop classes): {}",
            pf(cert.unmatched_as_expected)
        )?;
        writeln!(out, "  unmatched: {}", cert.unmatched.join(", "))?;
        let swaps_ok = cert.coloop_swaps.iter().all(|&(_, ok)| ok);
        writeln!(
            out,
            "clause 3 (coloop-swapping automorphisms): {}",
            pf(swaps_ok)
        )?;
        for (label, ok) in &cert.coloop_swaps {
            writeln!(out, "  {label}: {}", pf(*ok))?;
        }
        writeln!(
            out,
            "clause 4 (reduced Betti numbers vanish): {} {:?}",
            pf(cert.betti_trivial()),
            cert.reduced_betti
        )?;
        writeln!(out, "certificate: {}", pf(cert.ok()))?;
    }
    Ok(if cert.ok() { 0 } else { 1 })
}
