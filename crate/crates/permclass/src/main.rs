//! Command-line workbench for the two-by-four permutation classes: brute
//! force counting, exact generating-function series, catalog-vs-oracle
//! verification, identity checks, uniform sampling, and asymptotics.
//!
//! Exit codes are a stable contract: 0 success, 1 verification or assertion
//! failure, 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Zero;

use permclass::asym::{self, GrowthMethod};
use permclass::format::{self, OutputFormat};
use permclass_core::catalog::{self, EntryId, SingularityLocation};
use permclass_core::oracle::{self, CountQuery, DEFAULT_ENUMERATION_CAP};
use permclass_core::perm::{PatternBasis, Permutation};
use permclass_core::sampler::{seeded_rng, ClassId, SlotDp};

#[derive(Parser)]
#[command(
    name = "permclass",
    version,
    about = "two-by-four permutation class workbench"
)]
struct Cli {
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count Av(basis) members by brute force, for every length up to max-n.
    Count {
        /// Comma-separated patterns, e.g. 4123,1324
        #[arg(long)]
        basis: String,
        /// Patterns every member must additionally contain.
        #[arg(long)]
        contains: Option<String>,
        #[arg(long = "max-n")]
        max_n: usize,
        /// Worker threads for the search (results are identical at any count).
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// List the members of Av(basis) at one length, one per line.
    List {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        contains: Option<String>,
        #[arg(long)]
        n: usize,
        /// Refuse to materialize classes larger than this.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print the exact series of a catalog generating function.
    Series {
        #[arg(long)]
        gf: String,
        #[arg(long, default_value_t = 60)]
        terms: usize,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Compare a catalog entry against brute-force enumeration.
    Verify {
        #[arg(long)]
        gf: String,
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// Check the catalog's algebraic identities as exact series equalities.
    Identities {
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Draw uniform random members of the fan or flag class.
    Sample {
        #[arg(long = "class")]
        class: String,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Estimate the growth rate of an entry from its exact coefficients.
    Growth {
        #[arg(long)]
        gf: String,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value = "extrapolated")]
        method: String,
    },
    /// Transfer-theorem prediction of one coefficient vs its exact value.
    Asym {
        #[arg(long)]
        gf: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Exact coefficient ratio of two entries at one index.
    Ratio {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        #[arg(long)]
        n: usize,
    },
    /// Metadata of a catalog entry as JSON.
    Info {
        #[arg(long)]
        gf: String,
    },
}

/// Failures that map to exit code 1 (checks, with a report on stdout) vs 2
/// (usage, message on stderr).
enum CmdError {
    Usage(String),
    Check(String),
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> CmdError {
        CmdError::Usage(msg.into())
    }
    fn check(msg: impl Into<String>) -> CmdError {
        CmdError::Check(msg.into())
    }
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), ExitCode> {
    if let Some(path) = path {
        std::fs::write(path, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(1)
        })
    } else {
        print!("{text}");
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(text) => match emit(&text, cli.output.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        },
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Check(report)) => {
            let _ = emit(&report, cli.output.as_ref());
            ExitCode::from(1)
        }
    }
}

fn parse_gf(s: &str) -> Result<EntryId, CmdError> {
    EntryId::parse(s).ok_or_else(|| {
        CmdError::usage(format!(
            "unknown generating function '{s}' (expected one of {})",
            EntryId::ALL
                .iter()
                .map(|id| id.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })
}

fn parse_format(s: &str) -> Result<OutputFormat, CmdError> {
    OutputFormat::parse(s)
        .ok_or_else(|| CmdError::usage(format!("unknown format '{s}' (text, json, csv, bfile)")))
}

fn parse_basis(s: &str) -> Result<PatternBasis, CmdError> {
    PatternBasis::parse(s).map_err(|e| CmdError::usage(format!("bad basis '{s}': {e}")))
}

fn parse_patterns(s: &str) -> Result<Vec<Permutation>, CmdError> {
    s.split(',')
        .map(|tok| {
            tok.parse()
                .map_err(|e| CmdError::usage(format!("bad pattern '{tok}': {e}")))
        })
        .collect()
}

fn run(cmd: &Command) -> Result<String, CmdError> {
    match cmd {
        Command::Count {
            basis,
            contains,
            max_n,
            threads,
            format,
        } => {
            let format = parse_format(format)?;
            let basis = parse_basis(basis)?;
            let must_contain = match contains {
                Some(list) => parse_patterns(list)?,
                None => vec![],
            };
            let counts: Vec<u64> = (0..=*max_n)
                .map(|n| {
                    let q = CountQuery::new(basis.clone(), n).with_contains(must_contain.clone());
                    threaded_count(&q, *threads)
                })
                .collect();
            Ok(format::render_counts(&counts, format))
        }
        Command::List {
            basis,
            contains,
            n,
            cap,
            format,
        } => {
            let format = parse_format(format)?;
            let basis = parse_basis(basis)?;
            let must_contain = match contains {
                Some(list) => parse_patterns(list)?,
                None => vec![],
            };
            let q = CountQuery::new(basis, *n).with_contains(must_contain);
            let members =
                oracle::enumerate(&q, *cap).map_err(|e| CmdError::usage(format!("{e}")))?;
            format::render_samples(&members, format)
                .map_err(|e| CmdError::usage(format!("cannot render: {e}")))
        }
        Command::Series { gf, terms, format } => {
            let id = parse_gf(gf)?;
            let format = parse_format(format)?;
            let series = catalog::evaluate(id, *terms)
                .map_err(|e| CmdError::check(format!("evaluation failed: {e}")))?;
            format::render_series(&series, format)
                .map_err(|e| CmdError::usage(format!("cannot render: {e}")))
        }
        Command::Verify { gf, max_n } => {
            let id = parse_gf(gf)?;
            let entry = catalog::entry(id);
            let basis = entry.basis.ok_or_else(|| {
                CmdError::usage(format!("{} has no counting query to verify", id.name()))
            })?;
            let must_contain: Vec<Permutation> = entry
                .constraints
                .iter()
                .filter(|c| c.must_contain)
                .map(|c| c.pattern.clone())
                .collect();
            let series = catalog::evaluate(id, *max_n)
                .and_then(|s| s.integer_coefficients())
                .map_err(|e| CmdError::check(format!("evaluation failed: {e}")))?;
            let mut out = String::new();
            let mut ok = true;
            for (n, expected) in series.iter().enumerate() {
                let q = CountQuery::new(basis.clone(), n).with_contains(must_contain.clone());
                let counted = oracle::count(&q);
                let pass = expected == &counted.into();
                ok &= pass;
                writeln!(
                    out,
                    "{n} catalog={expected} oracle={counted} {}",
                    if pass { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            if ok {
                Ok(out)
            } else {
                Err(CmdError::check(out))
            }
        }
        Command::Identities { terms } => {
            let report = catalog::check_identities(*terms)
                .map_err(|e| CmdError::check(format!("evaluation failed: {e}")))?;
            let mut out = String::new();
            for c in &report.checks {
                match c.first_failure {
                    None => writeln!(out, "{} OK", c.name).unwrap(),
                    Some(k) => writeln!(out, "{} FAIL at z^{k}", c.name).unwrap(),
                }
            }
            writeln!(
                out,
                "{} identities checked to order {}",
                report.checks.len(),
                report.order
            )
            .unwrap();
            if report.all_passed() {
                Ok(out)
            } else {
                Err(CmdError::check(out))
            }
        }
        Command::Sample {
            class,
            length,
            count,
            seed,
            format,
        } => {
            let format = parse_format(format)?;
            let perms = if let Some(class) = ClassId::parse(class) {
                sample_by_construction(class, *length, *count, *seed)?
            } else if let Some(id) = EntryId::parse(class)
                .filter(|id| matches!(id, EntryId::P1 | EntryId::P2 | EntryId::P3))
            {
                sample_by_enumeration(id, *length, *count, *seed)?
            } else {
                return Err(CmdError::usage(format!(
                    "unknown class '{class}' (fan, flag, P1, P2, P3)"
                )));
            };
            format::render_samples(&perms, format)
                .map_err(|e| CmdError::usage(format!("cannot render: {e}")))
        }
        Command::Growth { gf, terms, method } => {
            let id = parse_gf(gf)?;
            let method = GrowthMethod::parse(method)
                .ok_or_else(|| CmdError::usage(format!("unknown method '{method}'")))?;
            let coeffs = catalog::evaluate(id, *terms)
                .and_then(|s| s.integer_coefficients())
                .map_err(|e| CmdError::check(format!("evaluation failed: {e}")))?;
            let g =
                asym::growth_rate(&coeffs, method).map_err(|e| CmdError::usage(format!("{e}")))?;
            Ok(format!("{g:.10}\n"))
        }
        Command::Asym { gf, n, order } => {
            let id = parse_gf(gf)?;
            let report =
                asym::asym_report(id, *n, *order).map_err(|e| CmdError::usage(format!("{e}")))?;
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("serializable")
            ))
        }
        Command::Ratio { num, den, n } => {
            let num = parse_gf(num)?;
            let den = parse_gf(den)?;
            let r = asym::ratio_limit(num, den, *n).map_err(|e| CmdError::usage(format!("{e}")))?;
            Ok(format!("{r:.10}\n"))
        }
        Command::Info { gf } => {
            let id = parse_gf(gf)?;
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&entry_json(id)).expect("serializable")
            ))
        }
    }
}

/// The exact DP samplers for the two grammar-backed classes.
fn sample_by_construction(
    class: ClassId,
    length: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Permutation>, CmdError> {
    let dp = SlotDp::build(class, length);
    if dp.marginal(length).is_zero() {
        return Err(CmdError::usage(format!(
            "no {} member of length {length}",
            class.name()
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut perms = Vec::with_capacity(count);
    for _ in 0..count {
        let p = dp
            .sample(length, &mut rng)
            .map_err(|e| CmdError::check(format!("sampling failed: {e}")))?;
        perms.push(p);
    }
    Ok(perms)
}

/// The three full classes have no single construction grammar here, so
/// uniform sampling falls back to materializing the class, workable only at
/// small lengths.
fn sample_by_enumeration(
    id: EntryId,
    length: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Permutation>, CmdError> {
    const MAX_LEN: usize = 10;
    if length > MAX_LEN {
        return Err(CmdError::usage(format!(
            "enumeration-backed sampling of {} is limited to lengths <= {MAX_LEN}",
            id.name()
        )));
    }
    let basis = catalog::entry(id).basis.expect("P1/P2/P3 carry a basis");
    let members = oracle::enumerate(&CountQuery::new(basis, length), DEFAULT_ENUMERATION_CAP)
        .map_err(|e| CmdError::usage(format!("{e}")))?;
    if members.is_empty() {
        return Err(CmdError::usage(format!(
            "no {} member of length {length}",
            id.name()
        )));
    }
    let mut rng = seeded_rng(seed);
    Ok((0..count)
        .map(|_| members[permclass_core::sampler::uniform_index(members.len(), &mut rng)].clone())
        .collect())
}

/// Splits the first few levels of the search tree across threads; each
/// worker counts completions of its prefixes and the totals add up, so the
/// result is identical at any thread count.
fn threaded_count(query: &CountQuery, threads: usize) -> u64 {
    const SPLIT_DEPTH: usize = 4;
    if threads <= 1 || query.n <= SPLIT_DEPTH {
        return oracle::count(query);
    }
    let frontier = oracle::prefix_frontier(query, SPLIT_DEPTH);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk_id in 0..threads {
            let frontier = &frontier;
            handles.push(scope.spawn(move || {
                frontier
                    .iter()
                    .skip(chunk_id)
                    .step_by(threads)
                    .map(|prefix| oracle::count_completions(query, prefix))
                    .sum::<u64>()
            }));
        }
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    })
}

fn entry_json(id: EntryId) -> serde_json::Value {
    let e = catalog::entry(id);
    let basis = e.basis.as_ref().map(|b| {
        b.patterns()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    });
    let constraints: Vec<serde_json::Value> = e
        .constraints
        .iter()
        .map(|c| {
            serde_json::json!({
                "pattern": c.pattern.to_string(),
                "must_contain": c.must_contain,
            })
        })
        .collect();
    let puiseux = e.puiseux.as_ref().map(|p| {
        let singularity = match &p.singularity {
            SingularityLocation::Point(q) => serde_json::json!({
                "point": q.to_string(),
            }),
            SingularityLocation::SmallestPositiveRoot(poly) => serde_json::json!({
                "smallest_positive_root_of": poly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
        };
        let terms: Vec<serde_json::Value> = p
            .terms
            .iter()
            .map(|t| {
                serde_json::json!({
                    "rational": t.amplitude.rational.to_string(),
                    "surd_coeff": t.amplitude.surd_coeff.to_string(),
                    "radicand": t.amplitude.radicand,
                    "exponent": t.exponent.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "singularity": singularity, "terms": terms })
    });
    serde_json::json!({
        "id": id.name(),
        "basis": basis,
        "constraints": constraints,
        "reference_coeffs": e.reference_coeffs,
        "archive_id": e.archive_id,
        "puiseux": puiseux,
        "enumeration_cap": DEFAULT_ENUMERATION_CAP,
    })
}
