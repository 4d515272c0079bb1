//! Command-line entry point: catalog listing, distribution tables, the
//! claim verification suite, and witness construction and checking.
//!
//! Exit codes: 0 on success, 1 when a verification or witness check fails,
//! 2 on usage or input errors. Reports go to stdout and are byte-stable;
//! timing goes to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use ringprob::catalog::{builtin_catalog, catalog_listing};
use ringprob::isoclinism::{build_product_isoclinism, verify_isoclinism};
use ringprob::prob::{pr_distribution, PrMode};
use ringprob::subring::Subring;
use ringprob::verify::{is_claim_id, run_claims, Corpus, CLAIM_IDS};
use ringprob_cli::{parse_coeff_argument, parse_witness, witness_to_text, NameContext};

#[derive(Parser)]
#[command(
    name = "ringprob",
    version,
    about = "Exact commutator probability distributions on finite rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the builtin rings and their designated subrings.
    Catalog,
    /// Print the commutator distribution of a (subring, ring) pair as CSV.
    Table(TableArgs),
    /// Run verification claims over the catalog plus any loaded files.
    Verify(VerifyArgs),
    /// Build a product witness, or check one read from a file.
    Witness(WitnessArgs),
}

#[derive(Args)]
struct TableArgs {
    /// Ring name: catalog, file-defined, or an x-joined product.
    #[arg(long)]
    ring: String,
    /// Subring label; the full ring if omitted.
    #[arg(long)]
    subring: Option<String>,
    /// Restrict to one target element, given as a coefficient vector like
    /// "0 1 0".
    #[arg(long)]
    r: Option<String>,
    /// Definition files to load before resolving names; repeatable.
    #[arg(long)]
    file: Vec<PathBuf>,
    /// Count by the naive pair loop instead of the cached tables.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Single claim id, e.g. "thm-2.3".
    #[arg(long, conflicts_with = "all")]
    claim: Option<String>,
    /// Run every claim.
    #[arg(long)]
    all: bool,
    /// Definition files whose rings and subrings join the corpus.
    #[arg(long)]
    file: Vec<PathBuf>,
    /// Worker thread count; defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Largest ring size whose full subring lattice is enumerated.
    #[arg(long, default_value_t = 64)]
    max_enum: usize,
}

#[derive(Args)]
struct WitnessArgs {
    /// Check a witness block read from this file instead of building one.
    #[arg(long, conflicts_with_all = ["ring", "subring", "factor"])]
    check: Option<PathBuf>,
    /// Left ring name.
    #[arg(long)]
    ring: Option<String>,
    /// Left subring label; the full ring if omitted.
    #[arg(long)]
    subring: Option<String>,
    /// Commutative ring to multiply both sides by, e.g. "Z2".
    #[arg(long)]
    factor: Option<String>,
    /// Definition files to load before resolving names; repeatable.
    #[arg(long)]
    file: Vec<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Catalog => {
            print!("{}", catalog_listing(&builtin_catalog()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Witness(args) => cmd_witness(args),
    }
}

fn load_context(files: &[PathBuf]) -> Result<NameContext, String> {
    let mut ctx = NameContext::builtin();
    for path in files {
        let text =
            fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        ctx.add_file(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(ctx)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, String> {
    let ctx = load_context(&args.file)?;
    let ring = ctx
        .resolve_ring(&args.ring)
        .ok_or_else(|| format!("unknown ring {:?}", args.ring))?;
    let sub = match &args.subring {
        None => Subring::full(&ring),
        Some(label) => ctx
            .resolve_subring(&ring, label)
            .ok_or_else(|| format!("unknown subring {label:?} of {}", ring.name()))?,
    };
    let mode = if args.oracle {
        PrMode::Oracle
    } else {
        PrMode::Accelerated
    };
    let dist = pr_distribution(&sub, mode);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let emit = |out: &mut dyn Write, elem: &ringprob::ring::Element, p: ringprob::rational::Rational| {
        writeln!(out, "{};{};{}", elem, p.numerator(), p.denominator()).map_err(|e| e.to_string())
    };
    if let Some(text) = &args.r {
        let coeffs = parse_coeff_argument(text)
            .ok_or_else(|| format!("bad coefficient vector {text:?}"))?;
        let elem = ring.element_from_coeffs(&coeffs).map_err(|e| e.to_string())?;
        let p = dist.get(elem.index);
        emit(&mut out, &elem, p)?;
    } else {
        for (elem, p) in dist.entries() {
            emit(&mut out, elem, *p)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let ids: Vec<&str> = if args.all {
        CLAIM_IDS.to_vec()
    } else {
        match &args.claim {
            Some(id) if is_claim_id(id) => vec![id.as_str()],
            Some(id) => {
                return Err(format!(
                    "unknown claim id {id:?}; valid ids: {}",
                    CLAIM_IDS.join(", ")
                ))
            }
            None => return Err("pass --all or --claim <id>".into()),
        }
    };
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let ctx = load_context(&args.file)?;
    let start = Instant::now();
    let corpus = Corpus::build(ctx.into_entries(), args.max_enum);
    let result = run_claims(&corpus, &ids);
    let elapsed = start.elapsed();
    {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        for rec in &result.records {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                rec.claim,
                rec.instance,
                if rec.pass { "PASS" } else { "FAIL" },
                rec.detail
            )
            .map_err(|e| e.to_string())?;
        }
    }
    eprintln!(
        "{} instances, {} failures in {:.2?}",
        result.records.len(),
        result.failures(),
        elapsed
    );
    Ok(if result.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_witness(args: WitnessArgs) -> Result<ExitCode, String> {
    let ctx = load_context(&args.file)?;
    if let Some(path) = &args.check {
        let text =
            fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let witness =
            parse_witness(&text, &ctx).map_err(|e| format!("{}: {e}", path.display()))?;
        let report = verify_isoclinism(&witness);
        let stdout = io::stdout();
        let mut out = stdout.lock();
        for clause in &report.clauses {
            writeln!(
                out,
                "{}\t{}\t{}",
                clause.clause.name(),
                if clause.pass { "PASS" } else { "FAIL" },
                clause.detail
            )
            .map_err(|e| e.to_string())?;
        }
        return Ok(if report.pass() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let ring_name = args
        .ring
        .as_deref()
        .ok_or("pass --ring (plus --factor) to build a witness, or --check <file>")?;
    let factor_name = args
        .factor
        .as_deref()
        .ok_or("pass --factor <ring> to build a witness")?;
    let ring = ctx
        .resolve_ring(ring_name)
        .ok_or_else(|| format!("unknown ring {ring_name:?}"))?;
    let label = args.subring.as_deref().unwrap_or("full");
    let sub = ctx
        .resolve_subring(&ring, label)
        .ok_or_else(|| format!("unknown subring {label:?} of {}", ring.name()))?;
    let factor = ctx
        .resolve_ring(factor_name)
        .ok_or_else(|| format!("unknown ring {factor_name:?}"))?;
    let witness = build_product_isoclinism(&sub, &factor).map_err(|e| e.to_string())?;
    let report = verify_isoclinism(&witness);
    print!("{}", witness_to_text(&witness, label));
    if report.pass() {
        eprintln!("witness verified: {} clauses pass", report.clauses.len());
        Ok(ExitCode::SUCCESS)
    } else {
        for clause in report.clauses.iter().filter(|c| !c.pass) {
            eprintln!("{}: {}", clause.clause.name(), clause.detail);
        }
        Ok(ExitCode::from(1))
    }
}
