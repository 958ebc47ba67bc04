use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use kkit_core::report::Status;
use kkit_core::suite::{
    emit_torsion_tables, parse_group_list, parse_prime_list, parse_suite_list, run_suite, SuiteConfig, DEFAULT_PRIMES,
    DEFAULT_TABLE_GROUPS,
};

#[derive(Parser)]
#[command(name = "kkit", version, about = "Finite certificates for Chevalley algebras, Kostant slices and regular centralizers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run audit suites over groups and primes and write a JSON report.
    Check(CheckArgs),
    /// Write Springer-map torsion tables as JSON.
    Tables(TablesArgs),
}

#[derive(clap::Args)]
struct CheckArgs {
    /// Comma-separated group specs, e.g. `SC(A2),GL(3),SC(A1)*GL(1)`.
    #[arg(long, required = true)]
    group: Vec<String>,
    /// Comma-separated characteristics; 0 means the rationals.
    #[arg(long)]
    primes: Option<String>,
    /// Comma-separated suites or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples per sampled check.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Truncation degree for the twisted Weyl action.
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Record per-task wall-clock times (makes the report nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(clap::Args)]
struct TablesArgs {
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated group specs; a standard list when omitted.
    #[arg(long)]
    group: Vec<String>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    init_pool()?;
    match cli.command {
        Command::Check(args) => check(args),
        Command::Tables(args) => tables(args),
    }
}

fn init_pool() -> Result<()> {
    let Ok(v) = std::env::var("KKIT_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().with_context(|| format!("KKIT_THREADS={v:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("building the thread pool")?;
    Ok(())
}

fn groups(args: &[String]) -> Result<Vec<kkit_core::roots::GroupSpec>> {
    let mut out = Vec::new();
    for a in args {
        out.extend(parse_group_list(a)?);
    }
    Ok(out)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn check(args: CheckArgs) -> Result<ExitCode> {
    let config = SuiteConfig {
        groups: groups(&args.group)?,
        primes: match &args.primes {
            Some(s) => parse_prime_list(s)?,
            None => DEFAULT_PRIMES.to_vec(),
        },
        suites: parse_suite_list(&args.suite)?,
        seed: args.seed,
        samples: args.samples,
        degree: args.degree,
        timing: args.timing,
        ..SuiteConfig::default()
    };
    let report = run_suite(&config)?;
    write_output(args.json.as_deref(), &report.to_json())?;
    let s = &report.summary;
    eprintln!(
        "pass {}  fail {}  expected-fail {}  not-applicable {}",
        s.pass, s.fail, s.expected_fail, s.not_applicable
    );
    for e in report.entries.iter().filter(|e| e.status == Status::Fail) {
        let p = e.prime.map_or_else(|| "Z".to_string(), |p| p.to_string());
        eprintln!("FAIL {} p={} {}", e.group, p, e.check);
    }
    Ok(if report.has_unexpected_failures() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn tables(args: TablesArgs) -> Result<ExitCode> {
    let specs = if args.group.is_empty() { groups(&[DEFAULT_TABLE_GROUPS.join(",")])? } else { groups(&args.group)? };
    let t = emit_torsion_tables(&specs, &Default::default())?;
    let text = serde_json::to_string_pretty(&t)?;
    write_output(Some(&args.out), &text)?;
    for g in &t.groups {
        eprintln!(
            "{:<12} N primes {:?}  table {:?}  {}",
            g.group,
            g.derived_primes,
            g.table_primes,
            if g.n_matches_table { "match" } else { "MISMATCH" }
        );
    }
    Ok(ExitCode::SUCCESS)
}
