use std::process::ExitCode;

use apery_core::decimal::parse_decimal;
use apery_core::report::Status;
use apery_core::series::FamilyKind;
use apery_core::suite::{self, ParamRanges, SuiteOptions, TableRow};
use apery_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

/// Numerical verification of Apery-like series over multiple t-harmonic star sums.
#[derive(Parser)]
#[command(name = "apery", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks for one identity over a parameter grid.
    Verify {
        /// Identity id, e.g. theorem1, gencev, L2iii, oracle-tstar.
        identity: String,
        /// Range `A..B` or a single value.
        #[arg(long)]
        j: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<String>,
        /// Truncation length for L2i.
        #[arg(long)]
        terms: Option<u64>,
        #[arg(long, default_value_t = suite::DEFAULT_DIGITS)]
        digits: u32,
        /// Override the tolerance, as a decimal such as 1e-12.
        #[arg(long)]
        tolerance: Option<String>,
        /// Newline-delimited JSON reports.
        #[arg(long)]
        json: bool,
        /// Record wall-clock time per check.
        #[arg(long)]
        timing: bool,
    },
    /// Print a table of closed forms and values.
    Table {
        which: TableKind,
        #[arg(long, default_value_t = 20)]
        digits: u32,
    },
    /// Partial-sum convergence against the closed form.
    Bench {
        family: Family,
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Geometric schedule `N0xR^k`.
        #[arg(long, default_value = "1000x4^2")]
        schedule: String,
        #[arg(long, default_value_t = suite::DEFAULT_DIGITS)]
        digits: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Corollary,
    Beta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Theorem1,
    Gencev,
}

fn exit_for(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Capacity(_) => ExitCode::from(3),
        Error::Parse(_) | Error::Domain(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn range(s: &Option<String>) -> Result<Option<std::ops::RangeInclusive<u32>>, Error> {
    s.as_deref().map(suite::parse_range).transpose()
}

fn print_table(rows: &[TableRow]) {
    let lw = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
    let ew = rows.iter().map(|r| r.expr.len()).max().unwrap_or(0);
    for r in rows {
        println!("{:<lw$}  {:<ew$}  {}", r.label, r.expr, r.value);
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify { identity, j, m, n, k, terms, digits, tolerance, json, timing } => {
            let opts = SuiteOptions {
                digits,
                tolerance: tolerance.as_deref().map(parse_decimal).transpose()?,
                timing,
                ranges: ParamRanges { j: range(&j)?, m: range(&m)?, n: range(&n)?, k: range(&k)?, terms },
            };
            let reports = suite::run_suite(&identity, &opts)?;
            let mut all_pass = true;
            for r in &reports {
                all_pass &= r.status == Status::Pass;
                if json {
                    println!("{}", r.to_json());
                } else {
                    println!("{}", r.summary_line());
                }
            }
            if !json {
                let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
                println!("{passed}/{} PASS", reports.len());
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Table { which, digits } => {
            apery_core::make_context(digits)?;
            let rows = match which {
                TableKind::Corollary => suite::table_corollary(digits)?,
                TableKind::Beta => suite::table_beta(digits)?,
            };
            print_table(&rows);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { family, j, schedule, digits } => {
            let kind = match family {
                Family::Theorem1 => FamilyKind::Theorem1,
                Family::Gencev => FamilyKind::Gencev,
            };
            let pts = suite::parse_schedule(&schedule)?;
            let b = suite::bench(kind, j, &pts, digits)?;
            println!("{} j={}  rhs = {}", b.family, b.j, b.rhs);
            println!("{:>10}  {:<w$}  {:<12}  {:>10}", "N", "S_N", "error", "elapsed_ms", w = digits as usize + 6);
            for r in &b.rows {
                println!("{:>10}  {:<w$}  {:<12}  {:>10}", r.n, r.s_n, r.error, r.elapsed_ms, w = digits as usize + 6);
            }
            match b.fitted_exponent {
                Some(e) => println!("fitted tail exponent: {e:.4}"),
                None => println!("fitted tail exponent: n/a"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => exit_for(&e),
    }
}
