//! `artin-growth`: skew-growth polynomials of finite-type Artin monoids.
//!
//! Subcommands compute the polynomial `N(t)` for a named type, product, or
//! matrix file; reproduce the derivative table at `t = 1`; verify the degree
//! statistics identities by brute force; and invert `N(t)` into growth
//! coefficients, optionally cross-checked by counting monoid elements.
//!
//! Exit codes: 0 success / all checks pass, 1 a verification failed,
//! 2 usage or input error, 3 a work budget or size cap was exceeded.
//! With `--json`, machine-readable output goes to stdout (schemas live in
//! `docs/schema/`); diagnostics always go to stderr.

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use artin_growth::coxeter::{build_product, format_type_spec, parse_type_spec, Family};
use artin_growth::error::Error;
use artin_growth::oracle::{count_elements, estimate_work, DEFAULT_WORK_BUDGET};
use artin_growth::series::{invert_series, DEFAULT_TRUNCATION};
use artin_growth::skewgrowth::{
    derivative_table, skew_growth_poly, verify_identities, DerivativeRow, IdentityCheck,
    DEFAULT_RANK_CAP,
};
use artin_growth::CoxeterMatrix;

const BUDGET_ENV: &str = "ARTIN_GROWTH_BUDGET";

#[derive(Parser)]
#[command(name = "artin-growth", version, about = "Skew-growth polynomials of finite-type Artin monoids")]
struct Cli {
    /// Emit machine-readable JSON on stdout instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the skew-growth polynomial N(t) of a type spec
    Poly { spec: String },
    /// Print N(1) and N'(1) of a type spec
    Derivative { spec: String },
    /// Compare computed derivatives at 1 against their closed forms
    Table {
        /// Largest rank (and I2 label) to include
        #[arg(long, default_value_t = 10)]
        max_rank: usize,
    },
    /// Brute-force the degree-statistics identities up to a rank
    Verify {
        /// Largest rank to check
        #[arg(long, default_value_t = 10)]
        lmax: usize,
    },
    /// Invert N(t) into growth coefficients, optionally cross-checked by
    /// counting monoid elements directly
    Growth {
        spec: String,
        /// Truncation degree of the series
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        degree: usize,
        /// Recount every coefficient by brute-force word closure
        #[arg(long)]
        oracle: bool,
    },
}

/// A parsed type argument: either a named product or a matrix file.
/// Named syntax takes priority; a file is only tried if the grammar fails.
enum TypeSpec {
    Named(Vec<(Family, usize)>),
    File(String),
}

impl TypeSpec {
    fn parse(input: &str) -> Result<TypeSpec, Error> {
        match parse_type_spec(input) {
            Ok(parts) => Ok(TypeSpec::Named(parts)),
            Err(grammar_err) => {
                if Path::new(input).is_file() {
                    Ok(TypeSpec::File(input.to_string()))
                } else {
                    Err(grammar_err)
                }
            }
        }
    }

    fn matrix(&self) -> Result<CoxeterMatrix, Error> {
        match self {
            TypeSpec::Named(parts) => build_product(parts),
            TypeSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
                CoxeterMatrix::parse_text(&text)
            }
        }
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeSpec::Named(parts) => write!(f, "{}", format_type_spec(parts)),
            TypeSpec::File(path) => write!(f, "{path}"),
        }
    }
}

#[derive(Serialize)]
struct PolyOutput {
    spec: String,
    polynomial: String,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct DerivativeOutput {
    spec: String,
    value_at_one: String,
    derivative_at_one: String,
}

#[derive(Serialize)]
struct TableOutput {
    max_rank: usize,
    all_ok: bool,
    rows: Vec<DerivativeRow>,
}

#[derive(Serialize)]
struct VerifyOutput {
    max_rank: usize,
    all_passed: bool,
    checks: Vec<IdentityCheck>,
}

#[derive(Serialize)]
struct GrowthOutput {
    spec: String,
    degree: usize,
    coefficients: Vec<String>,
    oracle: Option<OracleOutput>,
}

#[derive(Serialize)]
struct OracleOutput {
    counts: Vec<u64>,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::RankTooLarge { .. }
                | Error::ClosureExceededCap { .. }
                | Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Poly { spec } => cmd_poly(spec, cli.json),
        Command::Derivative { spec } => cmd_derivative(spec, cli.json),
        Command::Table { max_rank } => cmd_table(*max_rank, cli.json),
        Command::Verify { lmax } => cmd_verify(*lmax, cli.json),
        Command::Growth {
            spec,
            degree,
            oracle,
        } => cmd_growth(spec, *degree, *oracle, cli.json),
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("output structs serialize")
    );
}

fn cmd_poly(spec: &str, json: bool) -> Result<ExitCode, Error> {
    let spec = TypeSpec::parse(spec)?;
    let poly = skew_growth_poly(&spec.matrix()?)?;
    let coefficients: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    if json {
        emit_json(&PolyOutput {
            spec: spec.to_string(),
            polynomial: poly.to_string(),
            coefficients,
        });
    } else {
        println!("N(t) = {poly}");
        println!("[{}]", coefficients.join(","));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_derivative(spec: &str, json: bool) -> Result<ExitCode, Error> {
    let spec = TypeSpec::parse(spec)?;
    let poly = skew_growth_poly(&spec.matrix()?)?;
    let value = poly.value_at_one();
    let derivative = poly.derivative_at_one();
    if json {
        emit_json(&DerivativeOutput {
            spec: spec.to_string(),
            value_at_one: value.to_string(),
            derivative_at_one: derivative.to_string(),
        });
    } else {
        println!("N(1) = {value}");
        println!("N'(1) = {derivative}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(max_rank: usize, json: bool) -> Result<ExitCode, Error> {
    if !(4..=DEFAULT_RANK_CAP).contains(&max_rank) {
        return Err(Error::Parse(format!(
            "--max-rank must be in 4..={DEFAULT_RANK_CAP}"
        )));
    }
    let table = derivative_table(max_rank);
    let all_ok = table.all_ok();
    if json {
        emit_json(&TableOutput {
            max_rank,
            all_ok,
            rows: table.rows,
        });
    } else {
        println!("{:<8} {:>9} {:>9}  status", "type", "computed", "expected");
        for row in &table.rows {
            println!(
                "{:<8} {:>9} {:>9}  {}",
                row.label,
                row.computed,
                row.expected,
                if row.ok { "OK" } else { "MISMATCH" }
            );
        }
        if all_ok {
            println!("all {} rows match", table.rows.len());
        } else {
            println!("MISMATCHES FOUND");
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(lmax: usize, json: bool) -> Result<ExitCode, Error> {
    if !(1..DEFAULT_RANK_CAP).contains(&lmax) {
        return Err(Error::Parse(format!(
            "--lmax must be in 1..{DEFAULT_RANK_CAP}"
        )));
    }
    let report = verify_identities(lmax);
    let all_passed = report.all_passed();
    if json {
        emit_json(&VerifyOutput {
            max_rank: report.max_rank,
            all_passed,
            checks: report.checks,
        });
    } else {
        for check in &report.checks {
            let status = if check.passed { "PASS" } else { "FAIL" };
            let plural = if check.instances == 1 { "" } else { "s" };
            println!(
                "{}: {} ({} instance{plural})",
                check.name, status, check.instances
            );
            if let Some(failure) = &check.first_failure {
                println!("  first failure: {failure}");
            }
            if let Some(note) = &check.note {
                println!("  note: {note}");
            }
        }
        if all_passed {
            println!("all identities hold up to rank {lmax}");
        } else {
            println!("IDENTITY FAILURES up to rank {lmax}");
        }
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn oracle_budget() -> Result<u64, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_ENV} must be an integer, got {raw:?}"))),
        Err(_) => Ok(DEFAULT_WORK_BUDGET),
    }
}

fn cmd_growth(spec: &str, degree: usize, oracle: bool, json: bool) -> Result<ExitCode, Error> {
    let spec = TypeSpec::parse(spec)?;
    let matrix = spec.matrix()?;
    let series = invert_series(&skew_growth_poly(&matrix)?, degree)?;
    let coefficients: Vec<String> = series.coeffs().iter().map(|c| c.to_string()).collect();

    let oracle_result = if oracle {
        let budget = oracle_budget()?;
        let mut counts = Vec::with_capacity(degree + 1);
        for n in 0..=degree {
            match count_elements(&matrix, n, budget) {
                Ok(count) => counts.push(count),
                Err(err @ Error::BudgetExceeded { .. }) => {
                    let fits = (0..n)
                        .rev()
                        .find(|&d| estimate_work(matrix.rank(), d) <= budget as u128);
                    if let Some(d) = fits {
                        eprintln!("hint: --degree {d} fits the current budget");
                    }
                    return Err(err);
                }
                Err(err) => return Err(err),
            }
        }
        let passed = counts
            .iter()
            .zip(&coefficients)
            .all(|(count, coeff)| &count.to_string() == coeff);
        Some(OracleOutput { counts, passed })
    } else {
        None
    };

    let passed = oracle_result.as_ref().is_none_or(|o| o.passed);
    if json {
        emit_json(&GrowthOutput {
            spec: spec.to_string(),
            degree,
            coefficients,
            oracle: oracle_result,
        });
    } else if let Some(oracle) = &oracle_result {
        println!("series: {}", coefficients.join(" "));
        println!(
            "oracle: {}",
            oracle
                .counts
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        println!("verdict: {}", if oracle.passed { "PASS" } else { "FAIL" });
    } else {
        println!("{}", coefficients.join(" "));
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
