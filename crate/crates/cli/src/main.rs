use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hopfcalc::crossprod::CrossAlgebra;
use hopfcalc::dsl::{self, CalculusSpec};
use hopfcalc::report::format_rational;
use hopfcalc::verify::{self, ORACLE_SUITE, SUITES};
use hopfcalc::wedge::{build_exterior, compute_braiding, WedgeOptions};
use hopfcalc::FodcData;

/// Exact verification of bicovariant differential calculi on finite groups.
#[derive(Parser)]
#[command(name = "hopfcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CalculusArg {
    /// Spec file path, or `builtin:z2`, `builtin:z3`, `builtin:s3`.
    #[arg(long)]
    calculus: String,
    /// Highest form degree kept; defaults to the spec's `max_degree`.
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exit 0 iff all pass.
    Check {
        #[command(flatten)]
        calc: CalculusArg,
        /// Suite to run (repeatable); all default suites when absent.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Write every case as `suite<TAB>case<TAB>PASS|FAIL<TAB>lhs<TAB>rhs`.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the normal form of an expression.
    Eval {
        #[command(flatten)]
        calc: CalculusArg,
        #[arg(long)]
        expr: String,
    },
    /// Print the r, f, chi and sigma tables and exterior dimensions.
    Tables {
        #[command(flatten)]
        calc: CalculusArg,
    },
    /// Print dim of each exterior degree.
    Dims {
        #[command(flatten)]
        calc: CalculusArg,
    },
}

/// Failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn load(arg: &CalculusArg) -> Result<(FodcData, usize), UsageError> {
    let spec: CalculusSpec = match arg.calculus.strip_prefix("builtin:") {
        Some(name) => dsl::builtin(name).ok_or_else(|| {
            UsageError(format!("unknown builtin `{name}` (available: {})", dsl::BUILTINS.join(", ")))
        })?,
        None => {
            let text = fs::read_to_string(&arg.calculus)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", arg.calculus)))?;
            dsl::parse_spec(&text)?
        }
    };
    let max_degree = arg.max_degree.unwrap_or(spec.max_degree);
    if max_degree < 1 {
        return Err(UsageError("--max-degree must be at least 1".into()));
    }
    Ok((spec.calculus()?, max_degree))
}

fn check(calc: &CalculusArg, suites: &[String], report: Option<&PathBuf>) -> Result<bool, UsageError> {
    for s in suites {
        if !SUITES.contains(&s.as_str()) && s != ORACLE_SUITE {
            return Err(UsageError(format!(
                "unknown suite `{s}` (available: {} {ORACLE_SUITE})",
                SUITES.join(" ")
            )));
        }
    }
    let (fodc, max_degree) = load(calc)?;
    let names: Vec<&str> = suites.iter().map(String::as_str).collect();
    let reports = verify::run_suites(&fodc, WedgeOptions::with_max_degree(max_degree), &names);
    let mut lines = Vec::new();
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("{}: {}/{} {status} ({} ms)", r.name, r.passed_count(), r.total(), r.elapsed.as_millis());
        for line in r.lines() {
            if line.split('\t').nth(2) == Some("FAIL") {
                println!("  {line}");
            }
            lines.push(line);
        }
    }
    if let Some(path) = report {
        let mut text = lines.join("\n");
        text.push('\n');
        fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let all = passed == reports.len();
    println!("SUITES {passed}/{} {}", reports.len(), if all { "PASS" } else { "FAIL" });
    Ok(all)
}

fn eval(calc: &CalculusArg, expr: &str) -> Result<(), UsageError> {
    let (fodc, max_degree) = load(calc)?;
    let parsed = dsl::parse(expr)?;
    let cp = CrossAlgebra::new(fodc, WedgeOptions::with_max_degree(max_degree))?;
    let value = dsl::evaluate(&parsed, &cp)?;
    println!("{}", dsl::print_normal(&value, &cp));
    Ok(())
}

fn tables(calc: &CalculusArg) -> Result<(), UsageError> {
    let (fodc, max_degree) = load(calc)?;
    let n = fodc.n();
    let alg = fodc.paired().alg();
    let dual = fodc.paired().dual();
    println!("generators: {}", fodc.labels().join(" "));
    println!("r[i,j]:");
    for i in 0..n {
        for j in 0..n {
            println!("  r[{},{}] = {}", i + 1, j + 1, alg.format(fodc.r(i, j)));
        }
    }
    println!("f[i,j]:");
    for i in 0..n {
        for j in 0..n {
            println!("  f[{},{}] = {}", i + 1, j + 1, dual.format(fodc.f(i, j)));
        }
    }
    println!("chi[i]:");
    for i in 0..n {
        println!("  chi[{}] = {}", i + 1, dual.format(fodc.chi(i)));
    }
    let braiding = compute_braiding(&fodc);
    let sigma = &braiding.sigma;
    println!("sigma ({}x{}, pair (i,j) at index i*n+j):", sigma.rows(), sigma.cols());
    for r in 0..sigma.rows() {
        let row: Vec<String> = sigma.row(r).iter().map(format_rational).collect();
        println!("  {}", row.join(" "));
    }
    print_dims(&fodc, max_degree)
}

fn print_dims(fodc: &FodcData, max_degree: usize) -> Result<(), UsageError> {
    let ext = build_exterior(fodc, max_degree)?;
    println!("dims:");
    for (d, dim) in ext.dims().iter().enumerate() {
        println!("  {d}: {dim}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Check { calc, suites, report } => check(&calc, &suites, report.as_ref()),
        Command::Eval { calc, expr } => eval(&calc, &expr).map(|_| true),
        Command::Tables { calc } => tables(&calc).map(|_| true),
        Command::Dims { calc } => {
            let (fodc, max_degree) = load(&calc)?;
            print_dims(&fodc, max_degree).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
