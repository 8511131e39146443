//! `cgybe`: generate, evaluate and verify Cremmer-Gervais braid operators.
//!
//! Exit codes: 0 when every requested check passes, 1 when at least one
//! fails, 2 on usage or configuration errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cgybe::model::{cg_op, cg_twisted_op, g_op, permutation_op, CGParams};
use cgybe::oracle::{self, IntWindow};
use cgybe::ring::{parse_rational, rational_to_string};
use cgybe::verify::{self, CheckReport};
use cgybe::{Endo2, LaurentQP, Rational};

/// Caps the worker threads used for parallel checks.
const THREADS_ENV: &str = "CGYBE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "cgybe", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an operator with symbolic q, p coefficients.
    Gen {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run operator-level checks; one JSON report per line.
    Verify {
        #[command(flatten)]
        op: OpArgs,
        /// Comma-separated subset of: ybe, compat, mixed, hecke, gp, quadratic.
        /// `compat` and `mixed` always use g and P of the given rank.
        #[arg(long, value_delimiter = ',', default_value = "ybe")]
        checks: Vec<CheckName>,
        /// Scalar in the Hecke relation (R − s)(R + s⁻¹) = 0; must be a single term.
        #[arg(long, default_value = "q")]
        hecke_q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check the scalar identities over [lo, hi]^arity.
    Identities {
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        hi: i64,
        /// Comma-separated identity names; all of them by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Substitute rational values for q and p and print the dense matrix.
    Eval {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        p: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Also check the braid relation at this point; the report goes to stderr.
        #[arg(long)]
        ybe: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct OpArgs {
    #[arg(long, value_enum, default_value_t = OpName::Cg)]
    op: OpName,
    /// Rank of V.
    #[arg(long, value_parser = parse_rank)]
    n: usize,
    /// Parameter preset for `--op cg`; `hecke` is α = q, β = q − q^-1.
    #[arg(long, value_enum, default_value_t = Preset::Hecke)]
    params: Preset,
    /// α for `--op cg`, e.g. `q`, `2*q^-1 + p`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// β for `--op cg`, e.g. `1`, `hecke`.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpName {
    /// αP + βg
    Cg,
    /// The two-parameter (q, p) matrix
    Cg2,
    G,
    Perm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Hecke,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum CheckName {
    Compat,
    Gp,
    Hecke,
    Mixed,
    Quadratic,
    Ybe,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

fn parse_rank(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("rank must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

struct Resolved {
    n: usize,
    alpha: LaurentQP,
    beta: LaurentQP,
    op: Endo2,
}

impl OpArgs {
    fn resolve(&self) -> CliResult<Resolved> {
        let n = self.n;
        let (alpha, beta) = match self.params {
            Preset::Hecke => (LaurentQP::q(), LaurentQP::q_minus_q_inv()),
        };
        let alpha = match &self.alpha {
            Some(s) => s.parse()?,
            None => alpha,
        };
        let beta = match &self.beta {
            Some(s) => s.parse()?,
            None => beta,
        };
        let op = match self.op {
            OpName::Cg => cg_op(&CGParams::new(n, alpha.clone(), beta.clone())?),
            OpName::Cg2 => cg_twisted_op(n),
            OpName::G => g_op(n),
            OpName::Perm => permutation_op(n),
        };
        Ok(Resolved { n, alpha, beta, op })
    }
}

fn open_output(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_line<T: Serialize>(w: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn cmd_gen(op: &OpArgs, format: Format, out: &Option<PathBuf>) -> CliResult<ExitCode> {
    let resolved = op.resolve()?;
    let text = match format {
        Format::Json => resolved.op.to_json() + "\n",
        Format::Csv => resolved.op.to_csv(),
        Format::Latex => resolved.op.to_latex(),
    };
    let mut w = open_output(out)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn run_check(name: CheckName, r: &Resolved, hecke_q: &LaurentQP) -> CliResult<CheckReport> {
    Ok(match name {
        CheckName::Ybe => verify::check_ybe(&r.op),
        CheckName::Compat => verify::check_compatibility(&g_op(r.n)),
        CheckName::Mixed => verify::check_mixed_conditions(&permutation_op(r.n), &g_op(r.n))?,
        CheckName::Hecke => verify::check_hecke(&r.op, hecke_q)?,
        CheckName::Gp => verify::check_gp_relations(r.n),
        CheckName::Quadratic => verify::check_quadratic(r.n, &r.alpha, &r.beta)?,
    })
}

fn cmd_verify(op: &OpArgs, checks: &[CheckName], hecke_q: &str, out: &Option<PathBuf>) -> CliResult<ExitCode> {
    let resolved = op.resolve()?;
    let hecke_q: LaurentQP = hecke_q.parse()?;
    if checks.contains(&CheckName::Hecke) && !hecke_q.is_unit() {
        return Err(UsageError(format!("--hecke-q {hecke_q} is not a unit")));
    }
    let mut selected = checks.to_vec();
    selected.sort();
    selected.dedup();
    let mut w = open_output(out)?;
    let mut all_passed = true;
    for name in selected {
        let report = run_check(name, &resolved, &hecke_q)?;
        all_passed &= report.passed;
        emit_line(&mut *w, &report)?;
    }
    Ok(exit_for(all_passed))
}

fn cmd_identities(lo: i64, hi: i64, only: &[String], out: &Option<PathBuf>) -> CliResult<ExitCode> {
    let window = IntWindow::new(lo, hi, 5)?;
    let mut names: Vec<&str> = if only.is_empty() {
        oracle::ALL_NAMES.to_vec()
    } else {
        only.iter().map(String::as_str).collect()
    };
    if let Some(bad) = names.iter().find(|n| !oracle::ALL_NAMES.contains(n)) {
        return Err(UsageError(format!(
            "unknown identity {bad:?}; expected one of {}",
            oracle::ALL_NAMES.join(", ")
        )));
    }
    names.sort_unstable();
    names.dedup();
    let mut w = open_output(out)?;
    let mut all_passed = true;
    for name in names {
        let report = oracle::check_named(name, window).expect("name validated above");
        all_passed &= report.passed;
        emit_line(&mut *w, &report)?;
    }
    Ok(exit_for(all_passed))
}

#[derive(Serialize)]
struct DenseJson {
    n: usize,
    q: String,
    p: String,
    /// Row = flattened input pair, column = flattened output pair.
    rows: Vec<Vec<String>>,
}

fn cmd_eval(op: &OpArgs, q: &str, p: &str, format: Format, ybe: bool, out: &Option<PathBuf>) -> CliResult<ExitCode> {
    let resolved = op.resolve()?;
    let (qv, pv) = (parse_rational(q)?, parse_rational(p)?);
    let numeric: Endo2<Rational> = resolved.op.eval(&qv, &pv)?;
    let text = match format {
        Format::Csv => numeric.to_csv(),
        Format::Latex => numeric.to_latex(),
        Format::Json => {
            let dense = DenseJson {
                n: resolved.n,
                q: rational_to_string(&qv),
                p: rational_to_string(&pv),
                rows: numeric
                    .to_dense()
                    .iter()
                    .map(|row| row.iter().map(rational_to_string).collect())
                    .collect(),
            };
            serde_json::to_string(&dense)? + "\n"
        }
    };
    let mut w = open_output(out)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    if ybe {
        let report = verify::check_ybe(&numeric);
        emit_line(&mut io::stderr().lock(), &report)?;
        return Ok(exit_for(report.passed));
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn configure_threads() -> CliResult<()> {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads: usize = value
            .parse()
            .map_err(|_| UsageError(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    configure_threads()?;
    match &cli.command {
        Command::Gen { op, format, out } => cmd_gen(op, *format, out),
        Command::Verify {
            op,
            checks,
            hecke_q,
            out,
        } => cmd_verify(op, checks, hecke_q, out),
        Command::Identities { lo, hi, only, out } => cmd_identities(*lo, *hi, only, out),
        Command::Eval {
            op,
            q,
            p,
            format,
            ybe,
            out,
        } => cmd_eval(op, q, p, *format, *ybe, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
