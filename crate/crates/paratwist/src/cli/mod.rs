//! Command-line front end: argument parsing, dispatch and JSON reports.
//!
//! Every command produces a report `{command, parameters, passed, result,
//! timestamp}`. The report goes to `--report` (or standard output), a short
//! summary to standard error. Exit codes: 0 all checks pass, 1 a check
//! failed or a computation could not be completed, 2 usage error.

mod compute;
mod verify;

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::forms::FormsError;
use crate::fourier::{point, FourierError, C2};
use crate::hecke::HeckeError;
use crate::twist::TwistError;

#[derive(Debug, Parser, Serialize)]
#[command(name = "paratwist", version, about = "Quadratic twists of paramodular forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Index window `N_MAX,M_MAX`; its meaning depends on the command.
    #[arg(long, global = true, value_parser = parse_window)]
    pub window: Option<(i64, i64)>,
    /// Relative tail bound for numeric evaluation.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub precision: f64,
    /// Maximal discretization depth for local identities.
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Twist a Siegel expansion of level N into level N p^4.
    Twist(TwistArgs),
    /// Degree-one twist of a q-expansion and its Hecke commutation.
    Gl2Twist(Gl2Args),
    /// Apply T(1,1,l,l), T(1,l,l,l^2) or the Atkin-Lehner element.
    Hecke(HeckeArgs),
    /// Generate a test form.
    MakeForm(MakeFormArgs),
    /// Evaluate an expansion at a point.
    Eval(EvalArgs),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinForm {
    /// The Gritsenko lift of `phi_10,1`.
    Chi10,
    /// Its square, by exact convolution.
    Chi10Squared,
}

#[derive(Debug, Args, Serialize)]
pub struct TwistArgs {
    /// Siegel expansion to twist.
    #[arg(long, required_unless_present = "form", conflicts_with = "form")]
    pub input: Option<PathBuf>,
    /// A built-in form with coefficients computed on demand, instead of `--input`.
    #[arg(long, value_enum)]
    pub form: Option<BuiltinForm>,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Where to write the twisted expansion.
    #[arg(long, alias = "output")]
    pub out: Option<PathBuf>,
    /// Also check lattice support, nonvanishing and invariance at sample points.
    #[arg(long)]
    pub check: bool,
    /// Sample points `x11,x12,x22:y11,y12,y22` for the invariance check.
    #[arg(long = "point")]
    pub points: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct Gl2Args {
    /// Elliptic expansion (default: Delta).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Twisting primes.
    #[arg(long = "p", default_values_t = [3, 5])]
    pub primes: Vec<u64>,
    /// Truncation of the default Delta expansion.
    #[arg(long, default_value_t = 40)]
    pub terms: usize,
    /// Hecke primes for the commutation check.
    #[arg(long = "ell", default_values_t = [2])]
    pub ells: Vec<u64>,
    /// Write the twist by the first prime here.
    #[arg(long, alias = "output")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
pub enum OpArg {
    #[value(name = "T1", alias = "t1")]
    T1,
    #[value(name = "T2", alias = "t2")]
    T2,
    #[value(name = "AL", alias = "al")]
    Al,
}

#[derive(Debug, Args, Serialize)]
pub struct HeckeArgs {
    #[arg(long, value_enum)]
    pub op: OpArg,
    #[arg(long)]
    pub ell: u64,
    /// Siegel expansion.
    #[arg(long)]
    pub input: PathBuf,
    /// Write the exact T1 image here (level prime to l).
    #[arg(long, alias = "output")]
    pub out: Option<PathBuf>,
    /// Evaluation points `x11,x12,x22:y11,y12,y22`.
    #[arg(long = "point")]
    pub points: Vec<String>,
    /// Lift choice for the Atkin-Lehner element.
    #[arg(long, default_value_t = 0)]
    pub shift: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    Delta,
    Eisenstein,
    JacobiEis,
    Phi10,
    Lift,
    LiftSquare,
}

#[derive(Debug, Args, Serialize)]
pub struct MakeFormArgs {
    #[arg(long, value_enum)]
    pub kind: FormKind,
    /// Weight for the Eisenstein kinds.
    #[arg(long)]
    pub weight: Option<i64>,
    /// q-expansion length, or the largest discriminant of a Jacobi table.
    #[arg(long)]
    pub terms: Option<usize>,
    /// For lifts: store the reduced classes up to this discriminant instead of
    /// the `--window` box (input for `twist` and exact Hecke images).
    #[arg(long)]
    pub disc: Option<i128>,
    #[arg(long, alias = "output")]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// `x11,x12,x22:y11,y12,y22` for Siegel, `x:y` for elliptic expansions.
    #[arg(long = "point", required = true)]
    pub points: Vec<String>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCommand {
    /// Coset representatives of the Hecke double cosets.
    Cosets(CosetArgs),
    /// Each twist family against its word description.
    Consistency(ConsistencyArgs),
    /// Local operator identities as coset sums.
    Local(LocalArgs),
    /// Commutation of the twist with the Hecke operators.
    Commutation(CommutationArgs),
    /// Character sums, property suites and oracle equality.
    Identities(IdentitiesArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
pub enum CosetOpArg {
    #[value(name = "T1", alias = "t1")]
    T1,
    #[value(name = "T2", alias = "t2")]
    T2,
}

#[derive(Debug, Args, Serialize)]
pub struct CosetArgs {
    /// Operator (default: both).
    #[arg(long, value_enum)]
    pub op: Option<CosetOpArg>,
    /// Prime (default: 2 and 3).
    #[arg(long)]
    pub ell: Option<u64>,
    /// Level exponent (default: 0, 1, 2).
    #[arg(long)]
    pub r: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct ConsistencyArgs {
    /// Prime (default: all families at 3 and family 10 at 5).
    #[arg(long)]
    pub p: Option<u64>,
    /// Families to check (default: all).
    #[arg(long = "family")]
    pub families: Vec<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct LocalArgs {
    /// `thm41`, a lemma or step name, `lemma-p3`, `lemma-p3-literal` or `all`.
    #[arg(long, default_value = "all")]
    pub target: String,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct CommutationArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 2)]
    pub ell: u64,
    /// Siegel expansion of F (default: lifted chi_10).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Also check the exact relation on chi_10^2.
    #[arg(long)]
    pub square: bool,
    /// Sample points for the numeric relations.
    #[arg(long = "point")]
    pub points: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct IdentitiesArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Cases for the multiplier and factorization suites.
    #[arg(long, default_value_t = 1000)]
    pub cases: u64,
    /// Random single-coefficient inputs for the oracle comparison.
    #[arg(long, default_value_t = 20)]
    pub oracle_cases: u64,
}

/// Failure of a command before its checks could be judged.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Result of a command: whether its checks passed, the JSON body and summary lines.
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
    pub summary: Vec<String>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected N_MAX,M_MAX, got {s:?}"))?;
    let n = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let m = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    if n < 0 || m < 0 {
        return Err("window bounds must be nonnegative".into());
    }
    Ok((n, m))
}

fn parse_reals(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad number {x:?}: {e}")))
        })
        .collect()
}

/// Parse `x11,x12,x22:y11,y12,y22` into a point of the Siegel upper half space.
pub fn parse_point(s: &str) -> Result<C2, CliError> {
    let (re, im) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("point {s:?} must look like x11,x12,x22:y11,y12,y22")))?;
    let (re, im) = (parse_reals(re)?, parse_reals(im)?);
    if re.len() != 3 || im.len() != 3 {
        return Err(CliError::Usage(format!("point {s:?} needs three real and three imaginary parts")));
    }
    if im[0] <= 0.0 || im[0] * im[2] - im[1] * im[1] <= 0.0 {
        return Err(CliError::Usage(format!("imaginary part of {s:?} is not positive definite")));
    }
    Ok(point([re[0], re[1], re[2]], [im[0], im[1], im[2]]))
}

fn points_or(raw: &[String], default: Vec<C2>) -> Result<Vec<C2>, CliError> {
    if raw.is_empty() {
        Ok(default)
    } else {
        raw.iter().map(|s| parse_point(s)).collect()
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Twist(_) => "twist",
        Command::Gl2Twist(_) => "gl2-twist",
        Command::Hecke(_) => "hecke",
        Command::MakeForm(_) => "make-form",
        Command::Eval(_) => "eval",
        Command::Verify(VerifyCommand::Cosets(_)) => "verify cosets",
        Command::Verify(VerifyCommand::Consistency(_)) => "verify consistency",
        Command::Verify(VerifyCommand::Local(_)) => "verify local",
        Command::Verify(VerifyCommand::Commutation(_)) => "verify commutation",
        Command::Verify(VerifyCommand::Identities(_)) => "verify identities",
    }
}

/// Run a parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Twist(a) => compute::twist(a, g),
        Command::Gl2Twist(a) => compute::gl2_twist(a),
        Command::Hecke(a) => compute::hecke(a, g),
        Command::MakeForm(a) => compute::make_form(a, g),
        Command::Eval(a) => compute::eval(a, g),
        Command::Verify(VerifyCommand::Cosets(a)) => verify::cosets(a),
        Command::Verify(VerifyCommand::Consistency(a)) => verify::consistency(a),
        Command::Verify(VerifyCommand::Local(a)) => verify::local(a, g),
        Command::Verify(VerifyCommand::Commutation(a)) => verify::commutation(a, g),
        Command::Verify(VerifyCommand::Identities(a)) => verify::identities(a, g),
    }
}

/// The report for an outcome or an error.
pub fn report(cli: &Cli, outcome: &Result<Outcome, CliError>) -> Value {
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let parameters = serde_json::to_value(cli).unwrap_or(Value::Null);
    match outcome {
        Ok(o) => json!({
            "command": command_name(&cli.command),
            "parameters": parameters,
            "passed": o.passed,
            "result": o.result,
            "timestamp": timestamp,
        }),
        Err(e) => json!({
            "command": command_name(&cli.command),
            "parameters": parameters,
            "passed": false,
            "error": e.to_string(),
            "timestamp": timestamp,
        }),
    }
}

/// Parse the arguments, run, write the report and return the exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let outcome = run(&cli);
    let body = report(&cli, &outcome);
    let text = serde_json::to_string_pretty(&body).expect("report serializes");
    let written = match &cli.global.report {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 2;
    }
    let name = command_name(&cli.command);
    match outcome {
        Ok(o) => {
            for line in &o.summary {
                eprintln!("{line}");
            }
            eprintln!("{name}: {}", if o.passed { "PASS" } else { "FAIL" });
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{name}: error: {e}");
            e.exit_code()
        }
    }
}
