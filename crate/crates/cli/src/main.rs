mod eval;
mod report;
mod suites;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use quatmod::qalg::QuatAlgebra;
use quatmod::tol::Tolerances;
use serde_json::{json, Value};

use crate::report::{run_checks, SuiteTotals};
use crate::suites::{Ctx, SUITES};

pub enum CliError {
    Usage(String),
    Domain(quatmod::Error),
}

impl From<quatmod::Error> for CliError {
    fn from(e: quatmod::Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "quatmod", version, about = "Verification suites and evaluators for quaternionic unitary groups")]
struct Cli {
    /// Print a one-line summary to stderr.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite: qalg, groups, symspace, doubling, lfun, eis or all.
    Verify(VerifyArgs),
    /// Truncated Dirichlet or standard L-value.
    Lvalue(eval::LvalueArgs),
    /// Gamma_m(s).
    Gamma(eval::GammaArgs),
    /// Reproducing constant c_k(s).
    Ck(eval::CkArgs),
    /// Algebraicity and nearly-holomorphic exponents for (n, k, mu).
    Exponent(eval::ExponentArgs),
    /// Pfaffian of a skew-symmetric complex matrix.
    Pfaffian(eval::PfaffianArgs),
    /// Diagonal embedding of points.
    EmbedIota(eval::IotaArgs),
    /// Diagonal embedding of group elements.
    EmbedRho(eval::RhoArgs),
    /// Coset representative tau_t.
    Coset(eval::CosetArgs),
    /// Fourier coefficient of the Eisenstein series at the special point.
    Fourier(eval::FourierArgs),
    /// Truncated Fourier expansion at the special point (m <= 2).
    FourierSum(eval::FourierSumArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Tolerance for numeric residuals.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pmax: u64,
    /// Include wall-clock timings (makes the report non-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    alpha: i64,
    #[arg(long, default_value_t = -7, allow_hyphen_values = true)]
    beta: i64,
}

fn verify(a: &VerifyArgs) -> Result<(Value, bool), CliError> {
    let suites: Vec<&str> = match a.suite.as_str() {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(CliError::Usage(format!("unknown suite {s:?}; expected one of {SUITES:?} or \"all\""))),
    };
    if !(a.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let tolerances = Tolerances { closure: a.tol, ..Tolerances::default() };
    let ctx = Ctx { alg: QuatAlgebra::new(a.alpha, a.beta)?, tol: a.tol, tolerances, pmax: a.pmax };
    let start = Instant::now();
    let mut totals = SuiteTotals::default();
    for name in suites {
        let index = SUITES.iter().position(|s| *s == name).unwrap_or(0);
        run_checks(name, index, &suites::checks(name, &ctx), a.seed, &mut totals);
    }
    let passed = totals.failures == 0;
    let mut report = json!({
        "command": "verify",
        "suite": a.suite,
        "seed": a.seed,
        "algebra": { "alpha": a.alpha, "beta": a.beta },
        "tolerance": tolerances,
        "pmax": a.pmax,
        "cases": totals.cases,
        "failures": totals.failures,
        "passed": passed,
        "checks": totals.checks,
        "failed_cases": totals.failed_cases,
    });
    if a.timing {
        totals.timing_ms.insert("total".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        report["timing_ms"] = Value::Object(totals.timing_ms);
    }
    Ok((report, passed))
}

fn dispatch(cli: &Cli) -> Result<(Value, bool), CliError> {
    let tol = Tolerances::default();
    let ok = |v: Value| Ok((v, true));
    match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Lvalue(a) => ok(eval::lvalue(a)?),
        Command::Gamma(a) => ok(eval::gamma(a)?),
        Command::Ck(a) => ok(eval::ck(a)?),
        Command::Exponent(a) => ok(eval::exponent(a)?),
        Command::Pfaffian(a) => ok(eval::pfaffian(a)?),
        Command::EmbedIota(a) => ok(eval::embed_iota(a, &tol)?),
        Command::EmbedRho(a) => ok(eval::embed_rho(a)?),
        Command::Coset(a) => ok(eval::coset(a)?),
        Command::Fourier(a) => ok(eval::fourier(a, &tol)?),
        Command::FourierSum(a) => ok(eval::fourier_sum(a, &tol)?),
    }
}

fn error_json(kind: &str, variant: Option<String>, message: String) -> Value {
    json!({ "error": { "kind": kind, "type": variant, "message": message } })
}

fn emit(v: &Value) {
    let _ = writeln!(std::io::stdout(), "{v}");
}

fn configure_threads() {
    if let Some(n) = std::env::var("QUATMOD_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let text = e.render().to_string();
            let msg = text.lines().take_while(|l| !l.is_empty()).collect::<Vec<_>>().join(" ");
            emit(&error_json("usage", None, msg.trim_start_matches("error: ").to_string()));
            return ExitCode::from(2);
        }
    };
    configure_threads();
    match dispatch(&cli) {
        Ok((v, passed)) => {
            emit(&v);
            if cli.human {
                if let Some(cases) = v.get("cases") {
                    eprintln!(
                        "verify {}: {} cases, {} failures, {}",
                        v["suite"].as_str().unwrap_or(""),
                        cases,
                        v["failures"],
                        if passed { "PASS" } else { "FAIL" }
                    );
                } else {
                    eprintln!("{}: {}", v["command"].as_str().unwrap_or(""), v["value"]);
                }
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            emit(&error_json("usage", None, msg));
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            let variant = format!("{e:?}").split('(').next().map(str::to_string);
            emit(&error_json("precondition", variant, e.to_string()));
            ExitCode::from(3)
        }
    }
}
