mod commands;
mod parse;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finpart::exec::Execution;
use finpart::hadamard::FpOptions;
use finpart::ortho::{Method, OrthoFamily};
use finpart::poly::Polynomial;
use num_complex::Complex64;
use serde::Serialize;

use commands::{BasisArg, MethodArg};
use report::{render, write_atomic, FamilyEcho, Format, Report, Tabular, SCHEMA};

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const TOL_RANGE: (f64, f64) = (1e-14, 1e-4);
const N_MAX_LIMIT: usize = 16;

#[derive(Parser)]
#[command(
    name = "finpart",
    version,
    about = "Finite-part integrals, generalized Laguerre/Jacobi orthogonality and Riemann-Hilbert checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix of the bilinear form in a polynomial basis.
    Gram {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "moments")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "orthogonal")]
        basis: BasisArg,
    },
    /// Diagonal entries against the closed-form norms.
    Norms {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "moments")]
        method: SingleMethod,
    },
    /// Jump, ODE, decay, endpoint and normalization checks of the
    /// Riemann-Hilbert solution of degree n.
    RhCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Finite-part integral of poly times the family weight.
    FinitePart {
        #[command(flatten)]
        common: Common,
        /// Ascending coefficients, comma separated, e.g. "1,0,-0.5+2i".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Cauchy transform of poly times the family weight at the given points.
    CauchyEval {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Evaluation point; repeat for several.
        #[arg(long = "z", required = true, allow_hyphen_values = true, value_parser = parse::parse_complex)]
        z: Vec<Complex64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Laguerre,
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SingleMethod {
    Moments,
    Quadrature,
}

impl From<SingleMethod> for Method {
    fn from(m: SingleMethod) -> Self {
        match m {
            SingleMethod::Moments => Method::Moments,
            SingleMethod::Quadrature => Method::Quadrature,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Complex parameter such as 0.5 or -1.3+0.7i.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::parse_complex)]
    alpha: Complex64,
    /// Second exponent (Jacobi only).
    #[arg(long, allow_hyphen_values = true, value_parser = parse::parse_complex)]
    beta: Option<Complex64>,
    /// Target absolute tolerance, in [1e-14, 1e-4].
    #[arg(long, env = "FINPART_TOL", default_value_t = finpart::hadamard::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
    /// Report file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the data-parallel loops on one thread.
    #[arg(long)]
    sequential: bool,
}

struct Validated {
    family: OrthoFamily,
    fp: FpOptions,
    exec: Execution,
}

fn validate(c: &Common) -> Result<Validated, String> {
    if !(TOL_RANGE.0..=TOL_RANGE.1).contains(&c.tol) {
        return Err(format!("--tol {} outside [{:e}, {:e}]", c.tol, TOL_RANGE.0, TOL_RANGE.1));
    }
    let family = match (c.family, c.beta) {
        (FamilyArg::Laguerre, None) => OrthoFamily::laguerre(c.alpha),
        (FamilyArg::Jacobi, Some(b)) => OrthoFamily::jacobi(c.alpha, b),
        (FamilyArg::Laguerre, Some(_)) => return Err("--beta applies to the jacobi family only".into()),
        (FamilyArg::Jacobi, None) => return Err("the jacobi family needs --beta".into()),
    }
    .map_err(|e| format!("invalid family parameters: {e}"))?;
    let exec = if c.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    Ok(Validated {
        family,
        fp: FpOptions::with_tol(c.tol),
        exec,
    })
}

fn check_n_max(n: usize) -> Result<(), String> {
    if n > N_MAX_LIMIT {
        Err(format!("--n-max {n} exceeds {N_MAX_LIMIT}"))
    } else {
        Ok(())
    }
}

fn parse_poly(s: &str) -> Result<Polynomial, String> {
    let coeffs = parse::parse_coeffs(s).map_err(|e| format!("--poly: {e}"))?;
    if coeffs.len() > N_MAX_LIMIT + 1 {
        return Err(format!("--poly has degree above {N_MAX_LIMIT}"));
    }
    Ok(Polynomial::new(coeffs))
}

fn echo(family: &OrthoFamily) -> FamilyEcho {
    FamilyEcho {
        kind: family.kind().name(),
        alpha: family.alpha().into(),
        beta: family.beta_param().map(|b| b.value().into()),
    }
}

fn emit<T: Serialize + Tabular>(
    command: &'static str,
    common: &Common,
    v: &Validated,
    outcome: Result<T, report::Failure>,
) -> ExitCode {
    let (status, result, failure, code) = match outcome {
        Ok(r) => ("ok", Some(r), None, ExitCode::SUCCESS),
        Err(f) => ("error", None, Some(f), ExitCode::from(EXIT_NUMERIC)),
    };
    let report = Report {
        schema: SCHEMA,
        command,
        status,
        family: echo(&v.family),
        tol: common.tol,
        result,
        failure,
    };
    let written = render(&report, common.output).and_then(|bytes| {
        match &common.out {
            Some(path) => write_atomic(path, &bytes)?,
            None => std::io::stdout().write_all(&bytes)?,
        }
        Ok(())
    });
    if let Some(f) = &report.failure {
        eprintln!("finpart: {} failed: {}", f.operation, f.message);
    }
    match written {
        Ok(()) => code,
        Err(e) => {
            eprintln!("finpart: cannot write report: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    Ok(match &cli.command {
        Command::Gram {
            common,
            n_max,
            method,
            basis,
        } => {
            check_n_max(*n_max)?;
            let v = validate(common)?;
            let out = commands::run_gram(&v.family, *n_max, *basis, *method, v.fp, v.exec);
            emit("gram", common, &v, out)
        }
        Command::Norms { common, n_max, method } => {
            check_n_max(*n_max)?;
            let v = validate(common)?;
            let out = commands::run_norms(&v.family, *n_max, (*method).into(), v.fp, v.exec);
            emit("norms", common, &v, out)
        }
        Command::RhCheck { common, n } => {
            if *n == 0 {
                return Err("--n must be at least 1".into());
            }
            check_n_max(*n)?;
            let v = validate(common)?;
            let out = commands::run_rh(&v.family, *n, v.fp, v.exec);
            emit("rh-check", common, &v, out)
        }
        Command::FinitePart { common, poly } => {
            let p = parse_poly(poly)?;
            let v = validate(common)?;
            let out = commands::run_finite_part(&v.family, &p, v.fp);
            emit("finite-part", common, &v, out)
        }
        Command::CauchyEval { common, poly, z } => {
            let p = parse_poly(poly)?;
            let v = validate(common)?;
            let out = commands::run_cauchy(&v.family, &p, z, v.fp, v.exec);
            emit("cauchy-eval", common, &v, out)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("finpart: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
