//! polyint: closed-form evaluation of the polylogarithmic Fermi-Dirac moment
//! integrals, verification sweeps against the quadrature oracle, and the
//! harmonic-number series behind them.
//!
//! Exit codes: 0 success/all-pass, 1 verification failure, 2 usage error,
//! 3 numerical non-convergence. Nothing else.

mod grid;
mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyint_core::{
    euler_sum_with_cap, evaluate_with_cap, integrate_line, known_closed_forms, Error,
    EulerSumSpec, IntegralParams, Sign, SumKind, DEFAULT_TERM_CAP,
};

use report::PointReport;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "polyint",
    version,
    about = "Evaluate x^p Li_t(+-e^{ax})/(1+e^{bx}) integrals in closed form, \
             verify them against double-exponential quadrature, and sum the \
             underlying harmonic series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one integral in closed form and print its A/B/C breakdown
    Eval(EvalArgs),
    /// Sweep a parameter grid, comparing closed form against quadrature
    Verify(VerifyArgs),
    /// Evaluate one linear or alternating harmonic series
    Sum(SumArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StreamFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    /// Sign of the exponential inside the polylogarithm
    #[arg(long, value_enum)]
    sign: SignArg,
    /// Growth rate inside the polylogarithm; a*b > 0
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Growth rate in the Fermi factor; a*b > 0
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    /// Power of x under the integral
    #[arg(long)]
    p: usize,
    /// Polylogarithm order; t >= 1
    #[arg(long)]
    t: usize,
    /// Tolerance passed to the internal series accelerations
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
    format: EvalFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// `default` for the built-in 384-point sweep, or a CSV file path
    #[arg(long, default_value = "default")]
    grid: String,
    /// A point passes when abs or rel difference is within this
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Worker threads over grid points; output order is unaffected
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = StreamFormat::Json)]
    format: StreamFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Plain,
    Alt,
}

#[derive(Args)]
struct SumArgs {
    /// plain: H^{(p)}_{rn}/n^t summed over n; alt: with (-1)^{n+1}
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Order of the harmonic numbers; p >= 1
    #[arg(long)]
    p: usize,
    /// Power of n in the denominator; plain sums need t >= 2
    #[arg(long)]
    t: usize,
    /// Index scale inside the harmonic number; r > 0
    #[arg(long)]
    r: f64,
    /// Tolerance for the accelerated series value
    #[arg(long, default_value_t = 1e-11)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match term_cap() {
        Ok(cap) => cap,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let code = match cli.command {
        Command::Eval(args) => cmd_eval(args, cap),
        Command::Verify(args) => cmd_verify(args, cap),
        Command::Sum(args) => cmd_sum(args, cap),
    };
    ExitCode::from(code)
}

/// Series-term budget, overridable through POLYINT_MAX_TERMS.
fn term_cap() -> Result<usize, String> {
    match std::env::var("POLYINT_MAX_TERMS") {
        Ok(value) => value
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("POLYINT_MAX_TERMS must be a positive integer, got `{value}`")),
        Err(_) => Ok(DEFAULT_TERM_CAP),
    }
}

fn error_exit(e: &Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::NonConvergence(_) => EXIT_NO_CONVERGENCE,
        _ => EXIT_USAGE,
    }
}

fn cmd_eval(args: EvalArgs, cap: usize) -> u8 {
    let params = match IntegralParams::new(args.sign.into(), args.a, args.b, args.p, args.t) {
        Ok(p) => p,
        Err(e) => return error_exit(&e),
    };
    let bd = match evaluate_with_cap(params, args.tol, cap) {
        Ok(bd) => bd,
        Err(e) => return error_exit(&e),
    };
    match args.format {
        EvalFormat::Text => println!("{}", report::eval_text(params, &bd, args.tol)),
        EvalFormat::Json => println!("{}", report::eval_json_line(params, &bd, args.tol)),
        EvalFormat::Csv => {
            println!("{}", report::csv_header(&report::EVAL_FIELDS));
            println!("{}", report::eval_csv_line(params, &bd, args.tol));
        }
    }
    EXIT_OK
}

/// Closed form and oracle for one grid point, timed together.
fn verify_point(params: IntegralParams, tol: f64, cap: usize) -> Result<PointReport, Error> {
    let started = Instant::now();
    let breakdown = evaluate_with_cap(params, tol, cap)?;
    let oracle = integrate_line(params, tol)?;
    if oracle.abs_error_estimate > tol {
        return Err(Error::NonConvergence(
            "oracle error estimate stayed above the tolerance at the level cap",
        ));
    }
    let abs_diff = (breakdown.total - oracle.value).norm();
    let denom = breakdown.total.norm().max(oracle.value.norm());
    let rel_diff = if denom == 0.0 { 0.0 } else { abs_diff / denom };
    // report invariant: pass <=> abs_diff <= tol or rel_diff <= tol
    let pass = abs_diff <= tol || rel_diff <= tol;
    Ok(PointReport {
        params,
        breakdown,
        oracle: oracle.value,
        abs_diff,
        rel_diff,
        tol,
        pass,
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

fn cmd_verify(args: VerifyArgs, cap: usize) -> u8 {
    if args.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return EXIT_USAGE;
    }
    let points = if args.grid == "default" {
        grid::default_grid()
    } else {
        match grid::parse_grid_file(Path::new(&args.grid)) {
            Ok(points) => points,
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_USAGE;
            }
        }
    };

    let n = points.len();
    let jobs = args.jobs.min(n);
    let mut results: Vec<Option<Result<PointReport, Error>>> = Vec::new();
    results.resize_with(n, || None);

    // contiguous chunks so each index is produced exactly once; the output
    // below replays them in grid order regardless of completion order
    let chunk_size = n.div_ceil(jobs);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (ci, chunk) in points.chunks(chunk_size).enumerate() {
            let tol = args.tol;
            handles.push(scope.spawn(move || {
                chunk
                    .iter()
                    .enumerate()
                    .map(|(i, &params)| (ci * chunk_size + i, verify_point(params, tol, cap)))
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            for (index, result) in handle.join().expect("verification worker panicked") {
                results[index] = Some(result);
            }
        }
    });

    if matches!(args.format, StreamFormat::Csv) {
        println!("{}", report::csv_header(&report::VERIFY_FIELDS));
    }
    let mut all_pass = true;
    let mut worst: u8 = EXIT_OK;
    for (params, slot) in points.iter().zip(results.into_iter()) {
        match slot.expect("every grid index filled") {
            Ok(point) => {
                all_pass &= point.pass;
                match args.format {
                    StreamFormat::Json => println!("{}", report::verify_json_line(&point)),
                    StreamFormat::Csv => println!("{}", report::verify_csv_line(&point)),
                }
            }
            Err(e) => {
                eprintln!(
                    "error: point ({}, a={}, b={}, p={}, t={}): {e}",
                    params.sign, params.a, params.b, params.p, params.t
                );
                let code = match e {
                    Error::NonConvergence(_) => EXIT_NO_CONVERGENCE,
                    _ => EXIT_USAGE,
                };
                worst = worst.max(code);
            }
        }
    }
    if worst != EXIT_OK {
        worst
    } else if all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    }
}

fn cmd_sum(args: SumArgs, cap: usize) -> u8 {
    let kind = match args.kind {
        KindArg::Plain => SumKind::Plain,
        KindArg::Alt => SumKind::Alternating,
    };
    let spec = match EulerSumSpec::new(kind, args.p, args.t, args.r) {
        Ok(spec) => spec,
        Err(e) => return error_exit(&e),
    };
    let result = match euler_sum_with_cap(spec, args.tol, cap) {
        Ok(r) => r,
        Err(e) => return error_exit(&e),
    };
    println!(
        "S({kind}, p={p}, t={t}, r={r})\n\
         value     = {value}\n\
         est error = {est:e}\n\
         terms     = {terms}\n\
         converged = {converged}",
        kind = spec.kind,
        p = spec.p,
        t = spec.t,
        r = spec.r,
        value = report::fmt_float(result.value),
        est = result.abs_error_estimate,
        terms = result.terms_used,
        converged = result.converged,
    );
    if let Some(known) = known_closed_forms().into_iter().find(|k| k.spec == spec) {
        println!(
            "closed form [{label}]\n\
             value     = {value}\n\
             abs diff  = {diff:e}",
            label = known.label,
            value = report::fmt_float(known.value),
            diff = (result.value - known.value).abs(),
        );
    }
    if result.converged {
        EXIT_OK
    } else {
        eprintln!("error: series did not converge within {} terms", cap);
        EXIT_NO_CONVERGENCE
    }
}
