//! `tensor-rho` command-line front end.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 solver did not converge,
//! 3 tensor is reducible.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use tensor_rho::oracle::power_iteration_default;
use tensor_rho::{
    add_identity_shift, fmt_sig, irreducible_iterative, random_tensor, read_tensor, solve,
    write_tensor, write_trace_csv, Config, Error, Tensor, DEFAULT_MAX_ENTRIES,
};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_CONVERGED: u8 = 2;
const EXIT_REDUCIBLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tensor-rho",
    version,
    about = "Spectral radius of nonnegative tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the spectral radius and Perron vector of a tensor file.
    Solve {
        path: PathBuf,
        /// Identity shift added before iterating.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Stop once the bound gap R - r is at most this.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        /// Write the per-iteration bounds as CSV.
        #[arg(long, value_name = "PATH")]
        trace_csv: Option<PathBuf>,
        /// Also run the power-iteration reference and print its bracket.
        #[arg(long)]
        oracle: bool,
        /// Scale the eigenvector to unit maximum entry.
        #[arg(long)]
        normalize: bool,
    },
    /// Decide whether a tensor file is irreducible.
    Check { path: PathBuf },
    /// Generate a seeded tensor with entries uniform on [0, 10].
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Solve a batch of seeded random tensors and print one row per instance:
    /// `(n,m), k, rho_shifted, gap, residual`.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Solve {
            path,
            alpha,
            tol,
            max_iter,
            trace_csv,
            oracle,
            normalize,
        } => {
            let config = Config {
                alpha,
                tol,
                max_iter,
                trace: true,
                normalize,
            };
            config.validate()?;
            run_solve(&path, &config, trace_csv.as_deref(), oracle)
        }
        Command::Check { path } => run_check(&path),
        Command::Random { m, n, seed, out } => run_random(m, n, seed, out.as_deref()),
        Command::Bench { n, m, count, seed } => run_bench(n, m, count, seed),
    }
}

fn g(v: f64) -> String {
    fmt_sig(v, 6)
}

fn vector(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| g(*x)).collect();
    format!("({})", items.join(", "))
}

fn run_solve(
    path: &Path,
    config: &Config,
    trace_csv: Option<&Path>,
    oracle: bool,
) -> Result<u8, Error> {
    let b: Tensor = read_tensor(path)?;
    let report = solve(&b, config)?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "rho = {}", g(report.rho))?;
    writeln!(out, "rho_shifted = {}", g(report.rho_shifted))?;
    writeln!(out, "alpha = {}", g(report.alpha))?;
    writeln!(out, "bounds = [{}, {}]", g(report.lower), g(report.upper))?;
    writeln!(out, "gap = {}", g(report.final_gap))?;
    writeln!(out, "iterations = {}", report.iterations)?;
    writeln!(out, "converged = {}", report.converged)?;
    writeln!(out, "residual = {}", g(report.residual))?;
    writeln!(out, "eigenvector = {}", vector(&report.eigenvector))?;
    if oracle {
        let a = add_identity_shift(&b, config.alpha)?;
        let est = power_iteration_default(&a)?;
        writeln!(
            out,
            "oracle = [{}, {}] (iterations = {}, converged = {})",
            g(est.lower),
            g(est.upper),
            est.iterations,
            est.converged
        )?;
    }
    out.flush()?;

    if let Some(p) = trace_csv {
        write_trace_csv(&report.trace, BufWriter::new(File::create(p)?))?;
    }
    Ok(if report.converged {
        0
    } else {
        EXIT_NOT_CONVERGED
    })
}

fn run_check(path: &Path) -> Result<u8, Error> {
    let b: Tensor = read_tensor(path)?;
    let verdict = irreducible_iterative(&b);
    println!("{verdict}");
    Ok(if verdict.irreducible {
        0
    } else {
        EXIT_REDUCIBLE
    })
}

fn run_random(m: usize, n: usize, seed: u64, out: Option<&Path>) -> Result<u8, Error> {
    let t: Tensor = random_tensor(m, n, seed)?;
    match out {
        Some(p) => write_tensor(&t, BufWriter::new(File::create(p)?))?,
        None => write_tensor(&t, io::stdout().lock())?,
    }
    Ok(0)
}

fn run_bench(n: usize, m: usize, count: usize, seed: u64) -> Result<u8, Error> {
    let fits = u32::try_from(m)
        .ok()
        .and_then(|e| n.checked_pow(e))
        .is_some_and(|len| len <= DEFAULT_MAX_ENTRIES);
    if !fits {
        return Err(Error::ResourceLimit {
            order: m,
            dim: n,
            cap: DEFAULT_MAX_ENTRIES,
        });
    }
    let config = Config {
        trace: false,
        ..Config::default()
    };
    let rows: Vec<Result<(String, bool), Error>> = (0..count as u64)
        .into_par_iter()
        .map(|j| {
            let b: Tensor = random_tensor(m, n, seed.wrapping_add(j))?;
            let r = solve(&b, &config)?;
            let line = format!(
                "({n},{m}), {}, {}, {}, {}",
                r.iterations,
                g(r.rho_shifted),
                g(r.final_gap),
                g(r.residual)
            );
            Ok((line, r.converged))
        })
        .collect();

    let mut all_converged = true;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for row in rows {
        let (line, converged) = row?;
        all_converged &= converged;
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(if all_converged { 0 } else { EXIT_NOT_CONVERGED })
}
