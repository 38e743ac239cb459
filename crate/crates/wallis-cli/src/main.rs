//! Verification and evaluation front end for the product/gamma library.
//!
//! Three subcommands: `verify` runs a named invariant suite and exits 0 only
//! if every row passes, `eval` computes one case, `converge` prints a
//! truncation study toward a known limit. Usage and configuration problems
//! exit 2; failing rows exit 1.

mod config;
mod report;
mod suites;

use clap::{Parser, Subcommand};
use config::{apply_pairs, override_grid, parse_pairs, SweepConfig};
use report::{exit_code, render_converge, render_report, Format};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use suites::{run_converge, run_eval, run_suite, ConvergeTarget, EvalTarget, Suite};

#[derive(Parser)]
#[command(name = "wallis", version, about = "Infinite products, gamma kernels, and variational hydrogen spectra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite; exit 0 iff every row passes.
    Verify {
        /// Suite to run.
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        flags: Flags,
    },
    /// Evaluate a single case and print its report row.
    Eval {
        /// Quantity to evaluate.
        #[arg(value_enum)]
        target: EvalTarget,
        #[command(flatten)]
        flags: Flags,
    },
    /// Print a convergence table toward a known limit.
    Converge {
        /// Sequence to study.
        #[arg(value_enum)]
        target: ConvergeTarget,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(clap::Args)]
struct Flags {
    /// Product or trial exponent b; comma-separated values form a grid.
    #[arg(long, value_delimiter = ',')]
    b: Vec<f64>,
    /// Family offset a; comma-separated values form a grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<f64>,
    /// Ambient dimension N; comma-separated values form a grid.
    #[arg(long = "n-dim", value_delimiter = ',')]
    n_dim: Vec<u32>,
    /// Angular momentum; comma-separated values form a grid.
    #[arg(long, value_delimiter = ',')]
    ell: Vec<u32>,
    /// Continued-fraction argument s; comma-separated values form a grid.
    #[arg(long, value_delimiter = ',')]
    s: Vec<f64>,
    /// Nested-radical depth n; comma-separated values form a grid.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// Truncation indices for convergence tables.
    #[arg(long, value_delimiter = ',')]
    k: Vec<u64>,
    /// Continued-fraction depths (and radical depth for `eval radical`).
    #[arg(long, value_delimiter = ',')]
    depth: Vec<u64>,
    /// Acceptance tolerance (default 1e-9).
    #[arg(long)]
    tol: Option<f64>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value config file; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn merge(flags: &Flags) -> Result<SweepConfig, String> {
    let mut cfg = SweepConfig::default();
    if let Some(path) = &flags.config {
        let body = std::fs::read_to_string(path)
            .map_err(|e| format!("config {}: {e}", path.display()))?;
        let pairs = parse_pairs(&body)?;
        apply_pairs(&mut cfg, &pairs)?;
    }
    override_grid(&mut cfg.b, &flags.b);
    override_grid(&mut cfg.a, &flags.a);
    override_grid(&mut cfg.n_dim, &flags.n_dim);
    override_grid(&mut cfg.ell, &flags.ell);
    override_grid(&mut cfg.s, &flags.s);
    override_grid(&mut cfg.n, &flags.n);
    override_grid(&mut cfg.k, &flags.k);
    override_grid(&mut cfg.depth, &flags.depth);
    if let Some(t) = flags.tol {
        cfg.tol = t;
    }
    if let Some(f) = flags.format {
        cfg.format = f;
    }
    if let Some(o) = &flags.out {
        cfg.out = Some(o.clone());
    }
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err("tolerance must be positive and finite".into());
    }
    Ok(cfg)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Verify { suite, flags } => {
            let cfg = merge(&flags)?;
            let rows = run_suite(suite, &cfg)?;
            emit(&render_report(&rows, cfg.format), cfg.out.as_deref())?;
            Ok(ExitCode::from(exit_code(&rows) as u8))
        }
        Cmd::Eval { target, flags } => {
            let cfg = merge(&flags)?;
            let rows = run_eval(target, &cfg)?;
            emit(&render_report(&rows, cfg.format), cfg.out.as_deref())?;
            Ok(ExitCode::from(exit_code(&rows) as u8))
        }
        Cmd::Converge { target, flags } => {
            let cfg = merge(&flags)?;
            let rows = run_converge(target, &cfg)?;
            emit(&render_converge(&rows, cfg.format), cfg.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
