//! `chiral-lab`: command-line front end for the verification checks.
//!
//! Exit codes: 0 every check passed, 1 some check failed, 2 usage, parse or
//! I/O error, 3 quadrature did not converge.

mod commands;
mod config;
mod output;

use chiral_lab::quadrature::QuadratureError;
use chiral_lab::scatter::ScatterError;
use chiral_lab::suite::{SuiteConfig, SuiteError};
use clap::{Args, Parser, Subcommand};
use config::RunConfig;
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }
}

impl From<ScatterError> for CliError {
    fn from(e: ScatterError) -> Self {
        match e {
            ScatterError::Quadrature(q @ QuadratureError::NonConvergence { .. }) => CliError::NonConvergence(q.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::NonConvergence(q) => CliError::NonConvergence(q.to_string()),
            SuiteError::Scatter(s) => s.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "chiral-lab", version, about = "Exact and numerical checks for the free fermion, inner functions and their S-matrix")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct Shared {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi triple product and charge-zero character checks.
    Character {
        /// Doubled truncation order (t-exponents up to order/2), at most 80.
        #[arg(long)]
        order: Option<u32>,
        /// Debug: perturb one coefficient so the comparison fails.
        #[arg(long)]
        corrupt: bool,
    },
    /// Exact mode-algebra checks on the truncated Fock space.
    FockCheck {
        /// Doubled energy cutoff, at most 16.
        #[arg(long)]
        emax: Option<u32>,
        /// Only check [J_m, J_n] for this pair, e.g. `1,-1`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        pair: Option<(i32, i32)>,
    },
    /// Longo-Witten matrix, check-conjugation, causality and the
    /// functional-equation probe for one inner function.
    InnerCheck {
        #[arg(long)]
        phi: Option<String>,
        /// Causality sample count.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Elastic amplitude |phi_tilde| over a log-uniform s-grid.
    Production {
        #[arg(long)]
        phi: Option<String>,
        /// Range `a:b:n`.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        /// Initial quadrature panels per axis.
        #[arg(long)]
        grid: Option<usize>,
        /// Panel doubling stops with exit code 3 beyond this many panels.
        #[arg(long)]
        max_panels: Option<usize>,
    },
    /// Raw phi'(p, q), or phi_tilde over an s-grid.
    Scatter {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, requires = "q")]
        p: Option<f64>,
        #[arg(long, requires = "p")]
        q: Option<f64>,
        /// Range `a:b:n`, used when `--p/--q` are absent.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        max_panels: Option<usize>,
    },
    /// Every numbered criterion; settings come from the `[suite]` table.
    ReportAll {
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        emax: Option<u32>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn parse_pair(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(',').ok_or("expected m,n")?;
    let m = a.trim().parse().map_err(|_| format!("`{a}` is not an integer"))?;
    let n = b.trim().parse().map_err(|_| format!("`{b}` is not an integer"))?;
    Ok((m, n))
}

const DEFAULT_PHI: &str = "exp:kappa=1,theta=0";
const DEFAULT_RANGE: &str = "0.1:10:50";
const DEFAULT_TOL: f64 = 1e-7;

fn run(command: Command, cfg: RunConfig) -> Result<output::Outcome, CliError> {
    match command {
        Command::Character { order, corrupt } => {
            let order = order.or(cfg.character.and_then(|c| c.order)).unwrap_or(40);
            commands::character(order, corrupt)
        }
        Command::FockCheck { emax, pair } => {
            let emax = emax.or(cfg.fock.and_then(|c| c.e2_max)).unwrap_or(12);
            commands::fock(emax, pair)
        }
        Command::InnerCheck { phi, grid } => {
            let sec = cfg.inner.unwrap_or_default();
            let phi = phi.or(sec.phi).unwrap_or_else(|| DEFAULT_PHI.into());
            commands::inner(&phi, grid.or(sec.grid).unwrap_or(1 << 14))
        }
        Command::Production { phi, s, tol, grid, max_panels } => {
            let sec = cfg.production.unwrap_or_default();
            let phi = phi.or(sec.phi).unwrap_or_else(|| DEFAULT_PHI.into());
            let s = commands::parse_range(&s.or(sec.s).unwrap_or_else(|| DEFAULT_RANGE.into()))?;
            let tol = tol.or(sec.tol).unwrap_or(DEFAULT_TOL);
            let quad = commands::quad(tol, grid.or(sec.grid), max_panels.or(sec.max_panels))?;
            commands::production(&phi, &s, &quad)
        }
        Command::Scatter { phi, p, q, s, tol, grid, max_panels } => {
            let sec = cfg.scatter.unwrap_or_default();
            let phi = phi.or(sec.phi).unwrap_or_else(|| DEFAULT_PHI.into());
            let s = commands::parse_range(&s.or(sec.s).unwrap_or_else(|| DEFAULT_RANGE.into()))?;
            let point = p.zip(q);
            let tol = tol.or(sec.tol).unwrap_or(DEFAULT_TOL);
            let quad = commands::quad(tol, grid.or(sec.grid), max_panels.or(sec.max_panels))?;
            commands::scatter(&phi, point, &s, &quad)
        }
        Command::ReportAll { order, emax, tol } => {
            let mut suite = cfg.suite.unwrap_or_else(SuiteConfig::default);
            if let Some(o) = order {
                suite.order = o;
            }
            if let Some(e) = emax {
                suite.e2_max = e;
            }
            if let Some(t) = tol {
                suite.tol = t;
            }
            commands::report_all(&suite)
        }
    }
}

fn output_settings(shared: &Shared, cfg: &RunConfig) -> Result<(Format, Option<PathBuf>), CliError> {
    let file = cfg.output.clone().unwrap_or_default();
    let format = match (shared.format, file.format) {
        (Some(f), _) => f,
        (None, Some(s)) => s.parse()?,
        (None, None) => Format::Json,
    };
    Ok((format, shared.out.clone().or(file.out)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let cfg = match &cli.shared.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let (format, out) = output_settings(&cli.shared, &cfg)?;
        let outcome = run(cli.command, cfg)?;
        output::emit(&outcome.render(format)?, out.as_deref())?;
        Ok::<_, CliError>(outcome.pass())
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("chiral-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
