//! `prufer`: phase shifts, spectra and finite-size energies from the
//! command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prufer_core::{Error, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "prufer", version, about = "Scattering phase shifts and finite-size energies of 1D Fermi gases")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Potential as inline JSON or `@path` to a JSON file.
    #[arg(long, global = true, env = "PRUFER_POTENTIAL")]
    potential: Option<String>,
    #[arg(long, global = true, env = "PRUFER_ODE_TOL", default_value_t = 1e-10)]
    ode_tol: f64,
    #[arg(long, global = true, env = "PRUFER_K_TOL", default_value_t = 1e-12)]
    k_tol: f64,
    #[arg(long, global = true, env = "PRUFER_QUAD_TOL", default_value_t = 1e-10)]
    quad_tol: f64,
    /// Output file; stdout when absent.
    #[arg(long, global = true, env = "PRUFER_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "PRUFER_FORMAT", value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, env = "PRUFER_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// δ(k), δ'(k), ξ(k²) and ζ(k²) on a geometric k grid.
    PhaseShift {
        #[arg(long, default_value_t = 0.1)]
        kmin: f64,
        #[arg(long, default_value_t = 10.0)]
        kmax: f64,
        #[arg(long, default_value_t = 64)]
        count: usize,
    },
    /// Free and perturbed Dirichlet eigenvalues on (0, L).
    Spectrum {
        #[arg(long = "L")]
        length: f64,
        #[arg(long)]
        n_max: usize,
    },
    /// Σ (μₙ - λₙ) for each particle count.
    EnergyDiff {
        #[arg(long = "N", value_delimiter = ',', required = true)]
        counts: Vec<usize>,
        /// One length for all counts, or one per count.
        #[arg(long = "L", value_delimiter = ',', required = true)]
        lengths: Vec<f64>,
    },
    /// Finite-size coefficients along (N + a)/L = √E/π, with a limit summary.
    FiniteSize {
        #[arg(long = "E")]
        energy: f64,
        #[arg(long = "a", value_delimiter = ',', default_value = "0")]
        offsets: Vec<f64>,
        #[arg(long = "N", value_delimiter = ',', required = true)]
        counts: Vec<usize>,
        /// Explicit lengths, one per N; replaces the family and disables pass/fail.
        #[arg(long = "free-L", value_delimiter = ',', conflicts_with = "offsets")]
        free_lengths: Option<Vec<f64>>,
    },
    /// Run the self-check suite and print one line per check.
    Verify,
}

/// Failure of a CLI run, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
    #[error("{0} check(s) failed")]
    Verify(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_numeric() => 3,
            CliError::Core(_) => 2,
            CliError::Io { .. } => 4,
        }
    }
}

pub struct Context {
    pub tol: Tolerances,
    pub out: Option<PathBuf>,
    pub format: Format,
    potential: Option<String>,
}

impl Context {
    pub fn potential(&self) -> Result<prufer_core::Potential, CliError> {
        let spec = self
            .potential
            .as_deref()
            .ok_or_else(|| CliError::Usage("--potential is required for this subcommand".into()))?;
        let text = match spec.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
                context: format!("reading potential file {path}"),
                source,
            })?,
            None => spec.to_owned(),
        };
        Ok(prufer_core::Potential::from_json(&text)?)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let c = cli.common;
    if c.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(c.threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {} threads: {e}", c.threads)))?;
    }
    let tol = Tolerances {
        ode: c.ode_tol,
        k: c.k_tol,
        quad: c.quad_tol,
    };
    tol.validate()?;
    let ctx = Context {
        tol,
        out: c.out,
        format: c.format,
        potential: c.potential,
    };
    match cli.command {
        Command::PhaseShift { kmin, kmax, count } => commands::phase_shift(&ctx, kmin, kmax, count),
        Command::Spectrum { length, n_max } => commands::spectrum(&ctx, length, n_max),
        Command::EnergyDiff { counts, lengths } => commands::energy_diff(&ctx, &counts, &lengths),
        Command::FiniteSize {
            energy,
            offsets,
            counts,
            free_lengths,
        } => commands::finite_size(&ctx, energy, &offsets, &counts, free_lengths.as_deref()),
        Command::Verify => commands::verify(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
