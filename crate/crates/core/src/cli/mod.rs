//! Batch front end: every subcommand resolves a [`RunConfig`], evaluates the
//! library, and writes one CSV table.
//!
//! Exit status: 0 on success, 2 for configuration errors, 3 for numerical
//! failures.

mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{ConfigError, RunConfig};
pub use output::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "casimir-drift", version, about = "Casimir-Lifshitz free energy, pressure and entropy of low-carrier-density plates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Temperature-dependent material quantities.
    Materials(Flags),
    /// Reflection amplitudes on a (xi, k) grid.
    Reflect(Flags),
    /// Free energy per area versus distance.
    Energy(Flags),
    /// Pressure versus distance.
    Pressure(Flags),
    /// Entropy per area at one or more temperatures.
    Entropy(Flags),
    /// Free energies normalised to the bare model versus distance.
    Fig1(Flags),
    /// Low-temperature entropy sweep with a trend verdict.
    Nernst(Flags),
    /// Compares drift amplitudes with the nonlocal-tensor formulation.
    NonlocalVerify(Flags),
    /// Mode function g on a (xi, k) grid at several temperatures.
    Modeplot(Flags),
}

impl Command {
    fn parts(&self) -> (&'static str, &Flags) {
        match self {
            Command::Materials(f) => ("materials", f),
            Command::Reflect(f) => ("reflect", f),
            Command::Energy(f) => ("energy", f),
            Command::Pressure(f) => ("pressure", f),
            Command::Entropy(f) => ("entropy", f),
            Command::Fig1(f) => ("fig1", f),
            Command::Nernst(f) => ("nernst", f),
            Command::NonlocalVerify(f) => ("nonlocal-verify", f),
            Command::Modeplot(f) => ("modeplot", f),
        }
    }
}

#[derive(Debug, Clone, Args)]
struct Flags {
    /// TOML config file, or a CSV written by an earlier run.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ge, Si, or all.
    #[arg(long)]
    material: Option<String>,
    /// bare, cond, drift, or nonlocal.
    #[arg(long)]
    model: Option<String>,
    /// Temperature, K.
    #[arg(long = "T", value_name = "K")]
    temperature: Option<f64>,
    /// Distances in um: a value, a list a,b,c, or start:stop:logN.
    #[arg(long = "d", value_name = "UM")]
    distances: Option<String>,
    /// dc resistivity for the conductivity model, ohm cm.
    #[arg(long, value_name = "OHM_CM")]
    sigma0: Option<f64>,
    #[arg(long = "tol-quad")]
    tol_quad: Option<f64>,
    #[arg(long = "tol-sum")]
    tol_sum: Option<f64>,
    /// Temperature list for sweeps, K.
    #[arg(long, value_name = "K")]
    temps: Option<String>,
    /// Imaginary frequencies, rad/s.
    #[arg(long)]
    xi: Option<String>,
    /// In-plane wavevectors, 1/cm.
    #[arg(long)]
    k: Option<String>,
    /// Entropy finite-difference step, K.
    #[arg(long = "fd-step")]
    fd_step: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> config::Overrides {
        config::Overrides {
            material: self.material.clone(),
            model: self.model.clone(),
            temperature: self.temperature,
            distances: self.distances.clone(),
            sigma0: self.sigma0,
            tol_quad: self.tol_quad,
            tol_sum: self.tol_sum,
            temperatures: self.temps.clone(),
            xi: self.xi.clone(),
            k: self.k.clone(),
            fd_step: self.fd_step,
        }
    }
}

/// Resolves the configuration for `command` and evaluates it.
pub fn execute(command: &str, file: &config::FileConfig, flags: &config::Overrides) -> Result<(RunConfig, Table), CliError> {
    let defaults = commands::defaults(command);
    let cfg = RunConfig::resolve(command, &defaults, file, flags)?;
    let table = commands::evaluate(&cfg)?;
    Ok((cfg, table))
}

/// Parses `argv` (program name first), runs, and writes to `out` / `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_CONFIG
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let (name, flags) = cli.command.parts();
    let result = (|| -> Result<(String, Option<PathBuf>), CliError> {
        let file = match &flags.config {
            Some(p) => config::FileConfig::load(p)?,
            None => config::FileConfig::default(),
        };
        let (cfg, table) = execute(name, &file, &flags.overrides())?;
        Ok((table.render(&cfg), flags.out.clone()))
    })();
    match result {
        Ok((text, None)) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "configuration error: cannot write {}: {e}", path.display());
                EXIT_CONFIG
            }
        },
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

/// Runs with the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
