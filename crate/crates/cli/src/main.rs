use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use k0spectrum::sweep::{self, PartialConfig, PotentialRange, SweepConfig};
use k0spectrum::Error;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "k0spec",
    version,
    about = "Bound states of the planar -alpha K0(beta r) well"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every (C, m) channel and write the spectral table as CSV.
    Sweep(RunArgs),
    /// Write effective-potential curves as whitespace-separated columns.
    Potential(RunArgs),
    /// Run the identity, bound and oracle checks and print a report.
    Verify {
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Dimensionless couplings, comma separated.
    #[arg(long, value_name = "LIST", conflicts_with = "params")]
    coupling: Option<String>,
    /// Physical parameters hbar,mu,alpha,beta (repeatable).
    #[arg(long, value_name = "HBAR,MU,ALPHA,BETA")]
    params: Vec<String>,
    #[arg(long, value_name = "N")]
    m_max: Option<u32>,
    /// Initial outer cutoff in s = beta r.
    #[arg(long, value_name = "S")]
    s_max: Option<f64>,
    /// Eigenvalue tolerance (dimensionless).
    #[arg(long, value_name = "TOL")]
    tol: Option<f64>,
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    #[arg(long, value_name = "LO:HI:N")]
    potential_range: Option<String>,
    /// Flat key = value config file; command-line flags take precedence.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn config(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: EXIT_CONFIG,
            error: error.into(),
        }
    }

    fn from_core(error: Error) -> Self {
        let code = match error {
            Error::Config(_) | Error::InvalidParameter { .. } => EXIT_CONFIG,
            _ => EXIT_SOLVER,
        };
        Self {
            code,
            error: error.into(),
        }
    }
}

impl RunArgs {
    fn resolve(&self) -> Result<SweepConfig, Failure> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))
                    .map_err(Failure::config)?;
                PartialConfig::parse(&text).map_err(Failure::config)?
            }
            None => PartialConfig::default(),
        };
        let params = if self.params.is_empty() {
            None
        } else {
            Some(
                self.params
                    .iter()
                    .map(|p| sweep::parse_params(p))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(Failure::config)?,
            )
        };
        let flags = PartialConfig {
            couplings: self
                .coupling
                .as_deref()
                .map(sweep::parse_coupling_list)
                .transpose()
                .map_err(Failure::config)?,
            params,
            m_max: self.m_max,
            s_max: self.s_max,
            tol: self.tol,
            out: self.out.clone(),
            potential_range: self
                .potential_range
                .as_deref()
                .map(PotentialRange::parse)
                .transpose()
                .map_err(Failure::config)?,
        };
        file.overlay(flags).resolve().map_err(Failure::config)
    }
}

fn emit(out: Option<&str>, text: &str) -> Result<(), Failure> {
    let result = match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {path}")),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("writing to stdout"),
    };
    result.map_err(|error| Failure {
        code: EXIT_SOLVER,
        error,
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Sweep(args) => {
            let cfg = args.resolve()?;
            let rows = sweep::run_sweep(&cfg).map_err(Failure::from_core)?;
            emit(cfg.out.as_deref(), &sweep::to_csv(&rows))?;
            if sweep::has_solver_errors(&rows) {
                eprintln!("some rows failed to solve; see the flags column");
                return Ok(EXIT_SOLVER);
            }
            Ok(0)
        }
        Command::Potential(args) => {
            let cfg = args.resolve()?;
            let curves = sweep::potential_curves(&cfg).map_err(Failure::from_core)?;
            emit(cfg.out.as_deref(), &sweep::potential_to_text(&curves))?;
            Ok(0)
        }
        Command::Verify { out } => {
            let report = sweep::verify().map_err(Failure::from_core)?;
            let path = out.as_ref().map(|p| p.to_string_lossy().into_owned());
            emit(path.as_deref(), &report.render())?;
            Ok(if report.passed() { 0 } else { EXIT_CHECK_FAILED })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
