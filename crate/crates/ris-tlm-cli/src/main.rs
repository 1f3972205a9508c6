//! `ris-tlm`: command-line front end for the varactor-tuned
//! reflective-surface model.
//!
//! Exit codes: 0 success, 2 configuration error (also used by argument
//! parsing), 3 numeric or I/O failure during a run, 4 validation FAIL.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{GammaArg, ModeArg};
use config::RunConfig;
use error::CliResult;

#[derive(Parser)]
#[command(
    name = "ris-tlm",
    version,
    about = "Varactor-tuned reflective-surface model: cell response sweeps, lookup tables, \
             capacitance synthesis, link budgets, and closed-form self-validation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration file (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: output.dir from the config, else ".")
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the cell reflection coefficient over frequency
    CellResponse(CommonArgs),
    /// Tabulate the reflection over (angle, capacitance) at the scenario frequency
    Lookup(CommonArgs),
    /// Solve per-cell capacitances for the scenario's phase profile
    Synthesize {
        #[command(flatten)]
        common: CommonArgs,
        /// Inversion mode; omit to run both and emit their discrepancy map
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Received power and field maps for ideal or synthesized surfaces
    Link {
        #[command(flatten)]
        common: CommonArgs,
        /// Reflection source; omit to run all three
        #[arg(long, value_enum)]
        gamma: Option<GammaArg>,
        /// Replace every source with a fully absorbing surface (test control)
        #[arg(long, hide = true)]
        zero_gamma: bool,
    },
    /// Check the coherent-sum engine against closed-form references
    ValidatePec {
        #[command(flatten)]
        common: CommonArgs,
        /// Mirror the reference pattern's scan angle (negative control)
        #[arg(long, hide = true)]
        flip_specular_sign: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::CellResponse(common) => {
            let cfg = RunConfig::load(&common.config)?;
            commands::cell_response(&cfg, &cfg.out_dir(common.out.as_deref()))
        }
        Command::Lookup(common) => {
            let cfg = RunConfig::load(&common.config)?;
            commands::lookup(&cfg, &cfg.out_dir(common.out.as_deref()))
        }
        Command::Synthesize { common, mode } => {
            let cfg = RunConfig::load(&common.config)?;
            commands::synthesize(&cfg, mode, &cfg.out_dir(common.out.as_deref()))
        }
        Command::Link {
            common,
            gamma,
            zero_gamma,
        } => {
            let cfg = RunConfig::load(&common.config)?;
            commands::link(&cfg, gamma, zero_gamma, &cfg.out_dir(common.out.as_deref()))
        }
        Command::ValidatePec {
            common,
            flip_specular_sign,
        } => {
            let cfg = RunConfig::load(&common.config)?;
            commands::validate_pec(&cfg, flip_specular_sign, &cfg.out_dir(common.out.as_deref()))
        }
    }
}
