//! Library side of the `nspot` executable: configuration, CSV tables, the
//! potential and figure commands, and the verification suites.

pub mod config;
pub mod error;
pub mod figures;
pub mod potential;
pub mod table;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_seed, ConfigLayer, RunConfig, ScaleMode};
use crate::error::CliResult;
use crate::figures::DpsMap;
use crate::potential::{parse_point, PotentialKind};
use crate::verify::{run_suites, Suite};

#[derive(Debug, Parser)]
#[command(name = "nspot", version, about = "Potentials on the continuum, the cubic lattice, and continuous and discrete phase space")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// Characteristic length (must be positive)
    #[arg(long, global = true)]
    pub ell: Option<f64>,

    /// Largest index emitted by the figure commands
    #[arg(long, global = true)]
    pub nmax: Option<u64>,

    /// Gauss-Legendre points per panel for the lattice integral (at least 8)
    #[arg(long, global = true)]
    pub quad_points: Option<usize>,

    /// Seed for randomized checks, decimal or 0x-hex
    #[arg(long, global = true, value_parser = parse_seed)]
    pub seed: Option<u64>,

    /// lattice (raw values) or physical (lattice and dps values divided by ell)
    #[arg(long, global = true, value_parser = |s: &str| s.parse::<ScaleMode>().map_err(|e| e.to_string()))]
    pub scale: Option<ScaleMode>,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// key = value file with defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one potential at the given points
    Potential {
        /// e3, lattice, cps or dps
        #[arg(value_parser = |s: &str| s.parse::<PotentialKind>().map_err(|e| e.to_string()))]
        kind: PotentialKind,

        /// Comma-separated coordinates; six (q then p) for cps
        #[arg(long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// CSV of the discrete phase space potential along an axis
    Figure1,
    /// CSV comparing the continuum, lattice and discrete phase space potentials
    Figure2 {
        /// How the dps column is placed on the x grid: ellipse or index
        #[arg(long, default_value = "ellipse", value_parser = |s: &str| s.parse::<DpsMap>().map_err(|e| e.to_string()))]
        dps_map: DpsMap,
    },
    /// Run invariant suites and print a tab-separated report
    Verify {
        /// specfun, continuum, lattice, phasespace, dps_ops, dps_greens, variational or all
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

impl CommonArgs {
    fn resolve(&self, defaults: RunConfig) -> CliResult<RunConfig> {
        let flags = ConfigLayer {
            ell: self.ell,
            nmax: self.nmax,
            quad_points: self.quad_points,
            seed: self.seed,
            scale: self.scale,
            output: self.output.clone(),
        };
        let file = match &self.config {
            Some(p) => ConfigLayer::from_file(p)?,
            None => ConfigLayer::default(),
        };
        flags.over(file).resolve(defaults)
    }
}

/// Output text and exit status for a parsed command line.
pub fn execute(cli: &Cli) -> CliResult<(String, i32, Option<PathBuf>)> {
    match &cli.command {
        Command::Potential { kind, points } => {
            let cfg = cli.common.resolve(RunConfig { scale: ScaleMode::Lattice, ..RunConfig::figure1_defaults() })?;
            let pts = points.iter().map(|p| parse_point(p)).collect::<CliResult<Vec<_>>>()?;
            Ok((potential::potential_table(*kind, &pts, &cfg)?.render()?, 0, cfg.output))
        }
        Command::Figure1 => {
            let cfg = cli.common.resolve(RunConfig::figure1_defaults())?;
            Ok((figures::figure1(&cfg)?.render()?, 0, cfg.output))
        }
        Command::Figure2 { dps_map } => {
            let cfg = cli.common.resolve(RunConfig::figure2_defaults())?;
            Ok((figures::figure2(&cfg, *dps_map)?.render()?, 0, cfg.output))
        }
        Command::Verify { suites } => {
            let cfg = cli.common.resolve(RunConfig::figure1_defaults())?;
            let report = run_suites(&Suite::parse_list(suites)?, &cfg);
            let code = if report.passed() { 0 } else { 1 };
            Ok((report.to_tsv(), code, cfg.output))
        }
    }
}
