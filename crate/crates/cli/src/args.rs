use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qsmoments_core::asymptotics::SpecialConstants;
use qsmoments_core::{MomentMode, PivotCostModel, SimConfig};

use crate::commands;
use crate::error::{CliError, CliResult};
use crate::selftest::run_selftest;
use crate::table::{Format, OutputTable};

#[derive(Debug, Parser)]
#[command(
    name = "qsmoments",
    version,
    about = "Exact and asymptotic moments of quicksort comparison counts"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Arithmetic for moment and coefficient columns.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for MomentMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => MomentMode::Exact,
            ModeArg::Float => MomentMode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// n-1 comparisons per partitioning stage.
    #[value(name = "n-1")]
    NMinusOne,
    /// n+1 comparisons per partitioning stage.
    #[value(name = "n+1")]
    NPlusOne,
}

impl From<ModelArg> for PivotCostModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::NMinusOne => PivotCostModel::NMinusOne,
            ModelArg::NPlusOne => PivotCostModel::NPlusOne,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact distribution of the comparison count for one size.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModelArg::NMinusOne)]
        model: ModelArg,
    },
    /// Factorial moments, raw moments and variance for sizes 0..=n-max.
    Moments {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        s_max: usize,
        #[arg(long, value_enum, default_value_t = ModelArg::NMinusOne)]
        model: ModelArg,
    },
    /// Coefficients of the generating function of the s-th factorial moment.
    Series {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        order: usize,
    },
    /// Exact moments against the two-term asymptote over a grid of sizes.
    Compare {
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Comma-separated sizes, e.g. 100,1000,10000.
        #[arg(long, default_value = "")]
        grid: String,
        /// Number of asymptote terms (1 or 2).
        #[arg(long, default_value_t = 2)]
        terms: usize,
    },
    /// Descending-log expansion of [u^n] (1-u)^-alpha log(1/(1-u))^beta.
    Transfer {
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
        #[arg(long)]
        n: u64,
        /// Truncation depth; defaults to min(beta, 3).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Monte Carlo estimates from seeded random permutations.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Independent RNG streams, run in parallel. Part of the
        /// reproducibility contract.
        #[arg(long, default_value_t = 1)]
        shards: u32,
        #[arg(long, value_enum, default_value_t = ModelArg::NMinusOne)]
        model: ModelArg,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

/// A rendered table plus the names of any failed self-test checks.
pub struct Outcome {
    pub table: OutputTable,
    pub failed: Vec<&'static str>,
}

fn parse_grid(grid: &str) -> CliResult<Vec<u64>> {
    grid.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("invalid grid size {s:?}")))
        })
        .collect()
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let mode = MomentMode::from(cli.mode);
    let table = match &cli.command {
        Command::Dist { n, model } => commands::cmd_dist(*n, (*model).into(), mode)?,
        Command::Moments { n_max, s_max, model } => commands::cmd_moments(*n_max, *s_max, mode, (*model).into())?,
        Command::Series { s, order } => commands::cmd_series(*s, *order, mode)?,
        Command::Compare { s, grid, terms } => commands::cmd_compare(*s, &parse_grid(grid)?, *terms)?,
        Command::Transfer { alpha, beta, n, k } => commands::cmd_transfer(*alpha, *beta, *n, *k, mode)?,
        Command::Simulate {
            n,
            trials,
            seed,
            shards,
            model,
        } => {
            let config = SimConfig::new(*n, *trials, *seed)
                .with_shards(*shards)
                .with_model((*model).into());
            commands::cmd_simulate(&config)?
        }
        Command::Selftest => {
            let report = run_selftest(&SpecialConstants::default());
            return Ok(Outcome {
                table: report.to_table(),
                failed: report.failures(),
            });
        }
    };
    Ok(Outcome {
        table,
        failed: Vec::new(),
    })
}
