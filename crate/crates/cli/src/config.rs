//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twinheart_core::scalar::Field;

use crate::CliError;

pub const MIN_RANK: usize = 2;
pub const MAX_RANK: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "twinheart",
    version,
    about = "Twin cotorsion pairs, hearts and localisations in cluster categories of type A"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Ground field: `Q`, `F5`, or `Fp:<p>`.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, global = true, default_value = "twinheart-out")]
    pub out_dir: PathBuf,
    /// Print the JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    /// Dynkin type; only `A` is supported.
    #[arg(long = "type", default_value = "A")]
    pub kind: String,
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    /// Rigid object as names or arcs, e.g. `P1,P2,S2` or `(0,2),(0,3)`.
    #[arg(long, default_value = "P1,P2,S2")]
    pub rigid: String,
    /// Load the category from a bundle instead of building C_{A_n}.
    #[arg(long)]
    pub bundle: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    SemiAbelian,
    QuasiAbelian,
    Integral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InventoryArg {
    Auto,
    File(PathBuf),
}

impl std::str::FromStr for InventoryArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(if s == "auto" {
            InventoryArg::Auto
        } else {
            InventoryArg::File(s.into())
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build C_{A_n}; write its bundle, names table and AR quiver.
    Build {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Certify the canonical twin cotorsion pair of a rigid object.
    Twin {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// List the heart C/[X_R].
    Heart {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Classify the irreducible maps of the heart as mono, epi, regular or none.
    Classify {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the exactness suites on the heart.
    Check {
        #[command(flatten)]
        target: TargetArgs,
        /// Suite to run; all three when omitted.
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        /// Enumerate every small object and morphism (prime fields only).
        #[arg(long)]
        exhaustive: bool,
        /// Summand bound: object size when sampling, multiplicity when exhaustive.
        #[arg(long)]
        max_mult: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute Lambda_R and check the localisation against mod Lambda_R.
    Localise {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        verify_equivalence: bool,
        /// `auto` enumerates modules over F5; otherwise a JSON file of representations.
        #[arg(long, default_value = "auto")]
        inventory: InventoryArg,
    },
    /// Write the AR quiver and the decorated heart quiver as DOT.
    Export {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Run every verification and write an aggregated report.
    VerifyAll {
        #[command(flatten)]
        target: TargetArgs,
    },
}

/// Everything a command needs, echoed into its report for replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub field: String,
    pub rigid: String,
    pub seed: u64,
    pub samples: usize,
    pub bundle: Option<String>,
    #[serde(skip)]
    pub out_dir: PathBuf,
    #[serde(skip)]
    pub parsed_field: Field,
}

impl RunConfig {
    pub fn new(global: &GlobalArgs, target: &TargetArgs) -> Result<RunConfig, CliError> {
        if target.kind != "A" {
            return Err(CliError::usage(format!(
                "unsupported type {:?}; only A is available",
                target.kind
            )));
        }
        if !(MIN_RANK..=MAX_RANK).contains(&target.rank) {
            return Err(CliError::usage(format!(
                "rank {} outside [{MIN_RANK}, {MAX_RANK}]",
                target.rank
            )));
        }
        let parsed_field = Field::parse_tag(&global.field).map_err(CliError::from)?;
        Ok(RunConfig {
            kind: target.kind.clone(),
            rank: target.rank,
            field: parsed_field.tag(),
            rigid: target.rigid.clone(),
            seed: global.seed,
            samples: global.samples,
            bundle: target.bundle.as_ref().map(|p| p.display().to_string()),
            out_dir: global.out_dir.clone(),
            parsed_field,
        })
    }
}
