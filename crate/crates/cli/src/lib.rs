//! Batch front-end for the radial minorant toolkit.
//!
//! Every subcommand writes a JSON report into `--out` and maps its outcome to a fixed exit
//! code. Reports carry no timestamps, so identical inputs give byte-identical files.

mod commands;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use radial_bm::Error;
use serde::Serialize;

pub use output::config_hash;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFINITE: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_FAIL: i32 = 5;

pub const CHECK_NAMES: [&str; 7] = ["spectrum", "minorize", "l2", "cartwright", "type", "lifting-bound", "radiality"];

#[derive(Debug, Parser)]
#[command(name = "radial-bm", version, about = "Construct, lift and verify radial band-limited minorants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Majorization {
    /// Smallest dyadic annulus index for non-radial weights.
    #[arg(long, default_value_t = -4, allow_negative_numbers = true)]
    pub j_min: i32,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    pub j_max: i32,
    /// Samples per annulus for the supremum estimate.
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Poisson-weighted integral of the weight, with a polar-reduction cross-check.
    Admissibility {
        #[arg(long)]
        weight: PathBuf,
        /// Overrides the dimension declared in the weight file.
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        majorization: Majorization,
        #[command(flatten)]
        common: Common,
    },
    /// Radial majorant from suprema over dyadic annuli.
    Majorize {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        majorization: Majorization,
        /// Seeded points for the `majorant ≥ Ω` check.
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify a band-limited minorant of `e^{-Ω}`.
    Construct {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        epsilon: f64,
        /// Outside-energy threshold for the spectral check.
        #[arg(long, default_value_t = radial_bm::analysis::SPECTRUM_THRESHOLD)]
        threshold: f64,
        #[arg(long, default_value_t = 100_000)]
        points: usize,
        /// Extends the calibration grid to at least this radius.
        #[arg(long)]
        grid_max: Option<f64>,
        #[command(flatten)]
        majorization: Majorization,
        #[command(flatten)]
        common: Common,
    },
    /// Lift an even one-variable function to a radial function on `ℂⁿ`.
    Lift {
        /// Sinc product or power series JSON.
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run checks on a function file or a sample grid.
    Verify {
        /// Lifted function, sinc product or power series JSON.
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        function: Option<PathBuf>,
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        checks: Vec<String>,
        /// Dimension for bare one-variable functions.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = radial_bm::analysis::SPECTRUM_THRESHOLD)]
        threshold: f64,
        /// Weight for the `minorize` check.
        #[arg(long)]
        weight: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Multiplier `G` with `|G f| ≤ 1` on `ℝⁿ` and small type.
    Multiplier {
        /// Sinc product JSON for `f₀`.
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100_000)]
        points: usize,
        /// Uniform points added to the certification grid.
        #[arg(long, default_value_t = 1_000_000)]
        grid_points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Average `|f|²` over `O(n)` and compare with `e^{-2Ω}`.
    Symmetrize {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        weight: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Monte Carlo nodes on the sphere.
        #[arg(long, default_value_t = radial_bm::symmetry::DEFAULT_MC_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Admissibility { .. } => "admissibility",
            Command::Majorize { .. } => "majorize",
            Command::Construct { .. } => "construct",
            Command::Lift { .. } => "lift",
            Command::Verify { .. } => "verify",
            Command::Multiplier { .. } => "multiplier",
            Command::Symmetrize { .. } => "symmetrize",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Admissibility { common, .. }
            | Command::Majorize { common, .. }
            | Command::Construct { common, .. }
            | Command::Lift { common, .. }
            | Command::Verify { common, .. }
            | Command::Multiplier { common, .. }
            | Command::Symmetrize { common, .. } => common,
        }
    }

    /// Files whose contents enter the config hash.
    fn inputs(&self) -> Vec<&PathBuf> {
        match self {
            Command::Admissibility { weight, .. } | Command::Majorize { weight, .. } | Command::Construct { weight, .. } => {
                vec![weight]
            }
            Command::Lift { function, .. } | Command::Multiplier { function, .. } => vec![function],
            Command::Verify { function, grid, weight, .. } => {
                function.iter().chain(grid.iter()).chain(weight.iter()).collect()
            }
            Command::Symmetrize { function, weight, .. } => std::iter::once(function).chain(weight.iter()).collect(),
        }
    }
}

/// Failure before a report could be produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Core(Error::UnsupportedFamily(_) | Error::Infeasible(_)) => EXIT_UNSUPPORTED,
            CliError::Core(_) => EXIT_USAGE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Diagnostics go to
/// stderr; the return value is the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("radial-bm {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns its exit code.
pub fn execute(cmd: &Command) -> Result<i32, CliError> {
    let ctx = output::Context::new(cmd)?;
    let outcome = commands::dispatch(cmd, &ctx)?;
    ctx.finish(outcome)
}
