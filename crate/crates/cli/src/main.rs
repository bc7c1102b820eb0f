mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Overrides, RunConfig};
use error::CliError;

/// Verification suites, zero catalogs and CSV exports for the Weil form of ξ.
#[derive(Parser, Debug)]
#[command(name = "weil-lab", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// `key = value` configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Ordinate table (one decimal per line, ascending).
    #[arg(long, global = true, conflicts_with = "compute_zeros")]
    zeros: Option<PathBuf>,
    /// Find zeros by root finding (cached under $WEIL_LAB_CACHE).
    #[arg(long, global = true)]
    compute_zeros: bool,
    /// Catalog height T.
    #[arg(long = "height-T", global = true)]
    height_t: Option<f64>,
    /// Frequency cut-off Z for ψ_γ.
    #[arg(long = "cutoff-Z", global = true)]
    cutoff_z: Option<f64>,
    /// Grid as "xmin:xmax:n".
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bound override, "<check_id>=<value>"; repeatable.
    #[arg(long, global = true)]
    tol: Vec<String>,
    /// Seed for the randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and write its JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Manage the zero cache.
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// Write CSV samples of a computed object.
    Export {
        #[command(subcommand)]
        object: ExportObject,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Special,
    Weil,
    Debranges,
    Screw,
    HilbertPolya,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Special => "special",
            Suite::Weil => "weil",
            Suite::Debranges => "debranges",
            Suite::Screw => "screw",
            Suite::HilbertPolya => "hilbert_polya",
            Suite::All => "all",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ZerosAction {
    /// Copy an ordinate table into the cache.
    Import { path: PathBuf },
    /// Find the zeros up to T and cache them.
    Compute,
    /// List cached heights.
    List,
}

#[derive(Subcommand, Debug)]
pub enum ExportObject {
    /// ψ_γ for the `index`-th zero (1-based) on the time grid.
    #[command(name = "psi_gamma")]
    PsiGamma {
        index: usize,
        /// Also write Kψ_γ and the V(0) membership report.
        #[arg(long)]
        with_k: bool,
    },
    /// The screw function g on --grid.
    #[command(name = "screw_g")]
    ScrewG,
    /// The profile ω on --grid.
    Omega,
    /// F_γ for the `index`-th zero on the frequency --grid.
    #[command(name = "F_gamma")]
    FGamma { index: usize },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("weil-lab: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    let flags = Overrides {
        zeros: g.zeros,
        compute_zeros: g.compute_zeros,
        height_t: g.height_t,
        cutoff_z: g.cutoff_z,
        grid: g.grid,
        out: g.out,
        tol: g.tol,
        seed: g.seed,
    };
    let cfg = RunConfig::resolve(g.config.as_deref(), &flags)?;
    match cli.command {
        Command::Verify { suite } => commands::verify(suite, &cfg),
        Command::Zeros { action } => commands::zeros(action, &cfg),
        Command::Export { object } => commands::export(object, &cfg),
    }
}
