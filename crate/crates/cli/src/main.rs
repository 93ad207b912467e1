//! `sctk`: command-line front end for degree-size sequence realizability,
//! SCM sampling, Betti numbers and the ensemble experiments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use simplicial::realizer::DEFAULT_CUTOFF;

pub const EXIT_NON_SIMPLICIAL: u8 = 1;
pub const EXIT_CUTOFF: u8 = 2;
pub const EXIT_PARTIAL: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "sctk",
    version,
    about = "Degree-size sequences of simplicial complexes"
)]
pub struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Give up once rejections plus backtracks reach this count.
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Suppress the config and diagnostics log on stderr.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    /// Worker threads for ensembles (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchFlags {
    /// Branch on every interchangeable node instead of one representative.
    #[arg(long)]
    pub no_symmetry: bool,
    /// Keep only the inclusion check and rule 1.
    #[arg(long)]
    pub no_rules: bool,
    /// Count candidates contained in an accepted facet as rejections.
    #[arg(long)]
    pub count_inclusion: bool,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// Decide whether a sequence is simplicial (exit 0 yes, 1 no, 2 cutoff).
    Check {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Decide and write a realization as a facet list.
    Realize {
        #[arg(long)]
        input: PathBuf,
        /// Facet list destination (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write node labels in the input order instead of sorted-degree order.
        #[arg(long)]
        input_labels: bool,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Betti numbers b0 and b1 of a facet list.
    Betti {
        #[arg(long)]
        facets: PathBuf,
        #[arg(long, default_value_t = simplicial::homology::DEFAULT_SKELETON_GUARD)]
        skeleton_guard: usize,
    },
    /// Sample complexes with the same sequence by incidence swaps.
    Scm {
        #[arg(long)]
        facets: PathBuf,
        /// Steps before the first sample (default 50 E).
        #[arg(long)]
        burn_in: Option<u64>,
        /// Steps between samples (default 10 E).
        #[arg(long)]
        gap: Option<u64>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Print one `sample,beta0,beta1` row per sample instead of facet lists.
        #[arg(long)]
        emit_betti: bool,
        #[arg(long, default_value_t = simplicial::homology::DEFAULT_SKELETON_GUARD)]
        skeleton_guard: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate random sequences.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Count realizations by exhaustive enumeration (small inputs only).
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Refuse inputs with more incidences than this.
        #[arg(long, default_value_t = simplicial::oracle::DEFAULT_GUARD)]
        limit: u64,
        /// Also print every realization.
        #[arg(long)]
        list: bool,
    },
    /// Ensemble experiments writing CSV plus a summary.
    Ensemble {
        #[command(subcommand)]
        kind: EnsembleKind,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum GenKind {
    /// A pair of independent uniform partitions of E.
    Partition {
        #[arg(long = "E")]
        total: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Poisson sizes and Poisson degrees.
    Poisson {
        #[arg(long = "E")]
        total: u64,
        #[arg(long)]
        lambda_d: f64,
        #[arg(long)]
        lambda_s: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Poisson sizes and d-regular degrees.
    Regular {
        #[arg(long = "E")]
        total: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        lambda_s: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Poisson,
    Regular,
    Both,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum EnsembleKind {
    /// Every pair of partitions of E.
    Grid {
        #[arg(long = "E")]
        total: usize,
        /// Add a wall_us column (makes the CSV non-reproducible).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Fixed uniform sizes against partitions of the same total as degrees.
    UniformSizes {
        #[arg(long = "E")]
        total: usize,
        #[arg(long, default_value_t = 3)]
        size: u32,
        /// Number of facets.
        #[arg(long)]
        m: usize,
        /// Random partitions to draw; ignored with --exhaustive.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Simplicial and polynomial fractions over random partition pairs.
    RandomPairs {
        #[arg(long = "E", value_delimiter = ',', num_args = 1.., required = true)]
        totals: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Betti numbers over generated ensembles, swept over the size mean.
    BettiScan {
        #[arg(long = "E")]
        total: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Poisson)]
        family: FamilyArg,
        #[arg(long, default_value_t = 3.0)]
        lambda_d: f64,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        lambda_s: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 10)]
        scm_samples: usize,
        /// Draws per replicate before a grid point counts as unreachable.
        #[arg(long, default_value_t = 50)]
        draw_cap: usize,
        #[arg(long, default_value_t = 64)]
        skeleton_guard: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Realize an observed facet list and compare with SCM samples.
    Empirical {
        #[arg(long)]
        facets: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        burn_in: Option<u64>,
        #[arg(long)]
        gap: Option<u64>,
        #[arg(long, default_value_t = 64)]
        skeleton_guard: usize,
        /// Write the constructed realization here.
        #[arg(long)]
        realization: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if !cli.quiet {
        eprintln!(
            "sctk config: {}",
            serde_json::to_string(&cli).unwrap_or_default()
        );
    }
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
