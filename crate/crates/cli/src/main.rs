mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations with abacus partitions, canonical bases and the
/// adjustment matrix of the principal block of H_{5e}.
#[derive(Parser, Debug)]
#[command(name = "hecke", version)]
pub struct Cli {
    /// Worker threads for canonical basis computations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// e-core and e-weight of a partition.
    Core {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        partition: String,
    },
    /// Block label of a partition, or the members of a block.
    Block {
        #[command(flatten)]
        ctx: BlockArgs,
        #[arg(long)]
        partition: Option<String>,
        /// List every partition of the block.
        #[arg(long)]
        list: bool,
    },
    /// e-regular partitions of a block with their bracket labels.
    Regular {
        #[command(flatten)]
        ctx: BlockArgs,
    },
    /// Mullineux dual of a partition, or a check of a printed table.
    Mullineux {
        #[command(flatten)]
        ctx: BlockArgs,
        #[arg(long, required_unless_present = "table")]
        partition: Option<String>,
        /// Also print the Mullineux symbol.
        #[arg(long)]
        symbol: bool,
        /// Fixture CSV of Mullineux rows.
        #[arg(long, conflicts_with = "partition")]
        table: Option<PathBuf>,
        /// Compare every instance of the table against the computed dual.
        #[arg(long, requires = "table")]
        check: bool,
        #[arg(long, default_value_t = 8)]
        max_e: usize,
    },
    /// Signatures and modular branching along one runner pair.
    Branch {
        #[arg(long)]
        e: usize,
        /// Bead count of the display; defaults to the block's reference count.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        partition: String,
        /// Runner i of the pair (i-1, i).
        #[arg(long, required_unless_present = "chain")]
        pair: Option<usize>,
        #[arg(long, default_value_t = 1)]
        kappa: usize,
        /// Induce instead of restrict.
        #[arg(long)]
        induce: bool,
        /// Restriction chain as runner[:kappa] steps, e.g. "3,2,1,0:2".
        #[arg(long, conflicts_with = "pair")]
        chain: Option<String>,
    },
    /// Canonical basis vector G(mu).
    Llt {
        #[command(flatten)]
        ctx: BlockArgs,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// v-decomposition matrix of a block.
    Dmatrix {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        core: String,
        #[arg(long)]
        weight: usize,
        /// Evaluate entries at v = 1.
        #[arg(long)]
        at_v1: bool,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Jantzen-Schaper bound, or the sweep comparing it with d'(1).
    Js {
        #[command(flatten)]
        ctx: BlockArgs,
        /// Characteristic of the field, 0 or a prime.
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, required_unless_present = "check_ryom_hansen")]
        lambda: Option<String>,
        #[arg(long, required_unless_present = "check_ryom_hansen")]
        mu: Option<String>,
        #[arg(long)]
        check_ryom_hansen: bool,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Runner counts for the sweep.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        es: Vec<usize>,
    },
    /// Adjustment-matrix status report for the principal block of H_{5e}.
    Verify {
        #[arg(long)]
        e: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// List every entry instead of only those reaching the canonical basis stage.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Inspect or fill a canonical basis cache file.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// Validate a cache file and print its record count.
    Check { file: PathBuf },
    /// Compute every column of the principal block of H_{5e} into the cache.
    Warm {
        #[arg(long)]
        e: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Print the default cache path.
    Path,
}

/// Block context for bracket-notation arguments.
#[derive(Args, Debug, Clone)]
pub struct BlockArgs {
    #[arg(long)]
    pub e: Option<usize>,
    /// Per-runner bead counts of the core display, "b0,b1,...".
    #[arg(long, requires = "weight", conflicts_with_all = ["principal_5e", "core"])]
    pub block: Option<String>,
    /// e-core of the block.
    #[arg(long, requires = "weight", conflicts_with = "principal_5e")]
    pub core: Option<String>,
    #[arg(long)]
    pub weight: Option<usize>,
    /// The principal block of H_{5e}.
    #[arg(long)]
    pub principal_5e: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CacheArgs {
    /// Cache file; defaults to a file under $HECKE_CACHE_DIR when set.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Ignore $HECKE_CACHE_DIR.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Md,
    Json,
    Csv,
}

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Stdout was closed by the reader.
    Closed,
    Usage(String),
    Mismatch(String),
    Internal(String),
}

impl From<hecke_core::Error> for Failure {
    fn from(e: hecke_core::Error) -> Self {
        use hecke_core::Error as E;
        match e {
            E::Syntax { .. }
            | E::DuplicateRunner(_)
            | E::RunnerOutOfRange { .. }
            | E::NonPartitionSubscript { .. }
            | E::InvalidRunnerCount(_)
            | E::InvalidCharacteristic(_)
            | E::NotERegular { .. }
            | E::WrongBlock(_)
            | E::DifferentBlock
            | E::BlockMismatch(_)
            | E::WeightMismatch { .. }
            | E::SizeMismatch(..)
            | E::BeadCountTooSmall { .. }
            | E::EmptyPartition
            | E::Cache { .. }
            | E::Fixture(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &mut out) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(1)
        }
    }
}
