//! The `gamma-forge` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 refused workload or empty
//! dataset, 64 usage error, 65 malformed input data, 70 internal or I/O
//! failure.

mod cache;
mod enumerate;
mod invariants;
mod manifest;
mod report;
mod verify;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gamma_forge_core::canonical::OrbitAction;
use gamma_forge_core::AxiomConfig;

pub use cache::{cache_key, Cache};
pub use manifest::RunManifest;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID: i32 = 1;
    pub const REFUSED: i32 = 2;
    pub const USAGE: i32 = 64;
    pub const DATA: i32 = 65;
    pub const INTERNAL: i32 = 70;
}

#[derive(Parser, Debug)]
#[command(name = "gamma-forge", version, about = "Enumerate and classify finite ternary Γ-semirings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate all structures of one order up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Check every structure in a JSON-lines file against the axioms.
    Verify(VerifyArgs),
    /// Compute invariant signatures (CSV) and optionally spectra (JSON).
    Invariants(InvariantsArgs),
    /// Run the analytics pipeline over a signature dataset.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ModeArgs {
    /// Do not require the ternary products to be symmetric.
    #[arg(long)]
    pub no_symmetric: bool,
    /// Also require the coupled associativity law.
    #[arg(long)]
    pub associative: bool,
}

impl ModeArgs {
    pub fn mode(&self) -> AxiomConfig {
        AxiomConfig::new(!self.no_symmetric, self.associative)
    }
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Order n of the structures.
    #[arg(long)]
    pub order: usize,
    /// Number g of ternary products.
    #[arg(long)]
    pub gamma: usize,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Worker threads.
    #[arg(long, default_value_t = default_jobs())]
    pub jobs: usize,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Lift the default n ≤ 4, g ≤ 2 caps.
    #[arg(long)]
    pub force: bool,
    /// Cache directory (default: $GAMMA_FORGE_CACHE, else ~/.cache/gamma-forge).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
    /// Stop after this many extension steps.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// JSON-lines structure file.
    pub file: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EntropyMode {
    FullAut,
    AdditiveAut,
}

impl EntropyMode {
    pub fn action(self) -> OrbitAction {
        match self {
            EntropyMode::FullAut => OrbitAction::FullAutomorphisms,
            EntropyMode::AdditiveAut => OrbitAction::AdditiveAutomorphisms,
        }
    }
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    /// JSON-lines structure file.
    pub file: PathBuf,
    /// Signature CSV destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write prime spectra as JSON here.
    #[arg(long)]
    pub spectra: Option<PathBuf>,
    /// Group action used for the entropy column.
    #[arg(long, value_enum, default_value = "full-aut")]
    pub entropy_mode: EntropyMode,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Signature CSV produced by `invariants`.
    pub dataset: PathBuf,
    /// The structures behind the dataset; enables the checks that need them.
    #[arg(long)]
    pub classes: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "report")]
    pub out: PathBuf,
    /// Largest order in the growth table (default: largest in the dataset).
    #[arg(long)]
    pub max_order: Option<usize>,
    /// Largest parameter count in the growth table.
    #[arg(long, default_value_t = 2)]
    pub max_gamma: usize,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Seed for the sampling experiment.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Trials per sampling cell.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Worker threads for the growth table.
    #[arg(long, default_value_t = default_jobs())]
    pub jobs: usize,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: i32, error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code,
            error: error.into(),
        }
    }

    pub fn msg(code: i32, message: impl fmt::Display) -> Self {
        Failure::new(code, anyhow::anyhow!("{message}"))
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error: anyhow::Error = e.into();
        let code = match error.downcast_ref::<gamma_forge_core::Error>() {
            Some(gamma_forge_core::Error::CapExceeded(_) | gamma_forge_core::Error::BudgetExhausted { .. }) => {
                exit::REFUSED
            }
            Some(gamma_forge_core::Error::Structural(_)) => exit::DATA,
            _ => exit::INTERNAL,
        };
        Failure { code, error }
    }
}

pub type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => enumerate::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Invariants(a) => invariants::run(&a),
        Command::Report(a) => report::run(&a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            f.code
        }
    }
}

/// Reads a file, mapping failures to exit code 65 for missing input.
pub(crate) fn read_input(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::msg(exit::DATA, format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn parse_structures(path: &std::path::Path) -> Result<(String, Vec<gamma_forge_core::GammaSemiring>), Failure> {
    let text = read_input(path)?;
    let structures = gamma_forge_core::io::parse_jsonl(&text)
        .map_err(|e| Failure::msg(exit::DATA, format!("{}: {e}", path.display())))?;
    Ok((text, structures))
}

/// Writes `contents` to `dir/name`, returning the SHA-256 of the bytes.
pub(crate) fn write_output(dir: &std::path::Path, name: &str, contents: &str) -> Result<String, Failure> {
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| Failure::msg(exit::INTERNAL, format!("cannot write {}: {e}", path.display())))?;
    Ok(manifest::sha256_hex(contents.as_bytes()))
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
