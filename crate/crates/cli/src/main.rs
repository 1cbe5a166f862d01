mod commands;
mod config;
mod output;
mod range;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use ionlink_core::purify::{Level, NoiseModel};

use range::Grid;

/// Simulations of purified ion-trap links, repeater chains and toric-code
/// thresholds. Output is CSV with `#` header lines.
#[derive(Parser, Debug)]
#[command(name = "ionlink", version, args_override_self = true)]
pub struct Cli {
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Master seed
    #[arg(long, global = true, env = "IONLINK_SEED", default_value_t = 1)]
    pub seed: u64,
    /// TOML file of flag values; flags on the command line take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Infidelity and raw-pair cost of each purification level over a grid
    /// of link infidelities
    PurifySweep(PurifySweepArgs),
    /// Fusion and re-purification stages, cost and link budgets
    Repeater(RepeaterArgs),
    /// Logical error rates of the toric code and their crossing
    Threshold(ThresholdArgs),
    /// Error table of one noisy stabilizer measurement
    TableDump(TableDumpArgs),
}

const SUBCOMMANDS: [&str; 4] = ["purify-sweep", "repeater", "threshold", "table-dump"];

#[derive(Args, Debug, Clone)]
pub struct DeviceNoise {
    /// Single-qubit gate error
    #[arg(long, default_value_t = NoiseModel::REFERENCE_P1)]
    pub p1: f64,
    /// Two-qubit gate error
    #[arg(long, default_value_t = NoiseModel::REFERENCE_P2)]
    pub p2: f64,
    /// Measurement error
    #[arg(long, default_value_t = NoiseModel::REFERENCE_PM)]
    pub pm: f64,
    /// Use raw pairs in place instead of swapping them into memory ions
    #[arg(long)]
    pub no_memory_swap: bool,
}

impl DeviceNoise {
    pub fn model(&self, epsilon: f64) -> ionlink_core::Result<NoiseModel> {
        Ok(NoiseModel::new(epsilon, self.p1, self.p2, self.pm)?.with_memory_swap(!self.no_memory_swap))
    }

    pub fn flags(&self) -> String {
        let swap = if self.no_memory_swap { " --no-memory-swap" } else { "" };
        format!("--p1 {} --p2 {} --pm {}{swap}", self.p1, self.p2, self.pm)
    }
}

fn parse_level(s: &str) -> Result<Level, String> {
    let n: u8 = s.trim().parse().map_err(|_| format!("'{s}' is not a level"))?;
    Level::from_index(n).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct PurifySweepArgs {
    /// Purification levels
    #[arg(long, value_delimiter = ',', value_parser = parse_level, default_value = "1,2,3")]
    pub levels: Vec<Level>,
    /// Link infidelities, `start:stop:step` or a comma list
    #[arg(long, default_value = "0.01:0.15:0.01")]
    pub eps: Grid,
    /// Markov-chain trials per point
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[command(flatten)]
    pub noise: DeviceNoise,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
pub enum Dephasing {
    Exponential,
    Gaussian,
    /// Fixed window given by `--window`
    Window,
}

#[derive(Args, Debug)]
pub struct RepeaterArgs {
    /// Raw link infidelity
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Single-qubit gate error
    #[arg(long, default_value_t = 0.0)]
    pub p1: f64,
    /// Two-qubit gate error
    #[arg(long, default_value_t = NoiseModel::REFERENCE_P2)]
    pub p2: f64,
    /// Measurement error
    #[arg(long, default_value_t = NoiseModel::REFERENCE_PM)]
    pub pm: f64,
    /// Use raw pairs in place instead of swapping them into memory ions
    #[arg(long)]
    pub no_memory_swap: bool,
    /// Let the fusion Bell measurements lie with probability pm
    #[arg(long)]
    pub fusion_lies: bool,
    /// Fusion tiers: 1 stops after the first purification, 3 runs all five stages
    #[arg(long, default_value_t = 3)]
    pub chain: usize,
    /// Pairs fused in the first fusion
    #[arg(long, default_value_t = 12)]
    pub m: usize,
    /// Pairs fused in the second fusion
    #[arg(long, default_value_t = 12)]
    pub p: usize,
    #[arg(long, value_parser = parse_level, default_value = "3")]
    pub initial_level: Level,
    #[arg(long, value_parser = parse_level, default_value = "2")]
    pub repurify_level: Level,
    /// Repeater spacing in km
    #[arg(long, default_value_t = 17.0)]
    pub spacing_km: f64,
    /// Memory coherence time in seconds
    #[arg(long, default_value_t = 50.0)]
    pub t2: f64,
    /// Lowest acceptable memory fidelity
    #[arg(long, default_value_t = 0.99)]
    pub floor: f64,
    #[arg(long, value_enum, default_value_t = Dephasing::Exponential)]
    pub dephasing: Dephasing,
    /// Waiting window in seconds for `--dephasing window`
    #[arg(long, default_value_t = 0.725)]
    pub window: f64,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// Stabilizer circuit: a (ancilla) or b (GHZ)
    #[arg(long, default_value = "a")]
    pub method: ionlink_core::stabtool::StabilizerMethod,
    #[arg(long, value_parser = parse_level, default_value = "3")]
    pub level: Level,
    /// Lattice sizes
    #[arg(long = "L", value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Link infidelities [default: eight points around the expected crossing]
    #[arg(long)]
    pub eps: Option<Grid>,
    /// Trials per point
    #[arg(long)]
    pub trials: Option<usize>,
    /// Noisy rounds per unit of lattice size
    #[arg(long, default_value_t = 4)]
    pub rounds_per_size: usize,
    /// Full-scale run: L = 8,12,16 and 16000 trials unless given. Takes hours.
    #[arg(long)]
    pub full: bool,
    /// No progress lines on stderr
    #[arg(long)]
    pub quiet: bool,
    #[command(flatten)]
    pub noise: DeviceNoise,
}

#[derive(Args, Debug)]
pub struct TableDumpArgs {
    #[arg(long, default_value = "a")]
    pub method: ionlink_core::stabtool::StabilizerMethod,
    #[arg(long, value_parser = parse_level, default_value = "3")]
    pub level: Level,
    /// Measured stabilizer type, z or x
    #[arg(long, default_value = "z")]
    pub basis: ionlink_core::stabtool::ParityBasis,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Largest register the circuit simulation may use
    #[arg(long, default_value_t = ionlink_core::qcore::DEFAULT_QUBIT_BUDGET)]
    pub qubit_budget: usize,
    #[command(flatten)]
    pub noise: DeviceNoise,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ionlink_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use ionlink_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::InvalidConfig(_) | E::ParameterOutOfRange { .. } | E::Parse(_) | E::QubitBudget { .. }) => 2,
            CliError::Core(_) => 3,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

fn run(args: Vec<OsString>) -> Result<(), CliError> {
    let first = Cli::try_parse_from(&args).unwrap_or_else(|e| e.exit());
    let cli = match &first.config {
        Some(path) => {
            let spliced = config::splice(&args, path, &SUBCOMMANDS)?;
            Cli::try_parse_from(spliced).unwrap_or_else(|e| e.exit())
        }
        None => first,
    };
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| commands::dispatch(&cli))
}

fn main() -> ExitCode {
    // keep the generated help in sync with the subcommand list
    debug_assert!(SUBCOMMANDS.iter().all(|s| Cli::command().find_subcommand(s).is_some()));
    match run(std::env::args_os().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
