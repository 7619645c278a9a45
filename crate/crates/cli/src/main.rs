//! `koszul`: experiments and certificate checks on free complexes over
//! `k[t_1, ..., t_r]`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for unusable input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use koszul_core::chainmap::RankMode;
use koszul_core::ring::{FieldSpec, RingSpec};

mod experiments;
mod files;
mod report;

#[derive(Parser)]
#[command(name = "koszul", version, about = "Koszul complexes, minimal models, filtrations and rank bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct RingArgs {
    /// Characteristic of the coefficient field (0 or a prime).
    #[arg(long = "char", default_value_t = 2)]
    characteristic: u64,
    /// Number of variables r.
    #[arg(long = "rank", default_value_t = 3)]
    rank: usize,
    /// Degree of each variable t_i.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    weight: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankModeArg {
    Exact,
    Probabilistic,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the rank-six perturbation of iota: K_3(1) -> K_3(0) over F_2.
    Example22 {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        weight: u32,
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u64,
        #[arg(long, value_enum, default_value_t = RankModeArg::Exact)]
        rank_mode: RankModeArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Ranks of iota + dh + hd for random homotopies h.
    RankSurvey {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = RankModeArg::Exact)]
        rank_mode: RankModeArg,
    },
    /// Local search for perturbations of iota with small rank (r >= 4).
    SearchLowRank {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Number of candidate perturbations to evaluate.
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        seed: u64,
        /// Directory for the certificate files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the factorization and every bound check on a complex file.
    VerifyBounds {
        file: PathBuf,
        /// Exponent m of K_r(m); searched when absent.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Minimal model of a complex file, with equivalence certificates.
    Minimal {
        file: PathBuf,
        /// Directory for model.cx and the inclusion, projection and homotopy maps.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The filtration of the minimal model and its properties.
    Filtration { file: PathBuf },
    /// The maps K_r(m) -> model -> K_r(0).
    Lift {
        file: PathBuf,
        #[arg(long)]
        m: Option<u32>,
        /// Directory for the complexes and the alpha and beta maps.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a map file describes a chain map and report its rank.
    VerifyMap {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RankModeArg::Exact)]
        rank_mode: RankModeArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write K_r(m) with its augmentation and product.
    Koszul {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures that stop a command before a verdict is reached.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(koszul_core::Error),
}

impl From<koszul_core::Error> for CliError {
    fn from(e: koszul_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl RingArgs {
    fn ring(&self) -> CliResult<RingSpec> {
        let field = FieldSpec::new(self.characteristic).map_err(|e| CliError::Usage(e.to_string()))?;
        RingSpec::new(field, self.rank, self.weight).map_err(|e| CliError::Usage(e.to_string()))
    }
}

fn rank_mode(mode: RankModeArg, seed: Option<u64>) -> CliResult<RankMode> {
    match (mode, seed) {
        (RankModeArg::Exact, _) => Ok(RankMode::Exact),
        (RankModeArg::Probabilistic, Some(s)) => Ok(RankMode::Probabilistic(s)),
        (RankModeArg::Probabilistic, None) => Err(CliError::Usage("--rank-mode probabilistic needs --seed".into())),
    }
}

fn run(cli: Cli) -> CliResult<report::Report> {
    match cli.command {
        Command::Example22 { weight, characteristic, rank_mode: mode, seed } => {
            experiments::example22(weight, characteristic, rank_mode(mode, seed)?)
        }
        Command::RankSurvey { ring, m, trials, seed, rank_mode: mode } => {
            experiments::rank_survey(ring.ring()?, m, trials, seed, rank_mode(mode, Some(seed))?)
        }
        Command::SearchLowRank { ring, m, budget, seed, out } => {
            experiments::search_low_rank(ring.ring()?, m, budget, seed, out.as_deref())
        }
        Command::VerifyBounds { file, m } => files::verify_bounds(&file, m),
        Command::Minimal { file, out } => files::minimal(&file, out.as_deref()),
        Command::Filtration { file } => files::filtration(&file),
        Command::Lift { file, m, out } => files::lift(&file, m, out.as_deref()),
        Command::VerifyMap { file, rank_mode: mode, seed } => files::verify_map(&file, rank_mode(mode, seed)?),
        Command::Koszul { ring, m, out } => files::koszul_file(ring.ring()?, m, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(rep) => {
            print!("{}", rep.render());
            ExitCode::from(if rep.passed() { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            let math = matches!(e, koszul_core::Error::NotChainMap { .. });
            ExitCode::from(if math { 1 } else { 2 })
        }
    }
}
