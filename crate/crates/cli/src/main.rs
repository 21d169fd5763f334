//! `golomb`: batch front end to the golomb-core verifications and
//! constructions.

mod commands;
mod output;

use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Outcome;

/// Seed used by randomized suites when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 0x6f1d_2c3b_5a49_8e07;

#[derive(Parser, Debug)]
#[command(
    name = "golomb",
    version,
    about = "Exact Hankel parities, Padé approximants and rational approximations of lacunary series",
    after_help = "Exit status: 0 when every check passes, 1 when a verification fails, 2 on bad usage.\n\
                  Big integers and rationals are printed as decimal strings (rationals as \"n/d\")."
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// RNG seed for randomized suites; for `seq --kind ruler` it is the value at index 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: one per core). Output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<NonZeroUsize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqKind {
    /// g(n) = 1 + (2-adic valuation of n), index 0 taken from --seed (0 or 1, default 1).
    Ruler,
    /// f(n) = 2 - g(n), defined for n >= 1.
    Fermat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    G0,
    G1,
    F,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a window of the ruler or Fermat coefficient sequence.
    #[command(after_help = "Example:\n  golomb seq --kind ruler --seed 1 --from 0 --len 5")]
    Seq {
        #[arg(long, value_enum, default_value_t = SeqKind::Ruler)]
        kind: SeqKind,
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 16)]
        len: usize,
    },
    /// Print a Hankel matrix H_n^p, its exact determinant and its parity.
    #[command(after_help = "Example:\n  golomb hankel --variant g1 --p 1 --n 3 --format text")]
    Hankel {
        #[arg(long, value_enum, default_value_t = VariantArg::G1)]
        variant: VariantArg,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// Use the bordered matrix (extra row and column of ones, corner 0).
        #[arg(long)]
        barred: bool,
    },
    /// Check the mod-6 parity tables, the odd-determinant theorem and the recurrence suite.
    #[command(after_help = "Example:\n  golomb verify-theorem --n-max 64 --jobs 8")]
    VerifyTheorem {
        /// Largest order for the parity tables.
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        /// Largest order for exact determinants of H_n^1(g) and H_n^1(f).
        #[arg(long, default_value_t = 24)]
        exact_n: usize,
        /// Largest order for GF(2) parities of H_n^1(g) and H_n^1(f).
        #[arg(long, default_value_t = 256)]
        parity_n: usize,
        /// Largest n for the recurrence suite.
        #[arg(long, default_value_t = 32)]
        recurrence_n: usize,
        /// Largest offset p for the recurrence suite.
        #[arg(long, default_value_t = 2)]
        recurrence_p: usize,
    },
    /// Randomized exact checks of the block-determinant and shift identities.
    #[command(after_help = "Example:\n  golomb identities --count 200 --seed 7")]
    Identities {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// The [k-1/k] approximant P/Q of sum z^(2^n)/(1 + epsilon z^(2^n)) and its defect h_k.
    #[command(after_help = "Example:\n  golomb pade --epsilon -1 --k 4")]
    Pade {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: i8,
        #[arg(long)]
        k: usize,
    },
    /// One integer convergent p/q of H(1/b) from the lifted approximant of order (k, m).
    #[command(after_help = "Example:\n  golomb approximate --epsilon 1 --b 2 --k 2 --m 4")]
    Approximate {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: i8,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
    },
    /// Effective irrationality exponents over every admissible order for window K.
    #[command(after_help = "Example:\n  golomb exponent --K 2 --b 2 --epsilon 1 --m-max 6 --format csv")]
    Exponent {
        #[arg(long = "K", value_name = "K")]
        big_k: u32,
        #[arg(long)]
        b: u64,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: i8,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
    },
    /// The exponent bound (1 + rho) theta / delta of the dyadic-window family.
    #[command(after_help = "Example:\n  golomb bound --K 1")]
    Bound {
        #[arg(long = "K", value_name = "K")]
        big_k: u32,
    },
    /// The smallest numbers k 2^n (k odd in the window for K) and their largest neighbour ratio.
    #[command(after_help = "Example:\n  golomb gap --K 3 --n0 0 --count 500")]
    Gap {
        #[arg(long = "K", value_name = "K")]
        big_k: u32,
        #[arg(long, default_value_t = 0)]
        n0: u32,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(golomb_core::Error),
    Io(std::io::Error),
}

impl From<golomb_core::Error> for CliError {
    fn from(e: golomb_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use golomb_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Core(E::Domain(_) | E::Unsupported(_)) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn dispatch(command: Command, common: &Common) -> Result<Outcome, CliError> {
    let fmt = common.format;
    match command {
        Command::Seq { kind, from, len } => commands::seq(kind, common.seed, from, len, fmt),
        Command::Hankel { variant, p, n, barred } => commands::hankel(variant, p, n, barred, fmt),
        Command::VerifyTheorem { n_max, exact_n, parity_n, recurrence_n, recurrence_p } => {
            commands::verify_theorem(n_max, exact_n, parity_n, recurrence_n, recurrence_p, fmt)
        }
        Command::Identities { count } => {
            commands::identities(common.seed.unwrap_or(DEFAULT_SEED), count, fmt)
        }
        Command::Pade { epsilon, k } => commands::pade(epsilon, k, fmt),
        Command::Approximate { epsilon, b, k, m } => commands::approximate(epsilon, b, k, m, fmt),
        Command::Exponent { big_k, b, epsilon, m_max } => commands::exponent(big_k, b, epsilon, m_max, fmt),
        Command::Bound { big_k } => commands::bound(big_k, fmt),
        Command::Gap { big_k, n0, count } => commands::gap(big_k, n0, count, fmt),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let common = cli.common;
    let outcome = match common.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.get())
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
            pool.install(|| dispatch(cli.command, &common))?
        }
        None => dispatch(cli.command, &common)?,
    };
    match &common.out {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome { failure: None, .. }) => ExitCode::SUCCESS,
        Ok(Outcome { failure: Some(msg), .. }) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("golomb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
