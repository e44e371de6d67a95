use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod io;
mod selftest;

/// Exact analysis of supermodular functions, generalized permutohedra,
/// balanced multisets and matroids.
#[derive(Debug, Parser)]
#[command(name = "supermod", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write data to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for randomized experiments.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Permit multi-minute jobs such as the n = 5 enumeration.
    #[arg(long, global = true)]
    pub allow_big: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Fewest,
    Balanced,
    Lex,
    Given,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate standard representatives of irreducible supermodular functions.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Row insertion order for the double description method.
        #[arg(long, value_enum, default_value_t = Order::Given)]
        order: Order,
    },
    /// Classify a set function as modular, supermodular or neither.
    CheckSupermodular {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Certify whether a supermodular function spans an extreme ray.
    CheckIrreducible {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Write a supermodular function as a nonnegative sum of irreducibles.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        /// JSONL ray list; enumerated on the fly when omitted.
        #[arg(long)]
        rays: Option<PathBuf>,
    },
    /// Recover the standard function from a supermodularity vector.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Path sums and color weights of a set function or supermodularity vector.
    PathSums {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Balanced multisets of subsets.
    Balanced {
        #[command(subcommand)]
        command: BalancedCommand,
    },
    /// Matroids and nullity functions.
    Matroid {
        #[command(subcommand)]
        command: MatroidCommand,
    },
    /// The two-layer family of irreducibles.
    TwoLayer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Check the linear identity among the family's building blocks.
        #[arg(long)]
        verify: bool,
        /// Cross-check against the cone face on layers t and t + 1.
        #[arg(long)]
        oracle: bool,
    },
    /// Determinants of random 0/1 matrices.
    DetExperiment {
        #[arg(long = "N")]
        size: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Run the built-in invariant suite.
    SelfTest,
}

#[derive(Debug, Subcommand)]
pub enum BalancedCommand {
    /// Balance, complexity and irreducibility of a multiset.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "N")]
        size: Option<usize>,
    },
    /// Search for a proper balanced sub-multiset.
    ZIrreducible {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "N")]
        size: Option<usize>,
    },
    /// Enumerate irreducible balanced vectors by cone and by support.
    Enumerate {
        #[arg(long = "N")]
        size: usize,
    },
    /// Complexity of a balanced multiset.
    Complexity {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "N")]
        size: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MatroidCommand {
    /// Validate a basis list and report rank, loops, coloops and reducibility.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Nullity function of a loopless matroid.
    ToSupermodular {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Matroid of a simple supermodular function.
    FromSupermodular {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// All loopless matroids on [n].
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

/// Result of a command that answers a yes/no question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    True,
    False,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(Outcome::True) => ExitCode::SUCCESS,
        Ok(Outcome::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
