//! `rainbow`: k-rainbow index queries, rx4 recognizers and census runs.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Exact k-rainbow indices and rx4 characterizations for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Recognizers and the rx4 = 3 decision.
    Decide3,
    /// Also the exact rx4 for orders up to 6.
    Full,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Inline graph6 string.
    pub graph: Option<String>,
    /// File with one graph6 per line, or a single `n m` edge list.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Exact rx_k by exhaustive search.
    Rx {
        #[command(flatten)]
        common: Common,
        #[arg(long, short, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        /// Largest palette to try (default n - 1).
        #[arg(long)]
        q_max: Option<usize>,
        /// Write the certificate of a single graph to this file.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Node budget per palette size.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Decide rx4 = 3 with the backtracking procedure.
    Decide3 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Structure class and both recognizer verdicts.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Check a certificate against a graph.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Cross-check recognizers and solvers over all connected graphs of order n.
    Census {
        #[command(flatten)]
        common: Common,
        /// Order for internal generation (at most 7); use --input for larger corpora.
        #[arg(long, short)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Steiner distance of a vertex set, or the k-Steiner diameter.
    Steiner {
        #[command(flatten)]
        common: Common,
        #[arg(long, short, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        /// Comma-separated 1-based vertices.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
    },
    /// Complement graph and its path/cycle shape.
    Complement {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rx { common, k, q_max, cert, budget } => commands::rx(&common, k as usize, q_max, cert.as_deref(), budget),
        Command::Decide3 { common, cert, budget } => commands::decide3(&common, cert.as_deref(), budget),
        Command::Classify { common } => commands::classify(&common),
        Command::Verify { common, cert } => commands::verify(&common, &cert),
        Command::Census { common, n, mode, budget } => commands::census(&common, n, mode, budget),
        Command::Steiner { common, k, set } => commands::steiner(&common, k as usize, set.as_deref()),
        Command::Complement { common } => commands::complement(&common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_ERROR)
        }
    }
}
