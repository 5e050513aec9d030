//! `chromaplex`: command-line access to every computation path.
//!
//! Exit codes: 0 success, 2 input error, 3 verification mismatch, 4 budget refusal.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "chromaplex", version, about = "Exact marked chromatic polynomials, independence series and arrangements")]
struct Cli {
    /// Worker threads for parallel paths (results do not depend on this).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Read the instance from a JSON file.
    #[arg(long, short, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline JSON instance.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChromMethod {
    Partition,
    Blowup,
    Chordal,
    Brute,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Marked chromatic polynomial of a hypergraph.
    Chrom {
        #[command(flatten)]
        input: Input,
        /// Multiplicities, comma separated (one per vertex).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = false)]
        m: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ChromMethod::Partition)]
        method: ChromMethod,
        /// Also evaluate at this integer.
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
        /// Cross-check against brute-force colouring counts at q = 2, 3, 4.
        #[arg(long)]
        verify: bool,
    },
    /// Truncated power `I^mark(G, x)^q` of the (marked) independence series.
    Series {
        #[command(flatten)]
        input: Input,
        /// Truncation per variable, comma separated.
        #[arg(long, value_delimiter = ',')]
        trunc: Vec<u32>,
        /// Integer exponent.
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    /// Subspace arrangement computations.
    Arrangement {
        #[command(subcommand)]
        op: ArrangementOp,
    },
    /// Independence systems.
    System {
        #[command(subcommand)]
        op: SystemOp,
    },
    /// Exhaustive sign scan of I(G, -x)^{-1} over small simple hypergraphs.
    Scan {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        trunc: u32,
        /// Keep isomorphic copies.
        #[arg(long)]
        no_dedup: bool,
        /// Append verdicts to this JSON-lines file (stdout otherwise).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Skip hypergraphs already recorded in the output file.
        #[arg(long, requires = "output")]
        resume: bool,
    },
    /// Run the built-in golden examples.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum ArrangementOp {
    /// Characteristic polynomial via the intersection poset.
    Charpoly {
        #[command(flatten)]
        input: Input,
    },
    /// Marked chromatic polynomial of the arrangement.
    Markchrom {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        m: Vec<u32>,
        /// Special nodes (defaults to the arrangement's own).
        #[arg(long, value_delimiter = ',')]
        special: Option<Vec<usize>>,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<i64>,
        /// Cross-check against the finite-field colouring count at this prime.
        #[arg(long)]
        verify_prime: Option<u64>,
    },
    /// Number of regions of a real hyperplane arrangement.
    Regions {
        #[command(flatten)]
        input: Input,
    },
    /// Points of F_p^n off every subspace.
    Countfp {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
    },
    /// The marked m-clan.
    Clan {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        m: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        special: Option<Vec<usize>>,
    },
}

#[derive(Subcommand, Debug)]
enum SystemOp {
    /// Check that the family contains the empty set and is downward closed.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Hypergraph of minimal non-members.
    Tograph {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        special: Vec<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let fmt = cli.format;
    let result = match cli.command {
        Command::Chrom { input, m, method, at, verify } => commands::chrom(&input, &m, method, at, verify, fmt),
        Command::Series { input, trunc, q } => commands::series(&input, &trunc, q, fmt),
        Command::Arrangement { op } => match op {
            ArrangementOp::Charpoly { input } => commands::charpoly(&input, fmt),
            ArrangementOp::Markchrom { input, m, special, at, verify_prime } => {
                commands::markchrom(&input, &m, special.as_deref(), at, verify_prime, fmt)
            }
            ArrangementOp::Regions { input } => commands::regions(&input, fmt),
            ArrangementOp::Countfp { input, p } => commands::countfp(&input, p, fmt),
            ArrangementOp::Clan { input, m, special } => commands::clan(&input, &m, special.as_deref(), fmt),
        },
        Command::System { op } => match op {
            SystemOp::Validate { input } => commands::validate(&input, fmt),
            SystemOp::Tograph { input, special } => commands::tograph(&input, &special, fmt),
        },
        Command::Scan { max_n, trunc, no_dedup, output, resume } => {
            commands::scan(max_n, trunc, !no_dedup, output.as_deref(), resume, fmt)
        }
        Command::Selftest => commands::selftest(fmt),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
