use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quiverstab::semiinvariants::Mode;

mod commands;
mod sweep;

use commands::{CliError, Outcome};

#[derive(Parser)]
#[command(name = "quiverstab", version)]
#[command(about = "Exact slope stability checks for orientations of the A_n quiver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print vertex types, left/right counts and the intrinsic weight system
    Weights {
        /// Orientation word over R/L (or >/<); "" is the single-vertex quiver
        word: String,
    },
    /// Check that every indecomposable is stable
    Verify {
        word: String,
        /// Comma-separated weights; defaults to the intrinsic system
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// List the stability inequalities of all indecomposables
    Inequalities {
        word: String,
        /// Keep only forms that support a wall
        #[arg(long)]
        irredundant: bool,
    },
    /// Query the cone of weight systems stabilising every indecomposable
    Cone {
        word: String,
        /// Test membership of a comma-separated weight system
        #[arg(long, allow_hyphen_values = true, conflicts_with = "interior")]
        check: Option<String>,
        /// Produce an integer point of the open cone
        #[arg(long)]
        interior: bool,
    },
    /// Write the intrinsic system as a non-negative combination of interval weights
    Decompose {
        word: String,
        #[arg(long, default_value = "left")]
        mode: Mode,
    },
    /// Test the semi-invariance law on random representations over F_p
    Semiinv {
        word: String,
        /// Dimension vector of the random representations
        #[arg(long)]
        dims: String,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, default_value_t = 7)]
        prime: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify every orientation up to a size, one JSON line per orientation
    Sweep {
        #[arg(long)]
        max_n: usize,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Skip orientations already present in --out
        #[arg(long, requires = "out")]
        resume: bool,
        /// Keep one orientation per mirror/opposite class
        #[arg(long)]
        quotient_symmetry: bool,
        /// Include elapsed_micros in each record
        #[arg(long)]
        timings: bool,
    },
    /// Compare finite-field subrepresentations of a thin interval with the combinatorial count
    Oracle {
        word: String,
        /// Interval as p,q
        #[arg(long)]
        interval: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Weights { word } => commands::weights(&word),
        Command::Verify { word, weights } => commands::verify(&word, weights.as_deref()),
        Command::Inequalities { word, irredundant } => commands::inequalities(&word, irredundant),
        Command::Cone {
            word,
            check,
            interior,
        } => commands::cone(&word, check.as_deref(), interior),
        Command::Decompose { word, mode } => commands::decompose(&word, mode),
        Command::Semiinv {
            word,
            dims,
            weights,
            prime,
            trials,
            seed,
        } => commands::semiinv(&word, &dims, &weights, prime, trials, seed),
        Command::Sweep {
            max_n,
            out,
            jobs,
            resume,
            quotient_symmetry,
            timings,
        } => sweep::run(&sweep::Options {
            max_n,
            out,
            jobs,
            resume,
            quotient_symmetry,
            timings,
        }),
        Command::Oracle {
            word,
            interval,
            prime,
        } => commands::oracle(&word, &interval, prime),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            if let Some(payload) = &outcome.payload {
                let mut stdout = std::io::stdout().lock();
                let text = serde_json::to_string(payload).expect("payload serialises");
                if writeln!(stdout, "{text}").is_err() {
                    return ExitCode::from(3);
                }
            }
            ExitCode::from(if outcome.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
