//! `sorder`: enumerate trees, compute spectral moments, rank by S-order and
//! check the extremal trees of a bipartition class.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "sorder", version, about = "S-order tools for trees")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct GlobalArgs {
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Largest tree order any command may enumerate.
    #[arg(long, global = true, env = "SORDER_CAP", default_value_t = sorder_core::enumeration::DEFAULT_CAP)]
    cap: usize,

    /// Enumerate with the slower reference backend.
    #[arg(long, global = true)]
    reference: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    B,
    D,
}

#[derive(Subcommand)]
enum Command {
    /// List every tree of order N, or of class (P, Q).
    Enumerate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
    },
    /// Spectral moments S_0..S_{n-1} of each graph6 line.
    Moments {
        /// graph6 file; standard input when absent or "-".
        input: Option<PathBuf>,
        /// Compute S_0..S_K instead.
        #[arg(long, value_name = "K")]
        max_power: Option<usize>,
    },
    /// Rank graph6 lines (all of one order) in ascending S-order.
    Rank {
        input: Option<PathBuf>,
        /// Keep only the K largest; fails if a tie straddles the cut.
        #[arg(long, value_name = "K")]
        last: Option<usize>,
    },
    /// Build a member of the B or D family.
    Family {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
    },
    /// Ascent chain from each input tree to the double star of its class.
    Chain { input: Option<PathBuf> },
    /// Compare the predicted last four trees with a brute-force ranking.
    Verify {
        #[arg(long, required_unless_present = "all_upto", requires = "q")]
        p: Option<usize>,
        #[arg(long, required_unless_present = "all_upto", requires = "p")]
        q: Option<usize>,
        /// Every cell 4 <= p <= q with p + q <= N.
        #[arg(long, value_name = "N", conflicts_with_all = ["p", "q"])]
        all_upto: Option<usize>,
        /// Also write the CSV summary table to FILE.
        #[arg(long, value_name = "FILE")]
        summary: Option<PathBuf>,
        /// Include wall-clock time in reports (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Compare two trees (one graph6 line per file) in S-order.
    Compare { a: PathBuf, b: PathBuf },
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Success,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command, &cli.global) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

// A reader such as `head` closed the pipe early.
fn broken_pipe(e: &anyhow::Error) -> bool {
    let is_pipe = |io: &std::io::Error| io.kind() == std::io::ErrorKind::BrokenPipe;
    e.chain().any(|c| {
        if let Some(io) = c.downcast_ref::<std::io::Error>() {
            return is_pipe(io);
        }
        matches!(
            c.downcast_ref::<csv::Error>().map(csv::Error::kind),
            Some(csv::ErrorKind::Io(io)) if is_pipe(io)
        )
    })
}
