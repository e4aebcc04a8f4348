//! `circlemm`: circle-graph recognition, signed interlacement matrices and
//! multimatroid checks from the command line.
//!
//! Exit codes: 0 success (or "circle"), 1 negative verdict or failed
//! self-check, 2 inconclusive or a size bound exceeded, 3 any other error.

mod commands;
mod golden;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use circlemm::graph::DEFAULT_BUDGET;
use circlemm::FieldSpec;
use clap::{Args, Parser, Subcommand};

use report::RunReport;

#[derive(Parser)]
#[command(name = "circlemm", version, about = "Isotropic matroids, multimatroids and circle graphs")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Leave timings out of the report, so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph file describes a circle graph.
    Recognize(RecognizeArgs),
    /// Signed interlacement matrix of a double occurrence word.
    SignedIas(SignedArgs),
    /// Rebuild the four-vertex worked example and check it against stored values.
    PaperExample(ExampleArgs),
    /// Multimatroid classification and matroid checks.
    #[command(subcommand)]
    Multimatroid(MmCommand),
}

#[derive(Args)]
pub struct RecognizeArgs {
    /// Graph file: `v <label>`, `e <a> <b>` lines.
    pub path: PathBuf,
    /// Search for W5, BW3 and W7 as vertex-minors.
    #[arg(long)]
    pub obstruction: bool,
    /// Find a double occurrence word for each component (at most 6 vertices each).
    #[arg(long)]
    pub realize: bool,
    /// Orbit size limit for the obstruction search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Args)]
pub struct SignedArgs {
    /// DOW file, one word per line.
    pub path: PathBuf,
    /// Base edge such as `ad`, one per component. Defaults to each word's closing edge.
    #[arg(long)]
    pub base: Vec<String>,
    /// Start every fundamental circuit at the first occurrence instead of using a base.
    #[arg(long, conflicts_with = "base")]
    pub unbased: bool,
    /// Field for the sheltering check.
    #[arg(long, default_value = "rational")]
    pub field: FieldSpec,
    /// Warn when the fundamental circuits are not based.
    #[arg(long)]
    pub require_unimodular: bool,
}

#[derive(Args)]
pub struct ExampleArgs {
    /// Also check sheltering over this field.
    #[arg(long)]
    pub field: Option<FieldSpec>,
}

#[derive(Subcommand)]
pub enum MmCommand {
    /// Classify a circuit list (JSON with `classes` and `circuits`).
    Classify { path: PathBuf },
    /// The 3-matroid of AG(2,3) with its horizontal lines as classes.
    H33,
    /// The 2-matroid S1.
    S1,
    /// Z2 of a binary matroid file.
    Z2 { path: PathBuf },
    /// Z3 of a binary matroid file.
    Z3 {
        path: PathBuf,
        /// Also decide regularity through the Naji system of the fundamental graph.
        #[arg(long)]
        naji: bool,
    },
    /// Planarity of a binary matroid through its fundamental graph.
    Planar {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Search the fundamental graph for an obstruction.
        #[arg(long)]
        obstruction: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Negative,
    Inconclusive,
}

#[derive(Debug)]
pub enum Failure {
    Bound(String),
    Other(String),
}

impl From<circlemm::Error> for Failure {
    fn from(e: circlemm::Error) -> Self {
        match e {
            circlemm::Error::TooLarge { .. } => Failure::Bound(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

pub type CmdResult = Result<(RunReport, Outcome), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 3 } else { 0 });
        }
    };
    let timing = !cli.no_timing;
    let result = match &cli.command {
        Command::Recognize(a) => commands::cmd_recognize(a, timing),
        Command::SignedIas(a) => commands::cmd_signed_ias(a, timing),
        Command::PaperExample(a) => commands::cmd_paper_example(a, timing),
        Command::Multimatroid(m) => commands::cmd_multimatroid(m, timing),
    };
    match result {
        Ok((report, outcome)) => {
            print!("{}", if cli.json { report.to_json() } else { report.to_text() });
            ExitCode::from(match outcome {
                Outcome::Success => 0,
                Outcome::Negative => 1,
                Outcome::Inconclusive => 2,
            })
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("bound exceeded: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
