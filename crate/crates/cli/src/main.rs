//! `matchkit`: decide, generate, decompose, reduce, skeleton, crossval and
//! verify from the command line.
//!
//! Reports are JSON on standard output, diagnostics go to standard error.
//! Exit codes: 0 both properties (or success), 1 not both (or an invalid
//! certificate under `verify`), 2 input error, 3 budget exhausted, 4
//! structural and oracle verdicts disagree.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "matchkit",
    version,
    about = "Birkhoff–von Neumann and PM-compact matching covered graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArg {
    /// Cap on items produced by exhaustive searches.
    #[arg(long, env = "MATCHKIT_BUDGET", default_value_t = 1_000_000)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is both Birkhoff–von Neumann and PM-compact.
    #[command(group(ArgGroup::new("mode").args(["structural", "oracle", "both"])))]
    Decide {
        /// Graph file in `p mcg` format, or `-` for standard input.
        file: PathBuf,
        /// Retract plus family recognition (the default).
        #[arg(long)]
        structural: bool,
        /// Exhaustive conformal bicycle search.
        #[arg(long)]
        oracle: bool,
        /// Run both routes and fail with exit code 4 if they disagree.
        #[arg(long)]
        both: bool,
        /// Skip the exponential search for a negative certificate.
        #[arg(long)]
        no_witness: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Write a member of a named family in `p mcg` format.
    Generate {
        /// One of k2_multi, k33, k4_multi, odd_wheel, prism, moebius_ladder,
        /// truncated_biwheel, staircase, petersen, k4_splice_k33, murty, p_brick.
        family: String,
        /// Integer parameters: k, an order, multiplicities.
        params: Vec<usize>,
        /// Output file; the graph goes to standard output when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Tight cut decomposition into bricks and braces.
    Decompose {
        file: PathBuf,
        /// Split on a random tight cut at every step.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reduce a simple brick to a Norine–Thomas brick by strictly thin edges.
    Reduce { file: PathBuf },
    /// The 1-skeleton of the perfect matching polytope.
    Skeleton {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Compare both routes on every matching covered graph up to an order.
    Crossval {
        /// Largest even order to enumerate (at most 12).
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Seed for the multigraph perturbations.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeded multigraph perturbations of family members.
        #[arg(long, default_value_t = 0)]
        perturbations: usize,
        /// Read graphs from a `p mcg` stream instead of enumerating.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Re-validate a saved report against its graph.
    Verify {
        /// The graph the report was produced from.
        graph: PathBuf,
        /// A JSON report written by decide, decompose, reduce or skeleton.
        report: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decide {
            file,
            oracle,
            both,
            no_witness,
            budget,
            ..
        } => {
            let mode = if both {
                commands::Mode::Both
            } else if oracle {
                commands::Mode::Oracle
            } else {
                commands::Mode::Structural
            };
            commands::decide(&file, mode, !no_witness, budget.budget)
        }
        Command::Generate {
            family,
            params,
            out,
        } => commands::generate(&family, &params, out.as_deref()),
        Command::Decompose { file, seed } => commands::decompose(&file, seed),
        Command::Reduce { file } => commands::reduce(&file),
        Command::Skeleton { file, budget } => commands::skeleton(&file, budget.budget),
        Command::Crossval {
            max_order,
            seed,
            perturbations,
            input,
            budget,
        } => commands::crossval(
            max_order,
            seed,
            perturbations,
            input.as_deref(),
            budget.budget,
        ),
        Command::Verify { graph, report } => commands::verify(&graph, &report),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("matchkit: {e:#}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
