//! `tilelab`: puzzle search, verification cost accounting and root finding
//! from the command line.
//!
//! Exit codes: 0 success, 1 negative result (invalid solution, unsolvable
//! grid, no root pattern solved), 2 usage or input error, 3 resource limit.

mod error;
mod output;
mod puzzle;
mod report;
mod roots;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tilelab_core::SearchLimits;

use crate::error::CliError;
use crate::output::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "tilelab", version, about = "Sliding-tile search, decision counting and root finding")]
struct Cli {
    /// Output format. JSON mode prints exactly one document on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, env = "TILELAB_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sliding-tile operations.
    #[command(subcommand)]
    Puzzle(PuzzleCmd),
    /// Polynomial root finding.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Bound checks and a polynomial corpus in one document.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct LimitArgs {
    /// Cap on stored states for breadth-first search.
    #[arg(long, default_value_t = 5_000_000)]
    max_states: usize,
    /// Cap on node expansions or enumerated move sequences.
    #[arg(long, default_value_t = 5_000_000_000)]
    max_nodes: u64,
    /// Wall-clock limit in seconds (no limit when absent).
    #[arg(long)]
    timeout: Option<f64>,
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_states: self.max_states,
            max_nodes: self.max_nodes,
            deadline: self.timeout.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        }
    }
}

#[derive(Args, Debug)]
struct GridInput {
    /// Grid file in text or JSON format; `-` reads standard input.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Algo {
    /// BFS for n <= 3, IDA* otherwise.
    Auto,
    Bfs,
    Ida,
    /// Every move string in length-then-lexicographic order.
    Exhaust,
}

#[derive(Subcommand, Debug)]
enum PuzzleCmd {
    /// Optimal solution of a grid.
    Solve {
        #[command(flatten)]
        grid: GridInput,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Longest sequence tried by `--algo exhaust`.
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Checks that a move sequence solves a grid.
    Verify {
        #[command(flatten)]
        grid: GridInput,
        /// Move letters U, D, R, L (the blank's motion).
        #[arg(long)]
        seq: String,
    },
    /// Breadth-first table of every state reachable from the goal.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Stop after this many levels (required for n >= 4).
        #[arg(long)]
        depth_limit: Option<usize>,
        /// Also write the full table, one entry per state, to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Bound formulas against ground truth (n = 2 or 3).
    Bounds {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decisions spent verifying a sequence, against the verification ceiling.
    Cost {
        #[command(flatten)]
        grid: GridInput,
        #[arg(long)]
        seq: String,
        /// Include the per-primitive breakdown.
        #[arg(long)]
        emit_ledger: bool,
    },
    /// Instrumented exhaustive search, against the search ceiling.
    Exhaust {
        #[command(flatten)]
        grid: GridInput,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        emit_ledger: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Real,
    Complex,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OrderArg {
    /// `{3}, {2,1}, {1,1,1}`.
    FewestRoots,
    /// `{1,1,1}, {2,1}, {3}`.
    MostRoots,
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Low-to-high coefficient list, e.g. "pi/2, -pi^2, 0, 2".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "poly_file", required_unless_present = "poly_file")]
    poly: Option<String>,
    /// JSON file: {"coeffs": [...], "kind": "rational"|"complex"} or a bare array.
    #[arg(long)]
    poly_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct SolverArgs {
    /// Coefficient residual tolerance (max-norm, relative to max(1, |a|)).
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
    /// Deterministic Newton starts per pattern.
    #[arg(long, default_value_t = 32)]
    starts: usize,
    /// Pattern order within each cofactor degree (default: fewest-roots in
    /// real mode, most-roots in complex mode).
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
}

#[derive(Subcommand, Debug)]
enum RootsCmd {
    /// Roots with multiplicities, trying one factorization pattern at a time.
    Find {
        #[command(flatten)]
        poly: PolyInput,
        #[arg(long, value_enum, default_value_t = ModeArg::Real)]
        mode: ModeArg,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Residual and multiplicity of a candidate root.
    Verify {
        #[command(flatten)]
        poly: PolyInput,
        /// Candidate value, e.g. "0.16", "1/3" or "1+2i".
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        /// Largest |p(root)| accepted as a root.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Lists factorization patterns for a degree in solve order.
    Cases {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Real)]
        mode: ModeArg,
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
    },
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Side lengths to audit (2 and/or 3); repeatable.
    #[arg(long = "n", value_name = "N", default_values_t = [2u64, 3])]
    n_list: Vec<u64>,
    /// JSON array of corpus entries: {"p": poly, "q": poly?, "mode": "real"|"complex"?}.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    solver: SolverArgs,
}

fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Puzzle(p) => puzzle::run(p),
        Command::Roots(r) => roots::run(r),
        Command::Report(r) => report::run(r),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let format = cli.format;
    let outcome = dispatch(cli.command).unwrap_or_else(Outcome::from);
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("tilelab: {msg}");
    }
    if let Some(body) = outcome.render(format) {
        let mut out = std::io::stdout().lock();
        if writeln!(out, "{body}").and_then(|_| out.flush()).is_err() {
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.code)
}
