//! `kclass`: compute and compare K-theoretic invariants from the command
//! line. Every subcommand prints one JSON object on standard output.
//!
//! Exit codes: 0 whenever a result (including any verdict) was computed,
//! 1 on an internal inconsistency, 2 on unreadable or malformed input,
//! 3 on input outside the supported class.

mod batch;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Failure;

#[derive(Parser)]
#[command(
    name = "kclass",
    version,
    about = "Exact K-theoretic invariants of extensions"
)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix given as a JSON array of rows.
    Snf { file: PathBuf },
    /// Ext^1(A, B) for two groups given as {"free_rank": r, "torsion": [...]}.
    Ext { a_file: PathBuf, b_file: PathBuf },
    /// Graph algebra computations.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Six-term exact sequence invariants.
    #[command(subcommand)]
    Sixterm(SixtermCommand),
    /// Substitution invariants (n, p, A, A_tilde).
    #[command(subcommand)]
    Subst(PairCommand),
    /// Scaled ordered groups (DG(A), scale).
    #[command(subcommand)]
    Scaled(PairCommand),
    /// Ordered groups Z + alpha Z for quadratic irrationals.
    #[command(subcommand)]
    Sturmian(SturmianCommand),
    /// Run the comparisons listed in a manifest.
    Compare {
        #[arg(long)]
        batch: PathBuf,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// K0 and K1 of the graph algebra.
    Kth { file: PathBuf },
    /// Hereditary saturated vertex sets.
    Ideals { file: PathBuf },
    /// Six-term invariant of a graph with exactly one nontrivial ideal.
    Invariant { file: PathBuf },
    /// Compare the six-term invariants of two graphs.
    Compare { file1: PathBuf, file2: PathBuf },
}

#[derive(Subcommand)]
enum SixtermCommand {
    /// Report exactness and cone violations.
    Check { file: PathBuf },
    /// Decide isomorphism of two invariants.
    Compare {
        file1: PathBuf,
        file2: PathBuf,
        /// Automorphism pairs tried when enumeration is incomplete.
        #[arg(long, default_value_t = kclass::sixterm::DEFAULT_PAIR_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum PairCommand {
    /// Decide isomorphism of two invariants.
    Compare {
        file1: PathBuf,
        file2: PathBuf,
        /// Search budget for unit exponents.
        #[arg(long, default_value_t = commands::DEFAULT_DG_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum SturmianCommand {
    /// Compare two literals of the form "(a+b*sqrt(d))/c".
    Compare {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
}

fn run(command: Command) -> Result<serde_json::Value, Failure> {
    match command {
        Command::Snf { file } => commands::snf(&file),
        Command::Ext { a_file, b_file } => commands::ext(&a_file, &b_file),
        Command::Graph(GraphCommand::Kth { file }) => commands::graph_kth(&file),
        Command::Graph(GraphCommand::Ideals { file }) => commands::graph_ideals(&file),
        Command::Graph(GraphCommand::Invariant { file }) => commands::graph_invariant(&file),
        Command::Graph(GraphCommand::Compare { file1, file2 }) => {
            commands::graph_compare(&file1, &file2)
        }
        Command::Sixterm(SixtermCommand::Check { file }) => commands::sixterm_check(&file),
        Command::Sixterm(SixtermCommand::Compare {
            file1,
            file2,
            bound,
        }) => commands::sixterm_compare(&file1, &file2, bound),
        Command::Subst(PairCommand::Compare {
            file1,
            file2,
            bound,
        }) => commands::subst_compare(&file1, &file2, bound),
        Command::Scaled(PairCommand::Compare {
            file1,
            file2,
            bound,
        }) => commands::scaled_compare(&file1, &file2, bound),
        Command::Sturmian(SturmianCommand::Compare { alpha, beta }) => {
            commands::sturmian_compare(&alpha, &beta)
        }
        Command::Compare { batch } => batch::run(&batch),
    }
}

fn print(value: &serde_json::Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(value) => {
            print(&value, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(f) => {
            print(&f.to_json(), cli.pretty);
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
