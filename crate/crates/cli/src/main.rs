mod analyze;
mod compare;
mod geometry;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use liegraph::graphs::{parse_edge_list, parse_weights, Graph};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input or flags: exit 2.
    #[error("{0}")]
    Input(String),
    /// A certified invariant failed: exit 3.
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

impl From<liegraph::Error> for CliError {
    fn from(e: liegraph::Error) -> Self {
        match e {
            liegraph::Error::Consistency(m) => CliError::Consistency(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "liegraph", version, about = "Solvable Lie algebras of graphs: invariants, curvature and solitons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Output {
    /// Write the JSON report here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print a flat human-readable table.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph structure and algebraic invariants.
    Analyze {
        input: PathBuf,
        /// Clique size.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// q, f2 or fp:P.
        #[arg(long, default_value = "q")]
        field: String,
        /// Vertex weights file (`i value` or `w i value` per line).
        #[arg(long)]
        weights: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Left-invariant metric geometry for a metric on the algebra.
    Metric {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// JSON metric file: {"diag": [...]} or {"matrix": [[...]]}.
        #[arg(long, conflicts_with = "diag")]
        metric: Option<PathBuf>,
        /// Diagonal metric entries, comma separated.
        #[arg(long)]
        diag: Option<String>,
        /// Random diagonal metrics for the stably-Ricci-diagonal test.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Search diagonal metrics for a Ricci soliton.
    Soliton {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 500)]
        iters: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Decide isomorphism of two graphs and of their algebras.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Vertex bound for exhaustive search (default: LIEGRAPH_MAX_N or 10).
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Write an edge list for kn:N, path:N, cycle:N or gnp:N:P.
    Gen {
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_weights(path: &Path, n: usize) -> Result<Vec<liegraph::Rational>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_weights(&text, n).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            input,
            k,
            field,
            weights,
            output,
        } => {
            let r = analyze::run(&input, k, &field, weights.as_deref())?;
            report::emit(&r, output.out.as_deref(), output.pretty)
        }
        Command::Metric {
            input,
            k,
            metric,
            diag,
            trials,
            seed,
            output,
        } => {
            let r = geometry::metric(&input, k, metric.as_deref(), diag.as_deref(), trials, seed)?;
            report::emit(&r, output.out.as_deref(), output.pretty)
        }
        Command::Soliton {
            input,
            k,
            iters,
            tol,
            seed,
            output,
        } => {
            let r = geometry::soliton(&input, k, iters, tol, seed)?;
            report::emit(&r, output.out.as_deref(), output.pretty)
        }
        Command::Compare {
            a,
            b,
            k,
            max_n,
            output,
        } => {
            let max_n = match max_n {
                Some(m) => m,
                None => report::max_n_from_env()?,
            };
            let r = compare::run(&a, &b, k, max_n)?;
            report::emit(&r, output.out.as_deref(), output.pretty)
        }
        Command::Gen { family, seed, out } => {
            let family: liegraph::graphs::Family = family.parse()?;
            let text = liegraph::graphs::generate(&family, seed)?.to_edge_list();
            match out {
                Some(path) => report::write_atomic(&path, text.as_bytes()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
