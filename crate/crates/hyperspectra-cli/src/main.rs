mod commands;
mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hyperspectra", version, about = "Exact spectral-tensor invariants of uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Node cap for trace enumeration
    #[arg(long, global = true, env = "HYPERSPECTRA_BUDGET", default_value_t = 50_000_000)]
    pub budget: u64,

    /// Seed for generators and sweeps
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Comparison tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Series truncation order
    #[arg(long = "K", global = true, default_value_t = 20)]
    pub k: u32,

    /// Write the report (or generated hypergraph) here instead of stdout
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for trace enumeration
    #[arg(long, global = true, env = "HYPERSPECTRA_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a hypergraph and write it in .hg (or JSON) form
    Gen {
        #[arg(long, value_enum)]
        kind: GenKindArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Edge count, read only by --kind random
        #[arg(long, default_value_t = 0)]
        m: u64,
    },
    /// Degree statistics, Zagreb index, simplex count, connectivity
    Invariants { input: PathBuf },
    /// One tensor trace by the chosen method
    Trace {
        input: PathBuf,
        /// Tensor: A, D, L or Q
        #[arg(long)]
        kind: String,
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Estrada-type indices: exact eigenvalues for graphs, certified
    /// series intervals otherwise
    Estrada { input: PathBuf },
    /// Evaluate every inequality on the input
    Bounds { input: PathBuf },
    /// Cross-check closed forms against the enumerator and walk counts
    /// against exhaustive search
    Oracle {
        input: PathBuf,
        /// Also extract the universal order-(r+1) adjacency constant for
        /// this r and compare with the stored table (r = 4 is slow)
        #[arg(long)]
        extract_cr: Option<u32>,
    },
    /// Bound suite over the built-in corpus plus a seeded random graph sweep
    Suite {
        /// Number of random graphs
        #[arg(long, default_value_t = 200)]
        graphs: u64,
        /// Largest random graph size
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        /// Skip the r >= 3 corpus members (they need enumeration runs)
        #[arg(long, default_value_t = false)]
        graphs_only: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKindArg {
    Empty,
    SingleEdge,
    Complete,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    General,
    Both,
    Auto,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
