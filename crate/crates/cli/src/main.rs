use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod report;

#[derive(Parser)]
#[command(name = "copocert", version, about = "Exact copositivity and extremality certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide copositivity and report the simplex minimum.
    Check { path: PathBuf },
    /// List the minimal zeros of a copositive matrix.
    Zeros {
        path: PathBuf,
        /// Only minimal zeros are listed; accepted for explicitness.
        #[arg(long)]
        minimal: bool,
    },
    /// Extremality certificate from the minimal-zero system.
    Extremal { path: PathBuf },
    /// Entry graph of the two-term system, its components and dimension.
    Graph {
        path: PathBuf,
        /// Write the graph in DOT format.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Split A into D * pattern * D with a {-1,0,1} pattern.
    Normalize { path: PathBuf },
    /// Census of unit-diagonal {-1,0,1} matrices of order N.
    Census {
        #[arg(short = 'n', value_name = "N")]
        order: usize,
        /// Output file for census records (one per line).
        #[arg(short = 'o', value_name = "OUT")]
        out: Option<PathBuf>,
        /// Allow orders whose candidate count exceeds the budget.
        #[arg(long)]
        allow_large: bool,
        /// Resume from the checkpoint next to OUT.
        #[arg(long)]
        resume: bool,
    },
    /// Check the equivalence of the two support/scaling conditions on an extremal matrix.
    Verify { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match cli.command {
        Command::Check { path } => commands::check(&path),
        Command::Zeros { path, .. } => commands::zeros(&path),
        Command::Extremal { path } => commands::extremal(&path),
        Command::Graph { path, dot } => commands::graph(&path, dot.as_deref()),
        Command::Normalize { path } => commands::normalize(&path),
        Command::Census {
            order,
            out,
            allow_large,
            resume,
        } => commands::census(order, out.as_deref(), allow_large, resume),
        Command::Verify { path } => commands::verify(&path),
    };
    print!("{}", report.render());
    ExitCode::from(code)
}
