//! `spectra`: generate graphs, analyze their spectra and walks, and verify the bound catalogue.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spectra_core::Error;

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Spectral measures, return probabilities and bound checks for finite graphs")]
pub struct Cli {
    /// Seed for random generators and Monte Carlo.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for files written by the command.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph from a generator spec such as `circulant:n=9,offsets=1-2` and write its edge list.
    Generate { spec: String },
    /// Spectra of P, L, Q, Theta and A, stationary distribution, diameters, chain times and energy efficiency.
    Analyze {
        /// Graph file (CSV `u,v,w` or JSON) or generator spec.
        input: String,
    },
    /// Evaluate the bound checkers on a graph or a built-in suite.
    Verify {
        input: Option<String>,
        /// Built-in suite: `standard` or `quick`.
        #[arg(long)]
        suite: Option<String>,
        /// Comma-separated checker names, or `all`.
        #[arg(long, default_value = "all")]
        checkers: String,
        /// Comma-separated δ values replacing the default grid.
        #[arg(long)]
        delta_grid: Option<String>,
        /// Comma-separated t values replacing the default grid.
        #[arg(long)]
        t_grid: Option<String>,
    },
    /// Return probabilities p_t(x,x) for t = 0..t_max, exact and by simulation.
    Walk {
        input: Option<String>,
        #[arg(long, default_value_t = 0)]
        x: usize,
        #[arg(long, default_value_t = 16)]
        t_max: u64,
        /// Simulated walks per t; 0 leaves the Monte Carlo columns empty.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        /// Use the walk on the integers with steps uniform on {-2,-1,1,2} instead of a graph.
        #[arg(long)]
        jump1d: bool,
    },
    /// Energy efficiency estimates and the set selection at two thresholds.
    Energy { input: String },
    /// Relaxation time, uniform mixing time and the deviation sequence.
    Mix { input: String },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_)
        | Error::Parse(_)
        | Error::BadSpec(_)
        | Error::InvalidArgument(_)
        | Error::VertexOutOfRange { .. }
        | Error::DisconnectedGraph { .. }
        | Error::EmptyGraph
        | Error::DuplicateEdge(..)
        | Error::SelfLoop(_)
        | Error::NonpositiveWeight(..)
        | Error::InfeasibleParams(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("SPECTRA_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: SPECTRA_THREADS must be a positive integer, got '{v}'");
                return ExitCode::from(2);
            }
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
