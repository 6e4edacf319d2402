use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "topo", version, about = "Strong invariants of tight-binding insulators from bulk and boundary data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chern number of the Fermi projection on a bulk grid.
    ChernBulk(Common),
    /// Run a verification suite and report one row per assertion.
    Verify {
        which: VerifyKind,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the boundary (or bulk) invariant over a list of parameter values.
    Sweep {
        vary: SweepKind,
        /// Comma-separated parameter values.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        values: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    /// Bulk Chern number against the winding of the exponential-map unitary.
    Bbc,
    /// Bulk Chern number against the winding of the Cayley-transformed Green matrix.
    Theorem1,
    /// Bulk Chern number against the winding of the reflection matrix.
    Theorem2,
    /// Randomized property suites (seeded).
    Properties,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Delta,
    Epsilon,
    Grid,
    #[value(name = "strip_N", alias = "strip")]
    StripN,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Model file (insulator or scattering system).
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Wire file for theorem2 when --model is an insulator.
    #[arg(long)]
    pub wire: Option<PathBuf>,
    /// Fermi level.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Imaginary part of z = mu + i delta (default: 1% of the bulk gap).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Bulk grid, N or N,N,... (one entry per axis).
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
    /// Boundary grid, N or N,N,N.
    #[arg(long, value_delimiter = ',')]
    pub boundary_grid: Option<Vec<usize>>,
    /// Truncation depth of the half-space resolvent; for bbc the exp-map strip M (default 30).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Strip width N of the boundary Green matrix.
    #[arg(long, default_value_t = 1)]
    pub strip: usize,
    /// Cayley scale epsilon.
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Gap interval LO,HI for the exponential map (default: inner 90% of the bulk gap).
    #[arg(long, value_delimiter = ',', num_args = 2, allow_negative_numbers = true)]
    pub gap: Option<Vec<f64>>,
    /// Finite-difference order of the 3D winding density.
    #[arg(long, default_value_t = 6)]
    pub order: usize,
    /// Output file (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Seed of the randomized property suites.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Samples per randomized property.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}
