mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Unit barycentre-0 representations of graphs: solve, draw, bound, certify.
#[derive(Debug, Parser)]
#[command(name = "sphere-rep", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Edge-list file: header `n m`, then one `u v` pair per line.
    file: Option<PathBuf>,
    /// Generator spec instead of a file, e.g. cycle:20, hypercube:5, random:200,3, petersen.
    #[arg(long = "gen", value_name = "SPEC")]
    generator: Option<String>,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Rows of the low-rank factor [default: ceil(sqrt(2n)) + 1].
    #[arg(long)]
    rank: Option<usize>,
    /// Feasibility tolerance on the barycentre residual.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Outer penalty rounds.
    #[arg(long = "max-iters", default_value_t = 50)]
    max_iters: usize,
    #[arg(long, default_value_t = 3)]
    restarts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Sdp,
    Spectral,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve for the maximum of rho and attach a dual certificate when the graph is regular.
    Rho {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path [default: stdout].
        #[arg(long, alias = "out")]
        report: Option<PathBuf>,
    },
    /// Draw the graph as SVG (dimension 2) or emit a projected matrix as JSON.
    Draw {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Method::Sdp)]
        method: Method,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Drawing path [default: stdout].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Label vertices with their indices.
        #[arg(long)]
        labels: bool,
    },
    /// Spectral upper bound and, when the girth allows, the constructed lower bound.
    Bound {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, alias = "out")]
        report: Option<PathBuf>,
    },
    /// Build one Nilli vector and check its norm and quadratic form.
    Nilli {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
        /// First edge as `u,v` [default: first edge of a maximum pairing].
        #[arg(long, value_name = "U,V")]
        edge: Option<String>,
        /// Far edge as `u,v`.
        #[arg(long, value_name = "U,V")]
        far: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, alias = "out")]
        report: Option<PathBuf>,
    },
    /// Sweep over random regular graphs: cycle counts, spectra, certificates, solver.
    RandomRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Sample i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest cycle counted [default: 2k+2].
        #[arg(long)]
        max_cycle: Option<usize>,
        /// Skip the solver.
        #[arg(long)]
        no_solver: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, alias = "out")]
        report: Option<PathBuf>,
    },
    /// Monte Carlo check of the mean squared length of a randomly projected segment.
    ProjectCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, alias = "out")]
        report: Option<PathBuf>,
    },
    /// Split per-vertex deficiencies into pair weights, from a list or a graph's certificate.
    RepairDemo {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated deficiencies, e.g. 1,1,2.
        #[arg(long, value_name = "F1,F2,...")]
        weights: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, alias = "out")]
        report: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(sphere_rep::Error),
}

impl From<sphere_rep::Error> for CliError {
    fn from(e: sphere_rep::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use sphere_rep::Error as E;
        match self {
            CliError::Input(_) => 1,
            CliError::Core(E::NoConvergence { .. }) => 2,
            CliError::Core(
                E::CertificateInvalid { .. } | E::NotUnit { .. } | E::NoPairing { .. } | E::GirthTooSmall { .. },
            ) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Exit status of a command that produced its output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotConverged,
    CertificateFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::NotConverged) => {
            eprintln!("warning: solver did not converge");
            ExitCode::from(2)
        }
        Ok(Status::CertificateFailed) => {
            eprintln!("error: certificate check failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
