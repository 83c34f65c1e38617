//! Command-line front end for the extremal-length toolkit.
//!
//! Exit codes: 0 ok, 1 validation failure, 2 solver non-convergence,
//! 3 undetermined verdict or enumeration cap, 4 I/O failure.

mod commands;
mod manifest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use delbox_core::{ContactMode, SolverMode, SolverOptions};

#[derive(Parser)]
#[command(
    name = "delbox",
    version,
    about = "Discrete extremal length, cube tilings, and their compatibility checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolverFlags {
    /// Constraint tolerance for the solver.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    /// Outer iteration budget.
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Path enumeration cap (brute force and condition searches).
    #[arg(long, default_value_t = 100_000)]
    max_paths: usize,
    /// Seed for randomized solver initialization (0 = deterministic start).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverFlags {
    fn options(&self, mode: SolverMode) -> SolverOptions {
        SolverOptions {
            eps: self.eps,
            max_iter: self.max_iter,
            max_paths: self.max_paths,
            seed: self.seed,
            mode,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the extremal metric and extremal length of discrete boxes.
    Solve {
        /// Discrete box files (JSON).
        inputs: Vec<String>,
        #[arg(long, default_value = "cutting-plane")]
        mode: SolverMode,
        #[command(flatten)]
        solver: SolverFlags,
        /// Output path (single input only); default: <input>.result.json.
        #[arg(long)]
        out: Option<String>,
        /// Parallelize across input files.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Generate a seeded random cube tiling.
    Generate {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Per-axis grid factors, comma separated (broadcast when short).
        #[arg(long, default_value = "2", value_delimiter = ',')]
        k: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Refinement factor range, "min:max" or a single value.
        #[arg(long, default_value = "2:3")]
        refine_q: String,
        /// Probability of gluing a cubical sub-box into one cube.
        #[arg(long, default_value_t = 0.5)]
        glue_p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; default: tiling-seed<seed>.json.
        #[arg(long)]
        out: Option<String>,
    },
    /// Extract the contact box and tiling metric from a tiling.
    Extract {
        input: String,
        #[arg(long, default_value = "full")]
        contact_mode: ContactMode,
        /// Default: <input>.box.json.
        #[arg(long)]
        out_box: Option<String>,
        /// Default: <input>.metric.json.
        #[arg(long)]
        out_metric: Option<String>,
    },
    /// Run condition checks on boxes or tilings.
    Check {
        /// Box or tiling files (detected by schema).
        inputs: Vec<String>,
        /// Triple intersection property, every cross axis.
        #[arg(long)]
        tip: bool,
        /// Derivative condition on every axis.
        #[arg(long)]
        schramm: bool,
        /// The three necessary conditions for arising from a tiling.
        #[arg(long)]
        necessary: bool,
        /// Extremality quantity chain (tiling inputs only).
        #[arg(long)]
        chain: bool,
        /// Metric file for tip/schramm on box inputs (default: solve first).
        #[arg(long)]
        metric: Option<String>,
        #[arg(long, default_value = "full")]
        contact_mode: ContactMode,
        /// Relative tolerance for extremal-length comparisons.
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[command(flatten)]
        solver: SolverFlags,
        /// Output path (single input only); default: <input>.report.json.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Realize a 2-dimensional extremal metric as a square tiling.
    Realize2d {
        box_file: String,
        metric_file: String,
        /// Validation tolerance (absolute lengths; exact when 0).
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Default: <box_file>.realized.json.
        #[arg(long)]
        out: Option<String>,
    },
    /// Render a 2D tiling, or an axis-aligned slice of a 3D one, as SVG.
    Render {
        input: String,
        /// Slice specification "axis=value" for 3D tilings, e.g. "1=3/2".
        #[arg(long)]
        slice: Option<String>,
        /// Default: <input>.svg.
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
