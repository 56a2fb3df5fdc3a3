//! Command-line front end: every analysis as a subcommand writing CSV, JSON or DOT.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qmi-orbits", version, about = "Quantum mutual information along unitary orbits")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "ORBIT_THREADS")]
    threads: Option<usize>,

    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Spectrum given inline (`0.6,0.3,0.1,0` or unnormalised weights) or as a file path.
#[derive(Args, Debug, Clone)]
struct SpectrumArgs {
    #[arg(long)]
    spectrum: String,
    /// Subsystem dimensions `AxB`; inferred for 4, 6 and 9 entries.
    #[arg(long)]
    dims: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Marginal region polygon and membership grid.
    Region {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        /// Total average energy bounding the constant-energy region.
        #[arg(long, default_value_t = 1.0)]
        energy: f64,
        /// Grid points per axis on [0, 1/2].
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Also write the vertex lists of the region and its convex hull here.
        #[arg(long)]
        vertices: Option<PathBuf>,
    },
    /// Maximally and minimally correlated states on the orbit.
    Extremal {
        #[command(flatten)]
        spectrum: SpectrumArgs,
    },
    /// Marginal eigenvalues along one elementary unitary family.
    Sweep {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Classical starting state.
        #[arg(long, value_enum, default_value_t = StartArg::Tau1)]
        start: StartArg,
        /// Start instead from the X-state with populations λ1..λ4, this cos θ and cos φ = 1.
        #[arg(long, allow_hyphen_values = true)]
        cos_theta: Option<f64>,
        #[arg(long, default_value_t = qmi_orbits::orbit::DEFAULT_SWEEP_STEPS)]
        steps: usize,
    },
    /// Collision-model trajectory, or the qubit-qutrit swap counterexample.
    Collide {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        /// Constant interaction parameter, repeated `--steps` times.
        #[arg(long, conflicts_with = "schedule")]
        p: Option<f64>,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Explicit comma-separated schedule of interaction parameters.
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Dephase)]
        mode: ModeArg,
        /// Report the qubit-qutrit swap instead (JSON; needs a 2x3 spectrum).
        #[arg(long)]
        qutrit_swap: bool,
    },
    /// Heat-flow inequality over sampled thermal states and energy-conserving unitaries.
    Heatcheck {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every per-sample report.
        #[arg(long)]
        details: bool,
    },
    /// Young tableaux: enumeration, minimisation and minimiser histograms.
    Tableaux {
        #[command(subcommand)]
        action: TableauxCommand,
    },
    /// Single-swap majorization graph on the Young tableaux.
    Graph {
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long, value_enum, default_value_t = DirectionArg::Row)]
        direction: DirectionArg,
    },
    /// Demon scenario: correlated state behind a product description, and its cooling step.
    Demon {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[arg(long)]
        lambda_b: f64,
    },
}

#[derive(Subcommand, Debug)]
enum TableauxCommand {
    Enumerate {
        #[arg(long)]
        shape: String,
    },
    Minimize {
        #[command(flatten)]
        spectrum: SpectrumArgs,
    },
    Histogram {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Odd,
    Even,
    Tilde,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StartArg {
    Tau1,
    Tau2,
    Tau3,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Dephase,
    Decorrelate,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Dot,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DirectionArg {
    Row,
    Column,
}

/// I/O failures exit with 2, everything else (bad input, violated preconditions) with 1.
fn exit_code(e: &anyhow::Error) -> u8 {
    if e.chain().any(|c| c.is::<std::io::Error>()) {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
