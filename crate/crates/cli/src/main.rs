//! `circle-hall`: batch access to the Hall-algebra workbench with JSON output.
//!
//! Exit codes: 0 success, 1 parse error, 2 precondition violation, 3 enumeration
//! bound exceeded, 4 the acceptance suite ran and some criterion failed.

mod cache;
mod commands;
mod input;

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Field size, denominator, genus, series order, enumeration bound and output
/// path shared by all subcommands.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Field size q, a prime power.
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u64,
    /// Denominator n of the level.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    /// Genus of the curve.
    #[arg(long, global = true, default_value_t = 0)]
    pub g: u32,
    /// Truncation order of power series.
    #[arg(long, global = true, default_value_t = 3)]
    pub order: u32,
    /// Largest total dimension enumerated by brute force (default 6 at q = 2, 5 otherwise).
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed fixing the sample set of sampled commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Parser, Debug)]
#[command(name = "circle-hall", version, about = "Exact Hall-algebra computations for the rational circle")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Twisted Hall product of two elements.
    HallProduct {
        /// Element as JSON, or a '+'-separated list of arcs such as "0,1/3+1/3,2/3", or "1".
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Twisted coproduct of an element, optionally one bidegree component.
    Coproduct {
        #[arg(long)]
        element: String,
        /// Left degree as a comma-separated lattice vector.
        #[arg(long, requires = "beta")]
        alpha: Option<String>,
        /// Right degree as a comma-separated lattice vector.
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
    },
    /// Green pairing of two elements, or of two tensor elements.
    Pairing {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Checks the instances of a relation family by brute-force Hall numbers.
    Verify {
        /// dj, k-join, join, disjoint-nest, nest, serre or ef-commutator.
        #[arg(long)]
        family: String,
        /// First interval "a,b"; with --j2 restricts to this pair.
        #[arg(long, requires = "j2")]
        j1: Option<String>,
        #[arg(long, requires = "j1")]
        j2: Option<String>,
        /// Check this many instances drawn with --seed instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Normal form of an interval word in the double at denominator n.
    Straighten {
        /// Word such as "F[0,1/2) E[0,1/2)", or a normal-form element as JSON.
        #[arg(long)]
        word: String,
    },
    /// Hubery element c_r or z_r at denominator n.
    Hubery {
        /// c or z.
        #[arg(long, default_value = "z")]
        kind: String,
        #[arg(long)]
        r: u64,
    },
    /// Checks that an element commutes with every 1_M below a dimension vector.
    Central {
        #[arg(long)]
        element: String,
        /// Dimension bound as a comma-separated lattice vector.
        #[arg(long)]
        dims: String,
    },
    /// Shuffle product of two elements with the kernel of a curve.
    Shuffle {
        /// Element as JSON, or a rank-one term "x^d v:l".
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Weil numerator "1,-a,q" from the constant coefficient up.
        #[arg(long)]
        numerator: Option<String>,
        /// Elliptic curve trace a, giving the numerator 1 - a z + q z^2.
        #[arg(long, conflicts_with = "numerator")]
        trace: Option<i64>,
    },
    /// Power series attached to the zeta function of a curve.
    Zeta {
        #[arg(long)]
        numerator: Option<String>,
        #[arg(long, conflicts_with = "numerator")]
        trace: Option<i64>,
        /// zeta, xi, xi-circ or kernel-h.
        #[arg(long, default_value = "xi")]
        series: String,
    },
    /// Compares the mirror Hall algebra with the quiver model at denominator n.
    MirrorCompare,
    /// Hom and Ext^1 dimensions between sums of open-closed intervals.
    MirrorHomext {
        /// Intervals "a,b" or "(a,b]", '+'-separated.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Graded Hom table of the D-shaped configuration.
    Dtype {
        /// T, Y, V, T', Y' or V'.
        #[arg(long = "case")]
        case_name: String,
        #[arg(long = "a")]
        a: Option<String>,
        #[arg(long = "b")]
        b: Option<String>,
    },
    /// Applies an interval word to a vector of the fundamental representation.
    Fundrep {
        /// circle, twisted-circle, heisenberg, affine or twisted-affine.
        #[arg(long, default_value = "twisted-circle")]
        variant: String,
        #[arg(long)]
        word: String,
        /// Index y of the basis vector u_y.
        #[arg(long, conflicts_with = "vector")]
        y: Option<String>,
        /// Vector as JSON.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Generator images of an embedding between levels.
    Embed {
        /// subdivision, plus-infinity, two-sided, add-one-vertex or add-two-vertices.
        #[arg(long)]
        kind: String,
        /// Subdivision factor.
        #[arg(long, default_value_t = 2)]
        factor: u64,
    },
    /// Degree, slope, Euler characteristic and virtual genus of a K-class.
    Invariants {
        /// "rank=r,dim=d" with d an integer or cell values "d_1:...:d_m", or JSON.
        #[arg(long)]
        class: String,
    },
    /// Runs the acceptance suite.
    Suite {
        /// Print the pass/fail table instead of JSON.
        #[arg(long)]
        table: bool,
    },
}

/// An error in the command-line input itself.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Marker for an acceptance run with a failing criterion.
#[derive(Debug)]
pub struct SuiteFailed(pub String);

impl std::fmt::Display for SuiteFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SuiteFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<circle_hall::Error>() {
            return match e {
                circle_hall::Error::Parse(_) => 1,
                circle_hall::Error::BoundExceeded { .. } => 3,
                _ => 2,
            };
        }
        if cause.is::<serde_json::Error>() || cause.is::<InputError>() {
            return 1;
        }
        if cause.is::<SuiteFailed>() {
            return 4;
        }
    }
    2
}

fn emit(text: &str, output: &Option<PathBuf>) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli, args: &[String]) -> anyhow::Result<()> {
    if let Some(text) = cache::lookup(&cli.command, args)? {
        return emit(&text, &cli.config.output);
    }
    let outcome = commands::dispatch(&cli.command, &cli.config)?;
    emit(&outcome.text, &cli.config.output)?;
    match outcome.failure {
        Some(failure) => Err(failure.into()),
        None => cache::store(&cli.command, args, &outcome.text),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, &args[1..]) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
