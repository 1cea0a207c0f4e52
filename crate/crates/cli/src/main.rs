//! `entangle`: entanglement invariants of pure states from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure.

mod commands;
mod error;
mod format;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use entangle_core::Complex64;

#[derive(Parser, Debug)]
#[command(name = "entangle", version, about = "Entanglement invariants of pure multipartite states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named state as a JSON state file.
    Gen {
        #[command(subcommand)]
        state: GenState,
        /// Output path; standard output if omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Schmidt decomposition across a cut.
    Schmidt {
        file: PathBuf,
        /// Parties on the left of the cut, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        cut: Vec<usize>,
        /// Relative rank tolerance.
        #[arg(long, default_value_t = entangle_core::bipartite::DEFAULT_RANK_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Two-qubit determinant c00 c11 - c01 c10, its square and 2·det.
    Det {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cayley hyperdeterminant of a three-qubit state.
    Hyperdet3q {
        file: PathBuf,
        /// Threshold on |Det| separating the GHZ class.
        #[arg(long, default_value_t = entangle_core::hyperdet::DEFAULT_CLASS_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Three-qutrit invariants from normal-form weights or the (α, β) family.
    ///
    /// Complex values are written `re` or `re,im`.
    QutritInv {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a1: Option<Complex64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a2: Option<Complex64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a3: Option<Complex64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, conflicts_with_all = ["a1", "a2", "a3"])]
        alpha: Option<Complex64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, conflicts_with_all = ["a1", "a2", "a3"])]
        beta: Option<Complex64>,
        #[arg(long)]
        json: bool,
    },
    /// Majorana stars of a permutation-symmetric qubit state.
    Majorana {
        file: PathBuf,
        /// Write stars as CSV (theta,phi,multiplicity); `-` for standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write an SVG sphere plot.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Chordal distance below which roots merge unconditionally.
        #[arg(long, default_value_t = entangle_core::majorana::DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Monte-Carlo check of an invariant under random local unitaries; prints JSON.
    CheckInvariance {
        file: PathBuf,
        #[arg(long, value_enum)]
        invariant: InvariantArg,
        #[arg(long, value_enum, default_value = "su")]
        group: GroupArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cut for `schmidt-rank`.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        cut: Vec<usize>,
        /// Multi-index for `amplitude`.
        #[arg(long, value_delimiter = ',')]
        index: Option<Vec<usize>>,
        /// Accepted for symmetry with the other commands; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Verdicts under all four definitions of entanglement.
    Classify {
        file: PathBuf,
        /// Label for the report; defaults to the file stem.
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum GenState {
    /// One of the four Bell states.
    Bell {
        #[arg(value_enum, default_value = "phi-plus")]
        which: BellArg,
    },
    /// (|0...0> + |1...1>)/sqrt(2).
    Ghz {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// (|001> + |010> + |100>)/sqrt(3).
    W,
    /// Spin-n/2 coherent state pointing at (theta, phi).
    Coherent {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
    },
    /// Three-qutrit normal form with weights a1, a2, a3.
    QutritNf {
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_complex)]
        a1: Complex64,
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_complex)]
        a2: Complex64,
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_complex)]
        a3: Complex64,
    },
    /// The two-parameter qutrit family with weights alpha and beta.
    Phi {
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_complex)]
        alpha: Complex64,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_complex)]
        beta: Complex64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum BellArg {
    PhiPlus,
    PsiPlus,
    PhiMinus,
    PsiMinus,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum InvariantArg {
    Norm,
    Det,
    Hyperdet3q,
    SchmidtRank,
    Amplitude,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum GroupArg {
    /// SU(d) on every party.
    Su,
    /// U(d) on every party.
    U,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(s)?, 0.0),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
