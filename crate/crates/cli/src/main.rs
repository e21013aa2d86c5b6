//! `splinewave`: build and check spline-type orthogonal scaling functions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 numeric failure,
//! 64 usage error, 74 I/O error.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use splinewave::Branch;

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_NUMERIC: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "splinewave",
    version,
    about = "Spline-type orthogonal scaling functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OrderArg {
    /// Spline order n (1..=64)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    n: u32,
}

#[derive(Args, Debug, Clone)]
struct BranchArg {
    /// Root selection: paper, outer, inner or index:<k>
    #[arg(long, default_value = "paper", value_parser = parse_branch)]
    branch: Branch,
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    s.parse().map_err(|e: splinewave::Error| e.to_string())
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Q_n as exact rationals and decimals
    Qpoly {
        #[command(flatten)]
        order: OrderArg,
        /// Cross-check against the extended Euclidean construction
        #[arg(long)]
        oracle: bool,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Spectral factor S_n: coefficients a_1..a_n
    Factor {
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        branch: BranchArg,
        /// List every real solution (both signs of sum a)
        #[arg(long)]
        all: bool,
    },
    /// Refinement coefficients p_1..p_2n
    Coeffs {
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        branch: BranchArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sample phi_n on a dyadic grid by cascade iteration (CSV `x,phi`)
    Cascade {
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        branch: BranchArg,
        /// Grid level J (step 2^-J)
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=16))]
        levels: u32,
        /// Number of cascade iterations
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..=200))]
        iters: u32,
        /// Output file (standard output when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every identity check and print a JSON report
    Verify {
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        branch: BranchArg,
        /// Add DELTA to p_K before checking: `K:DELTA`
        #[arg(long, value_parser = parse_perturb)]
        perturb: Option<(i64, f64)>,
    },
    /// Periodic DWT round trip on a seeded random signal
    Roundtrip {
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        branch: BranchArg,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_perturb(s: &str) -> Result<(i64, f64), String> {
    let (k, d) = s
        .split_once(':')
        .ok_or_else(|| format!("expected K:DELTA, got {s:?}"))?;
    let k = k.parse().map_err(|e| format!("bad index {k:?}: {e}"))?;
    let d = d.parse().map_err(|e| format!("bad delta {d:?}: {e}"))?;
    Ok((k, d))
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<splinewave::Error> for Failure {
    fn from(e: splinewave::Error) -> Self {
        use splinewave::Error::*;
        let code = match e {
            ConvergenceFailure { .. } | PairingFailure { .. } => EXIT_NUMERIC,
            NotOrthonormal { .. } => EXIT_VERIFY,
            InvalidOrder { .. }
            | InvalidParameter(_)
            | BranchInvalid(_)
            | LengthError { .. }
            | ShapeError(_) => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Qpoly {
            order,
            oracle,
            json,
        } => commands::qpoly(&mut out, order.n as usize, oracle, json),
        Command::Factor { order, branch, all } => {
            commands::factor(&mut out, order.n as usize, &branch.branch, all)
        }
        Command::Coeffs {
            order,
            branch,
            format,
        } => commands::coeffs(
            &mut out,
            order.n as usize,
            &branch.branch,
            format == Format::Csv,
        ),
        Command::Cascade {
            order,
            branch,
            levels,
            iters,
            out: path,
        } => commands::cascade(
            &mut out,
            order.n as usize,
            &branch.branch,
            levels,
            iters as usize,
            path.as_deref(),
        ),
        Command::Verify {
            order,
            branch,
            perturb,
        } => commands::verify(&mut out, order.n as usize, &branch.branch, perturb),
        Command::Roundtrip {
            order,
            branch,
            length,
            levels,
            seed,
        } => commands::roundtrip(
            &mut out,
            order.n as usize,
            &branch.branch,
            length,
            levels,
            seed,
        ),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("splinewave: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
