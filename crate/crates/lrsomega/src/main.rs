use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lrsomega::commands::{
    cmd_check, cmd_counterexample, cmd_decompose, cmd_emit_formula, cmd_gaps, cmd_signdesc,
    cmd_zone, parse_formula_target, CheckFlags,
};
use lrsomega_core::oracle::OracleMode;

/// Decides prefix-independent omega-regular properties of sign descriptions
/// of simple linear recurrence sequences.
#[derive(Parser)]
#[command(name = "lrsomega", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Horizon,
    Certified,
}

impl From<ModeArg> for OracleMode {
    fn from(m: ModeArg) -> OracleMode {
        match m {
            ModeArg::Horizon => OracleMode::Horizon,
            ModeArg::Certified => OracleMode::Certified,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the first letters of the sign description.
    Signdesc {
        lrs_file: PathBuf,
        #[arg(long, default_value_t = 32)]
        length: usize,
    },
    /// Report the root analysis: minimal order, degeneracy period, zero
    /// offsets, dominant roots per subsequence.
    Decompose { lrs_file: PathBuf },
    /// Model-check a prefix-independent Muller automaton against the sign
    /// description(s). Exit code: 0 accept, 1 reject, 2 unknown, 3 error.
    Check {
        /// Sequence files; several files form the product of their sign
        /// descriptions over the tuple alphabet.
        lrs_files: Vec<PathBuf>,
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, value_enum, default_value = "horizon")]
        mode: ModeArg,
        #[arg(long, default_value_t = 200_000)]
        horizon: u64,
        /// Trust threshold standing in for the ineffective constant.
        #[arg(long)]
        threshold: Option<u64>,
        /// Solver binary for certified mode (or set LRSOMEGA_SOLVER).
        #[arg(long)]
        solver: Option<String>,
        #[arg(long, default_value_t = 60)]
        solver_timeout: u64,
    },
    /// Model-check polynomial predicates of the sequences (zone
    /// description) against a Muller automaton over tuple letters.
    Zone {
        lrs_files: Vec<PathBuf>,
        /// Polynomial predicates over x1..xm, e.g. "x - 3"; repeatable.
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, value_enum, default_value = "horizon")]
        mode: ModeArg,
        #[arg(long, default_value_t = 200_000)]
        horizon: u64,
        #[arg(long)]
        threshold: Option<u64>,
        #[arg(long)]
        solver: Option<String>,
        #[arg(long, default_value_t = 60)]
        solver_timeout: u64,
    },
    /// Demonstrate the order-six sequence whose '+' gaps grow without
    /// bound.
    Counterexample {
        /// Unit-circle point as two rationals `a/b c/d` (default 3/5 4/5).
        #[arg(long, num_args = 2, value_names = ["RE", "IM"])]
        lambda: Option<Vec<String>>,
        #[arg(long, default_value_t = 100_000)]
        horizon: u64,
    },
    /// Emit the semi-algebraic occurrence formula as SMT-LIB 2 text.
    EmitFormula {
        lrs_file: PathBuf,
        #[arg(long)]
        pattern: String,
        /// `u` for the occurrence-set formula, `phi:B` for the coverage
        /// sentence at bound B.
        #[arg(long, default_value = "u")]
        what: String,
        /// Which block completion to emit when several exist.
        #[arg(long, default_value_t = 0)]
        completion: usize,
        /// Exponent bound for the multiplicative-relation search.
        #[arg(long, default_value_t = 64)]
        exponent_bound: u64,
    },
    /// Occurrence and gap statistics of a pattern over a sign prefix.
    Gaps {
        lrs_file: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 10_000)]
        length: usize,
        /// Emit the occurrence table as CSV.
        #[arg(long)]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let result = match cli.command {
        Command::Signdesc { lrs_file, length } => cmd_signdesc(&lrs_file, length, json),
        Command::Decompose { lrs_file } => cmd_decompose(&lrs_file, json),
        Command::Check {
            lrs_files,
            automaton,
            mode,
            horizon,
            threshold,
            solver,
            solver_timeout,
        } => {
            let flags = CheckFlags {
                mode: mode.into(),
                horizon,
                threshold,
                solver,
                solver_timeout,
            };
            cmd_check(&lrs_files, &automaton, &flags, json)
        }
        Command::Zone {
            lrs_files,
            polys,
            automaton,
            mode,
            horizon,
            threshold,
            solver,
            solver_timeout,
        } => {
            let flags = CheckFlags {
                mode: mode.into(),
                horizon,
                threshold,
                solver,
                solver_timeout,
            };
            cmd_zone(&lrs_files, &polys, &automaton, &flags, json)
        }
        Command::Counterexample { lambda, horizon } => {
            let lambda = lambda.map(|v| (v[0].clone(), v[1].clone()));
            cmd_counterexample(lambda, horizon, json)
        }
        Command::EmitFormula { lrs_file, pattern, what, completion, exponent_bound } => {
            match parse_formula_target(&what)
                .and_then(|t| cmd_emit_formula(&lrs_file, &pattern, t, completion, exponent_bound))
            {
                Ok(text) => {
                    print!("{text}");
                    return ExitCode::from(0);
                }
                Err(e) => Err(e),
            }
        }
        Command::Gaps { lrs_file, pattern, length, csv } => {
            cmd_gaps(&lrs_file, &pattern, length, csv, json)
        }
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(json));
            ExitCode::from(report.exit_code.clamp(0, 255) as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
