//! `pftau`: build polynomial tau-functions and check them.
//!
//! Exit codes: 0 success / identity holds, 1 identity fails, 2 bad input.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pftau", version, about = "Exact polynomial KP/BKP tau-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a tau-function as a canonical polynomial.
    Tau {
        #[arg(value_enum)]
        kind: TauKind,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Check an identity exactly.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[command(flatten)]
        input: Input,
        /// Second polynomial for `verify kp` (defaults to the first).
        #[arg(long)]
        poly2: Option<String>,
        /// Charge difference for the modified KP identity.
        #[arg(long, default_value_t = 0)]
        d: u32,
        /// First block size for `verify caianiello`.
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncation order for `verify character`.
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute from fermionic vacuum expectation values.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[command(flatten)]
        input: Input,
        /// Space-separated modes, e.g. `phi:2 phihat:0 psi+:1/2`.
        #[arg(long)]
        word: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug, Default)]
struct Input {
    /// Parts, e.g. `3,2,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// One rational list per part, e.g. `[[1,0,1/2],[0,1]]`.
    #[arg(long)]
    constants: Option<String>,
    /// JSON spec file `{"lambda": [...], "constants": [[...], ...]}`.
    #[arg(long)]
    spec: Option<std::path::PathBuf>,
    /// Staircase size for KdV, second block size for Caianiello.
    #[arg(long)]
    k: Option<u32>,
    /// Polynomial, e.g. `t1^2 - 2*t3`.
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Args, Debug, Default)]
struct Output {
    /// Emit JSON.
    #[arg(long)]
    json: bool,
    /// Write the result to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TauKind {
    Bkp,
    KpSquare,
    Kdv,
    KdvHalf,
    Schur,
    Qschur,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VerifyKind {
    Kp,
    Bkp,
    Square,
    Caianiello,
    Character,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OracleKind {
    CrossCheck,
    Vev,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Tau { kind, input, output } => (commands::tau(*kind, input), output),
        Command::Verify { kind, input, poly2, d, m, trials, seed, order, output } => {
            let opts = commands::VerifyOpts {
                poly2: poly2.as_deref(),
                d: *d,
                m: *m,
                trials: *trials,
                seed: *seed,
                order: *order,
            };
            (commands::verify(*kind, input, &opts), output)
        }
        Command::Oracle { kind, input, word, output } => (commands::oracle(*kind, input, word.as_deref()), output),
    };
    match result {
        Ok(report) => {
            let text = if output.json { report.json.to_string() } else { report.text };
            if let Err(e) = commands::emit(&text, output.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
