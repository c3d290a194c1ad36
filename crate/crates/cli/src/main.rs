use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skewdet::selftest::Fault;
use skewdet_cli::{run_command, Command, CommandRequest, Input, EXIT_USER};

/// Degree of the Dieudonné determinant over skew polynomial rings.
#[derive(Parser)]
#[command(name = "skewdet", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// deg det of a matrix and its free rank s.
    Degdet(Flags),
    /// Row-echelon form with pivots and a replayable operation log.
    Echelon(Flags),
    /// Two-sided inverse of a matrix with deg det 0.
    Invert(Flags),
    /// Rank p^(deg det) of the kernel of an endomorphism of G_a^n.
    KernelRank(Flags),
    /// Rank r of a t-module, checked on sample polynomials.
    TmoduleRank(Flags),
    /// Solution-space dimension of a differential or q-difference system.
    OdeDim(Flags),
    /// Seeded property suites across all ring instances.
    Selftest(Flags),
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    BrokenTwist,
}

#[derive(clap::Args)]
struct Flags {
    /// Read the input JSON from a file.
    #[arg(long, value_name = "PATH", conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline input JSON.
    #[arg(long, value_name = "INLINE")]
    json: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Cross-check deg det against the independent oracles.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "N")]
    max_n: Option<usize>,
    #[arg(long, value_name = "D")]
    max_deg: Option<usize>,
    /// Plant a defect before running the self-test.
    #[arg(long, value_enum, value_name = "FAULT")]
    inject_fault: Option<FaultArg>,
    /// Leave the timing section out of the report.
    #[arg(long)]
    no_timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match cli.command {
        Cmd::Degdet(f) => (Command::Degdet, f),
        Cmd::Echelon(f) => (Command::Echelon, f),
        Cmd::Invert(f) => (Command::Invert, f),
        Cmd::KernelRank(f) => (Command::KernelRank, f),
        Cmd::TmoduleRank(f) => (Command::TmoduleRank, f),
        Cmd::OdeDim(f) => (Command::OdeDim, f),
        Cmd::Selftest(f) => (Command::Selftest, f),
    };
    let request = CommandRequest {
        command,
        input: match (flags.input, flags.json) {
            (Some(p), _) => Some(Input::Path(p)),
            (None, Some(s)) => Some(Input::Inline(s)),
            (None, None) => None,
        },
        oracle: flags.oracle,
        seed: flags.seed,
        max_n: flags.max_n,
        max_deg: flags.max_deg,
        fault: flags.inject_fault.map(|FaultArg::BrokenTwist| Fault::BrokenTwist),
        timing: !flags.no_timing,
    };
    let report = run_command(&request);
    let text = report.to_json();
    match flags.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("skewdet: cannot write {}: {}", path.display(), e);
                return ExitCode::from(EXIT_USER as u8);
            }
        }
        None => print!("{}", text),
    }
    ExitCode::from(report.exit_code as u8)
}
