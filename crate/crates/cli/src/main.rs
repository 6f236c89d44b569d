//! `admm-split`: generate problems, run the splitting solvers, and compare
//! their communication cost.

mod comm;
mod error;
mod output;
mod settings;
mod solve;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliResult;
use crate::source::{write_problem, GenArgs};

/// Version stamp carried by every JSON document the tool writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "admm-split",
    version,
    about = "Distributed ADMM for sparse complex recovery"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a synthetic problem and write it as CMAT files plus a manifest.
    Gen(GenCmd),
    /// Run one solver and write its solution, trace, ledger and metrics.
    Solve(solve::SolveArgs),
    /// Per-node communication counts and efficiency verdicts.
    Comm(comm::CommArgs),
    /// Run several methods on one problem and report them side by side.
    Compare(solve::CompareArgs),
}

#[derive(Args, Debug)]
struct GenCmd {
    #[command(flatten)]
    gen: GenArgs,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Gen(cmd) => {
            let p = cmd.gen.generate()?;
            let m = write_problem(&cmd.out, &p, &cmd.gen)?;
            Ok(format!(
                "wrote {}x{} {} problem (k = {}, seed = {}) to {}\n",
                m.nm,
                m.np,
                m.kind,
                m.k,
                m.seed,
                cmd.out.display()
            ))
        }
        Command::Solve(args) => solve::run_solve(&args),
        Command::Comm(args) => comm::run(&args),
        Command::Compare(args) => solve::run_compare(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
