mod args;
mod commands;
mod svg;

use std::process::ExitCode;

use clap::Parser;
use hypermds::Error;

use args::{Cli, Command};
use commands::Status;

const THREADS_VAR: &str = "HYPERMDS_THREADS";

fn configure_threads() -> anyhow::Result<()> {
    let Some(raw) = std::env::var_os(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .to_str()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Error::InvalidParameter(format!("{THREADS_VAR} must be a positive integer"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

/// 1 for failures of the descent itself, 2 for bad input or parameters.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::StepDomain { .. }
            | Error::CoincidentPair(..)
            | Error::StationaryLineSearch { .. }
            | Error::ZeroDirection(_)
            | Error::DegenerateTransform(_),
        ) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    configure_threads()?;
    match &cli.command {
        Command::Embed(a) => commands::embed(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Synth(a) => commands::synth(a),
        Command::Graph(a) => commands::graph(a),
        Command::Features(a) => commands::features(a),
        Command::Compare(a) => commands::compare(a),
        Command::Plot(a) => commands::plot(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Numerical) => {
            eprintln!("error: line search stalled before convergence; outputs were written");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
