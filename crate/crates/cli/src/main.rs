//! `mutdim` command-line front end.
//!
//! Exit codes: 0 success, 1 experiment failed its checks, 2 usage or input error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod args;
mod calc;
mod commands;

#[derive(Parser)]
#[command(name = "mutdim", version, about = "Coupled randomness, mutual dimension and information-density estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact information quantities.
    #[command(subcommand)]
    Calc(calc::Calc),
    /// Sample a word or coupled pair, or build a frequency sequence.
    Generate(commands::GenerateArgs),
    /// Information-density trace of a word or pair.
    Estimate(commands::EstimateArgs),
    /// Solve for the equivalent measure of a binary problem.
    SolveEquivalence(commands::SolveArgs),
    /// Mutual dimension with respect to a pair of product measures.
    Billingsley(commands::BillingsleyArgs),
    /// Hellinger-sum classification of a rho schedule.
    #[command(subcommand)]
    Kakutani(commands::Kakutani),
    /// Run a named experiment.
    Experiment(commands::ExperimentArgs),
}

/// Outcome of a successful command.
pub enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Calc(c) => calc::run(c),
        Command::Generate(a) => commands::generate(a),
        Command::Estimate(a) => commands::estimate(a),
        Command::SolveEquivalence(a) => commands::solve(a),
        Command::Billingsley(a) => commands::billingsley(a),
        Command::Kakutani(k) => commands::kakutani(k),
        Command::Experiment(a) => commands::experiment(a),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
