//! `hetdss`: capacity, MSR/MBR points and tradeoff curves for heterogeneous
//! distributed storage systems.
//!
//! Exit status is 0 on success, 1 when the analysis itself comes out negative
//! (invalid spec, oracle mismatch, no feasible point) and 2 on usage or input errors.

mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Negative,
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let ctx = commands::Context::new(&cli.global)?;
    let command = cli.command;
    let work = move || match command {
        Command::Validate(a) => commands::validate(&a),
        Command::Capacity(a) => commands::capacity(&ctx, &a),
        Command::Points(a) => commands::points(&ctx, &a),
        Command::Tradeoff(a) => commands::tradeoff(&ctx, &a),
        Command::Graph(a) => commands::graph(&a),
    };
    match cli.global.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?
            .install(work),
        None => work(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
