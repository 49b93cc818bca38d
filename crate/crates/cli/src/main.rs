mod args;
mod commands;
mod fixtures;

use std::process::ExitCode;

use clap::Parser;
use diho::{Budget, Error};

use crate::args::Cli;
use crate::commands::{Ctx, Outcome};

const EXIT_BUDGET: u8 = 2;
const EXIT_INPUT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut budget = Budget::new(cli.max_states);
    if let Some(n) = cli.max_len {
        budget = budget.with_max_len(n);
    }
    let ctx = Ctx { budget, quiet: cli.quiet };
    match commands::run(&ctx, &cli.command) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e @ (Error::BudgetExceeded { .. } | Error::LengthExceeded { .. })) => {
            eprintln!("diho: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(e) => {
            eprintln!("diho: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
