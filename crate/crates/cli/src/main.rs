mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Verdict;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.global;
    if let Some(jobs) = opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Pell { n } => commands::pell(opts, *n),
        Command::Cbc { n } => commands::cbc(opts, *n),
        Command::Seq {
            coeffs,
            initials,
            n,
            strategy,
            exponent,
        } => commands::seq(
            opts,
            coeffs,
            initials.as_deref(),
            *n,
            (*strategy).into(),
            (*exponent).into(),
        ),
        Command::Root {
            a,
            n,
            k_min,
            k_max,
            c,
        } => commands::root(opts, *a, *n, *k_min, *k_max, c),
        Command::Conjecture { a_max } => commands::conjecture(opts, *a_max),
        Command::Bench { suite, n, reps } => commands::bench(opts, *suite, *n, *reps),
    };
    match result {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Mismatch) => {
            eprintln!("verification mismatch");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
