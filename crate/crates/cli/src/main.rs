use std::process::ExitCode;

use clap::Parser;
use twinheart::config::Cli;
use twinheart::EXIT_USAGE;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match twinheart::run(&cli) {
        Ok(outcome) => {
            if cli.global.json {
                print!("{}", outcome.json());
            } else {
                for line in &outcome.summary {
                    println!("{line}");
                }
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
