mod bench;
mod checksum;
mod commands;
mod report;

use clap::Parser;

use commands::{Cli, ExitKind};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; anything else is a
            // usage error.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(match commands::classify(&e) {
                ExitKind::Usage => 1,
                ExitKind::Validation => 2,
                ExitKind::Probabilistic => 3,
            });
        }
    }
}
