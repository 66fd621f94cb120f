use std::process::ExitCode;

use clap::Parser;
use hall_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.render(cli.format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("hall: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
