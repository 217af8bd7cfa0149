use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use strongsep_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            eprint!("{}", o.stderr);
            std::io::stdout().flush().ok();
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("strongsep: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
