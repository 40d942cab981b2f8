use std::io::Write;
use std::process::ExitCode;

use gtrace::cli::{execute, parse_command, ParseError};

fn main() -> ExitCode {
    let cmd = match parse_command(std::env::args_os().skip(1)) {
        Ok(cmd) => cmd,
        Err(ParseError::Info(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(ParseError::Usage(text)) => {
            eprint!("{text}");
            if !text.ends_with('\n') {
                eprintln!();
            }
            return ExitCode::from(1);
        }
    };
    let outcome = execute(&cmd);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
