use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use singlink_cli::commands::{execute, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SINGLINK_LOG")).format_timestamp(None).init();
    let cli = Cli::parse();
    let (outcome, err) = execute(&cli.command);
    if !outcome.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.stdout.as_bytes());
        if !outcome.stdout.ends_with('\n') {
            let _ = out.write_all(b"\n");
        }
    }
    if let Some(e) = err {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.code as u8)
}
