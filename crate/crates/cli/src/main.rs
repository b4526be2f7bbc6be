use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spectool_cli::{run, Command, RunConfig};

/// Spectral toolkit for complex Jacobi operators.
#[derive(Parser)]
#[command(name = "spectool", version, arg_required_else_help = true)]
struct Cli {
    /// Command to run.
    #[arg(value_enum)]
    command: Command,

    /// JSON object of parameters.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Parameter override `key=value`; the value is parsed as JSON when possible.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Worker threads.
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::load(
        cli.command,
        cli.config.as_deref(),
        &cli.set,
        cli.out,
        cli.workers,
    )
    .and_then(|config| run(&config));
    match outcome {
        Ok(outcome) => {
            for a in &outcome.assertions {
                let tag = if a.passed { "pass" } else { "FAIL" };
                eprintln!("{tag} {}: {}", a.id, a.detail);
            }
            let failing = outcome.failing();
            if !failing.is_empty() {
                eprintln!("failing: {}", failing.join(", "));
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
