use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use horocone::cli::{run, Command, JobSpec, OutputFormat};

/// Cone metrics and horofunction boundaries.
#[derive(Parser)]
#[command(version)]
struct Args {
    command: Command,
    /// Read the JSON payload from a file.
    #[arg(long, conflicts_with = "inline")]
    input: Option<PathBuf>,
    /// Take the JSON payload from the command line.
    #[arg(long)]
    inline: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Tolerance for descriptor validation.
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            // usage errors count as malformed input
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let payload = match (&args.input, args.inline) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        (None, Some(text)) => Ok(text),
        (None, None) => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| e.to_string())
        }
    };
    let payload = match payload {
        Ok(p) => p,
        Err(e) => {
            eprintln!("horocone: {e}");
            return ExitCode::from(1);
        }
    };
    let spec = JobSpec { command: args.command, payload, format: args.format, tol: args.tol, seed: args.seed };
    let result = run(&spec);
    let written = match &args.out {
        Some(path) => std::fs::write(path, &result.output),
        None => std::io::stdout().write_all(result.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("horocone: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(result.exit_code as u8)
}
