use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gkz_dwork_cli::{parse_job, run, validate, CliError, Command};

/// Dwork-theoretic computations for GKZ exponential sums.
#[derive(Debug, Parser)]
#[command(name = "gkz-dwork", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Job file (JSON).
    #[arg(long)]
    job: PathBuf,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel stages.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, short)]
    verbose: bool,
}

fn execute(args: &Args) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(&args.job)?;
    let job = validate(parse_job(&text)?)?;
    let report = run(args.command, &job)?;
    let mut body = serde_json::to_string_pretty(&report.json).expect("reports are plain JSON");
    body.push('\n');
    match &args.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let level = if args.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(w) = args.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            log::warn!("cannot size the worker pool: {e}");
        }
    }
    match execute(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("an identity check failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
