//! Command-line front end: parses arguments, runs one experiment and writes
//! its [`record::ResultRecord`].
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 numerical
//! non-convergence, 3 a checked residual above its tolerance.

pub mod args;
mod commands;
pub mod parse;
pub mod record;

use std::io::Write;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Format};
use record::ResultRecord;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "SHARP_HY_THREADS";

/// Failures of a run, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] sharphy::error::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use sharphy::error::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numeric(E::OutOfRange { .. } | E::Invalid(_)) => 1,
            CliError::Numeric(E::NonConvergence { .. } | E::SupportOverflow(_)) => 2,
            CliError::Numeric(E::Resolution { .. }) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        use sharphy::error::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Numeric(E::OutOfRange { .. }) => "out-of-range",
            CliError::Numeric(E::Invalid(_)) => "invalid",
            CliError::Numeric(E::NonConvergence { .. }) => "non-convergence",
            CliError::Numeric(E::SupportOverflow(_)) => "support-overflow",
            CliError::Numeric(E::Resolution { .. }) => "resolution",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Runs the program on `argv` (including the program name) with the process
/// streams.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], writing to the given streams.
pub fn run_with(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let first = e.to_string();
                    let line = first.lines().next().unwrap_or("").trim_start_matches("error: ");
                    let _ = writeln!(stderr, "error[usage]: {line}");
                    1
                }
            };
        }
    };
    match execute(argv, &cli, stdout) {
        Ok(record) => {
            if record.all_pass() {
                0
            } else {
                for c in record.checks.iter().filter(|c| !c.pass) {
                    let _ = writeln!(
                        stderr,
                        "error[check]: {} residual {:e} exceeds tolerance {:e}",
                        c.name, c.residual, c.tolerance
                    );
                }
                3
            }
        }
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "error[{}]: {message}", e.kind());
            e.exit_code()
        }
    }
}

fn thread_count(cli: &Cli) -> CliResult<Option<usize>> {
    let raw = match cli.global.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(s) if !s.trim().is_empty() => Some(
                s.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {s:?}")))?,
            ),
            _ => None,
        },
    };
    match raw {
        Some(0) => Err(CliError::Usage("thread count must be at least 1".into())),
        other => Ok(other),
    }
}

fn execute(argv: &[String], cli: &Cli, stdout: &mut dyn Write) -> CliResult<ResultRecord> {
    let threads = thread_count(cli)?;
    let config = serde_json::to_value(cli).expect("arguments are serializable");
    let mut record = ResultRecord::new(argv.iter().skip(1).cloned().collect(), config);
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    pool.install(|| commands::dispatch(cli, &mut record))?;
    record.wall_time = start.elapsed().as_secs_f64();

    if let Some(path) = &cli.global.emit_plot {
        let mut file = std::fs::File::create(path)?;
        record.write_curves(&mut file)?;
    }
    let mut buf = Vec::new();
    match cli.global.format {
        Format::Json => buf.extend_from_slice(record.to_json().as_bytes()),
        Format::Csv => record.write_csv(&mut buf)?,
    }
    match &cli.global.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => stdout.write_all(&buf)?,
    }
    Ok(record)
}
