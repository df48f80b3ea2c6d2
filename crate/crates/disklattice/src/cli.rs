//! Argument parsing and dispatch, separated from `main` for testing.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands;
use crate::config::{Cli, RunConfig, SEED_ENV};
use crate::{AppError, ExitStatus};

/// Parses `args`, runs the command and reports errors on `stderr`.
pub fn run<I, T>(
    args: I,
    env_seed: Option<String>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if help {
                let _ = write!(stdout, "{text}");
                return ExitStatus::Success;
            }
            let _ = write!(stderr, "{text}");
            return ExitStatus::InvalidInput;
        }
    };
    match execute(&cli, env_seed.as_deref(), stdout) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(stderr, "disklattice: {e}");
            e.status()
        }
    }
}

fn execute(
    cli: &Cli,
    env_seed: Option<&str>,
    stdout: &mut dyn Write,
) -> Result<ExitStatus, AppError> {
    let cfg = RunConfig::resolve(cli, env_seed)?;
    match &cfg.out_path {
        Some(path) => {
            let io_err = |source| AppError::Io {
                path: path.display().to_string(),
                source,
            };
            let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
            let status = commands::run(&cfg, &mut w)?;
            w.flush().map_err(io_err)?;
            Ok(status)
        }
        None => {
            let status = commands::run(&cfg, stdout)?;
            stdout.flush().map_err(|source| AppError::Io {
                path: "<stdout>".into(),
                source,
            })?;
            Ok(status)
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> std::process::ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let status = run(
        std::env::args_os(),
        std::env::var(SEED_ENV).ok(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    std::process::ExitCode::from(status.code())
}
