//! Command-line front end: argument parsing, command dispatch and CSV/JSON
//! rendering.

mod args;
mod commands;
mod decimal;
mod output;

pub use args::{Cli, Command, ConstructKind, Format};
pub use decimal::{parse_decimal, parse_rect};
pub use output::{OutputRecord, Table, FORMAT_VERSION};

use quadgen_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 1 for overflow and internal failures, 2 for invalid input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::Overflow(_)) | CliError::Internal(_) => 1,
            CliError::Core(_) | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Runs the parsed command on a pool of `--jobs` workers and renders it.
pub fn run(cli: &Cli) -> CliResult<String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    let record = pool.install(|| commands::execute(&cli.command))?;
    match cli.format {
        Format::Csv => record.to_csv(),
        Format::Json => record.to_json(),
    }
}
