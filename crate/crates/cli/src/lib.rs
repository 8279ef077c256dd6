//! Library side of the `qdeform` command: configuration, subcommands and
//! table output.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use config::RunConfig;
pub use error::{CliError, CliResult};
pub use table::{Cell, Table};

/// Reads `QDEFORM_THREADS`; 0 or unset means one thread per core.
pub fn thread_count(value: Option<&str>) -> CliResult<usize> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(s) => s
            .parse()
            .map_err(|_| CliError::config("QDEFORM_THREADS", format!("`{s}` is not a thread count"))),
    }
}
