//! Command-line layer of polyshock: configuration, CSV/SVG output and the
//! `closure`, `shock`, `sweep` and `verify` commands.

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod profile_csv;

pub use commands::{run, Outcome};
pub use config::{parse_config, Command, RunConfig};
pub use error::CliError;

use std::path::{Path, PathBuf};

/// Read and parse a config file, then apply command-line overrides.
pub fn load_config(
    path: &Path,
    command: Command,
    plot: bool,
    out: Option<PathBuf>,
) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = parse_config(&text, command)?;
    cfg.output.plot |= plot;
    if let Some(dir) = out {
        cfg.output.dir = dir;
    }
    Ok(cfg)
}
