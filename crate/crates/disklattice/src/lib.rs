//! Command-line front end and drivers for [`disklattice_core`].
//!
//! The library half exposes what the binary uses: configuration resolution
//! ([`config`]), fixed-width number formatting and CSV/JSON writers
//! ([`format`]), rayon drivers for the oracle and sweeps ([`parallel`]) and
//! the subcommands themselves ([`commands`]).

pub mod cli;
pub mod commands;
pub mod config;
mod error;
pub mod format;
pub mod parallel;

pub use error::{AppError, ExitStatus};
