//! Command-line harness for the kantorlab engine.

pub mod config;
pub mod run;

pub use config::{parse_config, Cli, Command, ConfigError, RunConfig};
pub use run::{run, Status};
