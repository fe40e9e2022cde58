//! Sweeps, reports and the command line around `qdeform-core`.

pub mod config;
pub mod report;
pub mod states;
pub mod sweep;

pub use config::{ConfigError, OutputFormat, SweepConfig};
pub use report::{Entry, SweepReport};
pub use sweep::{run_sweep, run_sweep_with, CheckSet, Execution};

/// Version string written into every report.
pub const TOOL_VERSION: &str = concat!("qdeform ", env!("CARGO_PKG_VERSION"));
