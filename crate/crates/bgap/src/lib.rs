//! Library side of the `bgap` command: randomized identity trials, grid
//! scans, and report serialization.
//!
//! Exit statuses are fixed: `0` success, `1` a verified relation failed,
//! `2` bad usage or input, `3` I/O failure.

pub mod error;
pub mod identity;
pub mod report;
pub mod scan;

pub use error::CliError;
pub use identity::{run_identity, IdentitySummary};
pub use report::{Num, OutputFormat, ScanReport};
pub use scan::{run_scan, ScanConfig, ScanResult};

/// Largest `--n` the CLI accepts. The library itself has no cap.
pub const MAX_N: u32 = 64;
