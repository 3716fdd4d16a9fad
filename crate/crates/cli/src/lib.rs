//! Batch harness behind the `trendlab` binary.
//!
//! Each subcommand has a plain function here so it can be driven from tests
//! without spawning a process; `main.rs` only parses flags and maps errors to
//! exit codes.

pub mod error;
pub mod fit;
pub mod oracle_check;
pub mod output;
pub mod parallel;
pub mod simulate;
pub mod sweep;
pub mod urn;

pub use error::{HarnessError, HarnessResult};
pub use simulate::{RunConfig, RunSummary};
