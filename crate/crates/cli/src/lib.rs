//! Front end for the `inv231` binary: sequence specs, output formats and
//! subcommand dispatch. Kept as a library so the parsers can be tested and
//! fuzzed without spawning a process.

pub mod app;
pub mod output;
pub mod spec;

pub use app::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
