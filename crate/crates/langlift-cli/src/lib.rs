//! Command-line frontend: parse spec files, dispatch queries, render
//! deterministic textual results.
//!
//! The binary is a thin wrapper around two modules so that integration
//! tests can drive the same code paths directly:
//!
//! - [`spec`]: the line-oriented file format — one artifact per file, a
//!   header naming its kind, `#` comment lines — with parsing into typed
//!   artifacts and canonical rendering back out.
//! - [`run`]: one function per subcommand, each returning printable lines
//!   plus the process exit code.

#![warn(missing_docs)]

pub mod run;
pub mod spec;
