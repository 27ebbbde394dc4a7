//! Library core of the `lws` binary: subcommand logic, JSON artifacts,
//! and the exit-code error type.
//!
//! The binary in `main.rs` is a thin clap shell over these modules, so
//! everything a command does is callable (and testable) as plain Rust.

pub mod artifacts;
pub mod commands;
pub mod error;
