//! Library side of the `crsn` command line tool; the binary in
//! `main.rs` is a thin wrapper. Kept as a library so integration tests
//! can drive the same code paths directly.

pub mod commands;
pub mod config;
pub mod output;
pub mod validate;
