//! Command implementations behind the `qgestalt` binary.

pub mod commands;
pub mod config;
pub mod io;
pub mod report;
pub mod selftest;
pub mod synthetic;

pub use config::{OutputFormat, RunConfig};
pub use report::{Cell, Table};
