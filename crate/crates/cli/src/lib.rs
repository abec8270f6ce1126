//! Batch runner for the `qspread-core` checks: suite configuration, representation
//! and report file formats, and the `qspread` command line.

pub mod app;
pub mod config;
pub mod format;
pub mod suites;
