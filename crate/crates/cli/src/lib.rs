//! File formats, reports and the command-line driver for elegant path search.

pub mod app;
pub mod format;
pub mod report;
pub mod runner;
