//! IO, file formats, threaded execution and the command line for
//! [`critset_core`].

pub mod cli;
pub mod cost_config;
mod error;
pub mod graph_file;
pub mod log_csv;
pub mod parallel;
pub mod report;
pub mod tables;

pub use error::{Error, Result};

/// The reference graph in graph-file form.
pub const FIG21_GRAPH: &str = include_str!("../fixtures/fig21.graph");
