//! Critical node subset detection for directed weighted graphs.
//!
//! A seed set of nodes is tainted, the taint is propagated along directed
//! edges, and the weight of the reached ("soiled") segment is scored against
//! the size of the seed set. Maximizing that score over nonempty subsets
//! yields the critical subset. Gates (crisp or fuzzy predicates composed by
//! AND) and additive penalty terms extend the basic score.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, threading and
//! the command line live in the `critset` companion crate.

#![no_std]

extern crate alloc;

pub mod constraints;
pub mod cost;
mod error;
pub mod fixture;
pub mod graph;
pub mod ingest;
mod nodeset;
pub mod optimize;
pub mod taint;

pub use error::{Error, Result};
pub use graph::{
    total_weight, weak_components, ComponentPartition, Edge, EdgeIndex, Graph, GraphBuilder,
    MeasureMode, Node, NodeIndex,
};
pub use nodeset::NodeSet;
