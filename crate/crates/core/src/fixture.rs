//! The seven-node reference graph and the seed sets tabulated for it.
//!
//! Nodes `1`..`7` with unit weights and unit-weight edges
//! `1→2, 1→3, 2→5, 3→5, 4→3, 6→7`. Under node-mode forward propagation this
//! graph yields the soiled measures and same-component flags listed in
//! [`SAME_COMPONENT_ROWS`] and [`BASIC_ROWS`].

use crate::graph::{Graph, GraphBuilder};

pub const FIG21_EDGES: [(&str, &str); 6] = [
    ("1", "2"),
    ("1", "3"),
    ("2", "5"),
    ("3", "5"),
    ("4", "3"),
    ("6", "7"),
];

pub fn fig21() -> Graph {
    let mut b = GraphBuilder::new();
    for id in ["1", "2", "3", "4", "5", "6", "7"] {
        b.add_node(id, 1.0).expect("fixture node");
    }
    for (s, t) in FIG21_EDGES {
        b.add_edge(s, t, 1.0).expect("fixture edge");
    }
    b.build().expect("fixture graph")
}

/// A tabulated seed set with its expected soiled-node count (out of 7).
#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub seeds: &'static [&'static str],
    pub soiled: usize,
    pub same_component: bool,
}

const fn row(seeds: &'static [&'static str], soiled: usize, same_component: bool) -> Row {
    Row {
        seeds,
        soiled,
        same_component,
    }
}

/// Rows of the β=1 and β=2/n tables.
pub const BASIC_ROWS: [Row; 5] = [
    row(&["1", "6"], 6, false),
    row(&["3", "5"], 2, true),
    row(&["2", "4", "7"], 5, false),
    row(&["2", "6"], 4, false),
    row(&["1", "4", "6"], 7, false),
];

/// Rows of the same-component table: the basic rows plus three more.
pub const SAME_COMPONENT_ROWS: [Row; 8] = [
    BASIC_ROWS[0],
    BASIC_ROWS[1],
    BASIC_ROWS[2],
    BASIC_ROWS[3],
    BASIC_ROWS[4],
    row(&["1", "4"], 5, true),
    row(&["6"], 2, true),
    row(&["2", "4"], 4, true),
];
