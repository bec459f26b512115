//! Taint propagation from a seed set and the soiled/clean measures.
//!
//! The soiled segment of a seed set is its forward-reachability closure under
//! directed edges, together with every edge whose source is soiled. Each node
//! and edge belongs to the segment at most once, so cycles contribute their
//! weight a single time.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{total_weight, EdgeIndex, Graph, MeasureMode, NodeIndex};
use crate::nodeset::NodeSet;

/// A nonempty set of graph nodes into which taint is injected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedSet {
    nodes: Vec<NodeIndex>,
}

impl SeedSet {
    /// Resolves ids against `g`. Repeated ids collapse to one member.
    pub fn from_ids<'a, I>(g: &Graph, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let nodes = ids
            .into_iter()
            .map(|id| g.require(id))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(g, nodes)
    }

    pub fn from_indices<I>(g: &Graph, nodes: I) -> Result<Self>
    where
        I: IntoIterator<Item = NodeIndex>,
    {
        let mut nodes: Vec<NodeIndex> = nodes.into_iter().collect();
        if let Some(bad) = nodes.iter().find(|n| n.0 >= g.node_count()) {
            return Err(Error::UnknownNode(alloc::format!("#{}", bad.0)));
        }
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.is_empty() {
            return Err(Error::EmptySeedSet);
        }
        Ok(SeedSet { nodes })
    }

    pub fn from_node_set(members: &NodeSet) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySeedSet);
        }
        Ok(SeedSet {
            nodes: members.iter().collect(),
        })
    }

    /// Members in ascending index order.
    pub fn nodes(&self) -> &[NodeIndex] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: NodeIndex) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    pub fn ids<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.nodes.iter().map(|&n| g.id(n)).collect()
    }

    /// Comma-joined ids in index order, e.g. `1,4,6`.
    pub fn label(&self, g: &Graph) -> String {
        self.ids(g).join(",")
    }

    pub fn to_node_set(&self, g: &Graph) -> NodeSet {
        NodeSet::from_indices(g.node_count(), self.nodes.iter().copied())
    }
}

/// The node and edge membership of a soiled segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    pub soiled_nodes: NodeSet,
    /// Sorted by edge index, no repeats.
    pub soiled_edges: Vec<EdgeIndex>,
}

/// A soiled segment together with its measures.
#[derive(Debug, Clone, PartialEq)]
pub struct SoiledReport {
    pub soiled_nodes: NodeSet,
    pub soiled_edges: Vec<EdgeIndex>,
    pub soiled_measure: f64,
    pub clean_measure: f64,
    pub mode: MeasureMode,
}

/// Forward closure of `seeds` along directed edges.
pub fn propagate(g: &Graph, seeds: &SeedSet) -> Propagation {
    let mut soiled = NodeSet::new(g.node_count());
    let mut stack: Vec<NodeIndex> = Vec::new();
    for &s in seeds.nodes() {
        if soiled.insert(s.0) {
            stack.push(s);
        }
    }
    while let Some(v) = stack.pop() {
        for &e in g.out_edges(v) {
            let t = g.edge(e).target;
            if soiled.insert(t.0) {
                stack.push(t);
            }
        }
    }
    let soiled_edges = (0..g.edge_count())
        .map(EdgeIndex)
        .filter(|&e| soiled.contains(g.edge(e).source.0))
        .collect();
    Propagation {
        soiled_nodes: soiled,
        soiled_edges,
    }
}

/// Soiled weight over total weight for the chosen mode.
pub fn soiled_measure(g: &Graph, segment: &Propagation, mode: MeasureMode) -> Result<f64> {
    let total = total_weight(g, mode)?;
    let soiled: f64 = match mode {
        MeasureMode::Node => segment
            .soiled_nodes
            .iter()
            .map(|n| g.node(n).weight)
            .sum(),
        MeasureMode::Edge => segment.soiled_edges.iter().map(|&e| g.edge(e).weight).sum(),
    };
    Ok(soiled / total)
}

pub fn soil(g: &Graph, seeds: &SeedSet, mode: MeasureMode) -> Result<SoiledReport> {
    let segment = propagate(g, seeds);
    let s = soiled_measure(g, &segment, mode)?;
    Ok(SoiledReport {
        soiled_nodes: segment.soiled_nodes,
        soiled_edges: segment.soiled_edges,
        soiled_measure: s,
        clean_measure: 1.0 - s,
        mode,
    })
}

/// Per-node forward closures. The closure of a seed set is the union of the
/// closures of its members, which makes repeated evaluation cheap.
#[derive(Debug, Clone)]
pub struct Reachability {
    closures: Vec<NodeSet>,
}

impl Reachability {
    pub fn new(g: &Graph) -> Self {
        let closures = (0..g.node_count())
            .map(|v| {
                let seed = SeedSet {
                    nodes: alloc::vec![NodeIndex(v)],
                };
                propagate(g, &seed).soiled_nodes
            })
            .collect();
        Reachability { closures }
    }

    pub fn closure(&self, node: NodeIndex) -> &NodeSet {
        &self.closures[node.0]
    }

    pub fn closure_of(&self, members: &NodeSet) -> NodeSet {
        let mut out = NodeSet::new(members.universe());
        for v in members.iter() {
            out.union_with(&self.closures[v.0]);
        }
        out
    }

    /// Same summation order as [`soiled_measure`], so results agree bit for bit.
    pub fn measure(&self, g: &Graph, soiled: &NodeSet, mode: MeasureMode, total: f64) -> f64 {
        let sum: f64 = match mode {
            MeasureMode::Node => soiled.iter().map(|n| g.node(n).weight).sum(),
            MeasureMode::Edge => g
                .edges()
                .iter()
                .filter(|e| soiled.contains(e.source.0))
                .map(|e| e.weight)
                .sum(),
        };
        sum / total
    }
}
