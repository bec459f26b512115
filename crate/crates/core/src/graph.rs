//! Directed weighted graphs with positive node and edge weights.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIndex(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIndex(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub source: NodeIndex,
    pub target: NodeIndex,
    pub weight: f64,
}

/// Which elements of the soiled segment carry weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeasureMode {
    #[default]
    Node,
    Edge,
}

impl MeasureMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureMode::Node => "node",
            MeasureMode::Edge => "edge",
        }
    }
}

impl core::str::FromStr for MeasureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "node" => Ok(MeasureMode::Node),
            "edge" => Ok(MeasureMode::Edge),
            other => Err(Error::param("measure mode", alloc::format!("`{other}`, expected node or edge"))),
        }
    }
}

/// Weakly connected components: nodes grouped by connectivity with edge
/// direction ignored. Components are ordered by their smallest node index and
/// members are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    components: Vec<Vec<NodeIndex>>,
    component_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn components(&self) -> &[Vec<NodeIndex>] {
        &self.components
    }

    pub fn component_of(&self, node: NodeIndex) -> usize {
        self.component_of[node.0]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// An immutable, validated graph. Build one with [`GraphBuilder`].
#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    by_id: BTreeMap<String, NodeIndex>,
    out_edges: Vec<Vec<EdgeIndex>>,
    components: ComponentPartition,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, index: NodeIndex) -> &Node {
        &self.nodes[index.0]
    }

    pub fn edge(&self, index: EdgeIndex) -> &Edge {
        &self.edges[index.0]
    }

    pub fn id(&self, index: NodeIndex) -> &str {
        &self.nodes[index.0].id
    }

    pub fn index_of(&self, id: &str) -> Option<NodeIndex> {
        self.by_id.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<NodeIndex> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn out_edges(&self, node: NodeIndex) -> &[EdgeIndex] {
        &self.out_edges[node.0]
    }

    /// Weak components, computed once at construction.
    pub fn components(&self) -> &ComponentPartition {
        &self.components
    }

    /// Position of each node when all ids are sorted lexicographically.
    pub fn id_ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.nodes.len()];
        for (rank, index) in self.by_id.values().enumerate() {
            ranks[index.0] = rank;
        }
        ranks
    }
}

#[derive(Debug, Default)]
pub struct GraphBuilder {
    nodes: Vec<Node>,
    by_id: BTreeMap<String, NodeIndex>,
    edges: Vec<Edge>,
    pairs: BTreeSet<(usize, usize)>,
}

fn check_weight(weight: f64) -> Result<()> {
    if weight.is_finite() && weight > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveWeight(weight))
    }
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str, weight: f64) -> Result<NodeIndex> {
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(Error::InvalidNodeId(id.to_string()));
        }
        if self.by_id.contains_key(id) {
            return Err(Error::DuplicateNode(id.to_string()));
        }
        check_weight(weight)?;
        let index = NodeIndex(self.nodes.len());
        self.nodes.push(Node {
            id: id.to_string(),
            weight,
        });
        self.by_id.insert(id.to_string(), index);
        Ok(index)
    }

    pub fn add_edge(&mut self, source: &str, target: &str, weight: f64) -> Result<EdgeIndex> {
        let lookup = |id: &str| {
            self.by_id
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownNode(id.to_string()))
        };
        let (s, t) = (lookup(source)?, lookup(target)?);
        check_weight(weight)?;
        if !self.pairs.insert((s.0, t.0)) {
            return Err(Error::DuplicateEdge(source.to_string(), target.to_string()));
        }
        let index = EdgeIndex(self.edges.len());
        self.edges.push(Edge {
            source: s,
            target: t,
            weight,
        });
        Ok(index)
    }

    pub fn build(self) -> Result<Graph> {
        if self.nodes.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut out_edges = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeIndex(i));
        }
        let components = partition(self.nodes.len(), &self.edges);
        Ok(Graph {
            nodes: self.nodes,
            edges: self.edges,
            by_id: self.by_id,
            out_edges,
            components,
        })
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn partition(node_count: usize, edges: &[Edge]) -> ComponentPartition {
    let mut parent: Vec<usize> = (0..node_count).collect();
    for e in edges {
        let (a, b) = (find(&mut parent, e.source.0), find(&mut parent, e.target.0));
        if a != b {
            // smaller root wins so roots stay canonical
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut component_of = vec![usize::MAX; node_count];
    let mut slot_of_root = BTreeMap::new();
    let mut components: Vec<Vec<NodeIndex>> = Vec::new();
    for (v, component) in component_of.iter_mut().enumerate() {
        let root = find(&mut parent, v);
        let slot = *slot_of_root.entry(root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[slot].push(NodeIndex(v));
        *component = slot;
    }
    ComponentPartition {
        components,
        component_of,
    }
}

/// Partitions `g` into weakly connected components.
pub fn weak_components(g: &Graph) -> ComponentPartition {
    partition(g.node_count(), g.edges())
}

/// Sum of all node weights (`Node`) or all edge weights (`Edge`), each
/// element counted once.
pub fn total_weight(g: &Graph, mode: MeasureMode) -> Result<f64> {
    match mode {
        MeasureMode::Node => Ok(g.nodes.iter().map(|n| n.weight).sum()),
        MeasureMode::Edge if g.edges.is_empty() => Err(Error::NoEdges),
        MeasureMode::Edge => Ok(g.edges.iter().map(|e| e.weight).sum()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::fig21;

    fn ids(g: &Graph, part: &ComponentPartition) -> Vec<Vec<String>> {
        part.components()
            .iter()
            .map(|c| c.iter().map(|&n| g.id(n).to_string()).collect())
            .collect()
    }

    #[test]
    fn fig21_components() {
        let g = fig21();
        let part = weak_components(&g);
        assert_eq!(
            ids(&g, &part),
            [vec!["1", "2", "3", "4", "5"], vec!["6", "7"]]
        );
        assert_eq!(&part, g.components());
    }

    #[test]
    fn singleton_and_cycle_components() {
        let mut b = GraphBuilder::new();
        b.add_node("x", 1.0).unwrap();
        let g = b.build().unwrap();
        assert_eq!(weak_components(&g).len(), 1);

        let mut b = GraphBuilder::new();
        b.add_node("a", 1.0).unwrap();
        b.add_node("b", 1.0).unwrap();
        b.add_edge("a", "b", 1.0).unwrap();
        b.add_edge("b", "a", 1.0).unwrap();
        let g = b.build().unwrap();
        assert_eq!(ids(&g, &weak_components(&g)), [vec!["a", "b"]]);
    }

    #[test]
    fn totals() {
        let g = fig21();
        assert_eq!(total_weight(&g, MeasureMode::Node).unwrap(), 7.0);
        assert_eq!(total_weight(&g, MeasureMode::Edge).unwrap(), 6.0);

        let mut b = GraphBuilder::new();
        b.add_node("a", 2.5).unwrap();
        let lonely = b.build().unwrap();
        assert_eq!(total_weight(&lonely, MeasureMode::Node).unwrap(), 2.5);
        assert_eq!(total_weight(&lonely, MeasureMode::Edge), Err(Error::NoEdges));
    }

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = GraphBuilder::new();
        b.add_node("1", 1.0).unwrap();
        b.add_node("2", 1.0).unwrap();
        assert_eq!(b.add_node("1", 1.0), Err(Error::DuplicateNode("1".into())));
        assert_eq!(b.add_node("z", 0.0), Err(Error::NonPositiveWeight(0.0)));
        assert!(matches!(b.add_node("w", f64::NAN), Err(Error::NonPositiveWeight(_))));
        assert_eq!(b.add_node("a b", 1.0), Err(Error::InvalidNodeId("a b".into())));
        assert_eq!(b.add_node("", 1.0), Err(Error::InvalidNodeId(String::new())));
        assert_eq!(b.add_edge("1", "2", -0.5), Err(Error::NonPositiveWeight(-0.5)));
        assert_eq!(b.add_edge("1", "9", 1.0), Err(Error::UnknownNode("9".into())));
        b.add_edge("1", "2", 1.0).unwrap();
        assert_eq!(
            b.add_edge("1", "2", 3.0),
            Err(Error::DuplicateEdge("1".into(), "2".into()))
        );
        b.add_edge("2", "1", 1.0).unwrap();
        b.add_edge("1", "1", 1.0).unwrap();
        assert_eq!(b.build().unwrap().edge_count(), 3);
        assert_eq!(GraphBuilder::new().build(), Err(Error::EmptyGraph));
    }

    #[test]
    fn id_ranks_follow_string_order() {
        let mut b = GraphBuilder::new();
        for id in ["b", "10", "a", "2"] {
            b.add_node(id, 1.0).unwrap();
        }
        let g = b.build().unwrap();
        assert_eq!(g.id_ranks(), [3, 0, 2, 1]);
    }
}
