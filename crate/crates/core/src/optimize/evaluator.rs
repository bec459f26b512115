use alloc::vec::Vec;

use crate::constraints::{ConstraintRegistry, SharedConstraint};
use crate::cost::{gated_cost, CostSpec, Score};
use crate::error::{Error, Result};
use crate::graph::{total_weight, Graph};
use crate::nodeset::NodeSet;
use crate::taint::{Reachability, SeedSet};

/// A graph and cost specification with constraints resolved, ready to score
/// candidate subsets.
#[derive(Debug, Clone)]
pub struct Evaluator<'g> {
    graph: &'g Graph,
    spec: CostSpec,
    penalties: Vec<SharedConstraint>,
    gates: Vec<SharedConstraint>,
    reach: Reachability,
    total: f64,
    id_ranks: Vec<usize>,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g Graph, spec: CostSpec, registry: &ConstraintRegistry) -> Result<Self> {
        spec.validate()?;
        let resolve = |id: &str| -> Result<SharedConstraint> {
            let c = registry.resolve(id)?;
            c.check(graph)?;
            Ok(c)
        };
        let penalties = spec
            .penalties
            .iter()
            .map(|p| resolve(&p.constraint))
            .collect::<Result<Vec<_>>>()?;
        let gates = spec
            .gates
            .iter()
            .map(|g| resolve(&g.constraint))
            .collect::<Result<Vec<_>>>()?;
        let total = total_weight(graph, spec.measure)?;
        Ok(Evaluator {
            graph,
            penalties,
            gates,
            reach: Reachability::new(graph),
            total,
            id_ranks: graph.id_ranks(),
            spec,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn spec(&self) -> &CostSpec {
        &self.spec
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub(crate) fn id_ranks(&self) -> &[usize] {
        &self.id_ranks
    }

    pub fn evaluate(&self, members: &NodeSet) -> Result<Score> {
        let n = members.len();
        if n == 0 {
            return Err(Error::EmptySeedSet);
        }
        let soiled = self.reach.closure_of(members);
        let s = self
            .reach
            .measure(self.graph, &soiled, self.spec.measure, self.total);
        let total = self.graph.node_count();
        if self.gates.is_empty() && self.penalties.is_empty() {
            return gated_cost(s, n, total, &self.spec, &[], &[]);
        }
        let seeds = SeedSet::from_node_set(members)?;
        let run = |cs: &[SharedConstraint]| -> Result<Vec<f64>> {
            cs.iter().map(|c| c.evaluate(self.graph, &seeds)).collect()
        };
        gated_cost(s, n, total, &self.spec, &run(&self.gates)?, &run(&self.penalties)?)
    }

    pub fn evaluate_seeds(&self, seeds: &SeedSet) -> Result<Score> {
        if seeds.nodes().iter().any(|n| n.0 >= self.graph.node_count()) {
            return Err(Error::UnknownNode(alloc::format!("{:?}", seeds.nodes())));
        }
        self.evaluate(&seeds.to_node_set(self.graph))
    }
}
