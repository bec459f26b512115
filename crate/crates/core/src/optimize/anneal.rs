//! Simulated annealing over subset membership with single-node flips.

use alloc::format;

use rand::Rng;

use crate::cost::Score;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

use super::rank::Ranking;
use super::{unit_rng, Evaluator, Executor, OptimizerKind, SearchResult, Sequential, Trace};

/// Geometric cooling schedule with independent restarts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealingSchedule {
    pub initial_temperature: f64,
    /// Multiplier applied after each temperature level, in (0, 1).
    pub cooling_factor: f64,
    pub steps_per_temperature: usize,
    pub minimum_temperature: f64,
    pub restarts: usize,
    /// Rejection-sampling budget for a gate-feasible starting subset.
    pub start_attempts: usize,
}

impl Default for AnnealingSchedule {
    fn default() -> Self {
        AnnealingSchedule {
            initial_temperature: 1.0,
            cooling_factor: 0.95,
            steps_per_temperature: 50,
            minimum_temperature: 1e-4,
            restarts: 10,
            start_attempts: 10_000,
        }
    }
}

impl AnnealingSchedule {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.initial_temperature) {
            return Err(Error::param("initial temperature", format!("{}", self.initial_temperature)));
        }
        if !(self.cooling_factor > 0.0 && self.cooling_factor < 1.0) {
            return Err(Error::param("cooling factor", format!("{} outside (0, 1)", self.cooling_factor)));
        }
        if self.steps_per_temperature < 1 {
            return Err(Error::param("steps per temperature", "must be at least 1"));
        }
        if !positive(self.minimum_temperature) {
            return Err(Error::param("minimum temperature", format!("{}", self.minimum_temperature)));
        }
        if self.restarts < 1 {
            return Err(Error::param("restarts", "must be at least 1"));
        }
        if self.start_attempts < 1 {
            return Err(Error::param("start attempts", "must be at least 1"));
        }
        Ok(())
    }
}

struct RestartOutcome {
    ranking: Ranking,
    evaluations: u64,
    trace: Trace,
}

pub fn anneal(
    eval: &Evaluator<'_>,
    schedule: &AnnealingSchedule,
    rng_seed: u64,
    top_k: usize,
) -> Result<SearchResult> {
    anneal_with(eval, schedule, rng_seed, top_k, &Sequential)
}

/// Restart `i` draws from stream `i` of the run seed, so the outcome does not
/// depend on how restarts are scheduled across workers.
pub fn anneal_with<E: Executor>(
    eval: &Evaluator<'_>,
    schedule: &AnnealingSchedule,
    rng_seed: u64,
    top_k: usize,
    exec: &E,
) -> Result<SearchResult> {
    schedule.validate()?;
    let outcomes = exec.map(schedule.restarts, |i| {
        run_restart(eval, schedule, rng_seed, i as u64, top_k)
    });
    let mut ranking = Ranking::new(top_k);
    let mut evaluations = 0;
    let mut trace = Trace::default();
    for outcome in outcomes {
        let outcome = outcome?;
        evaluations += outcome.evaluations;
        trace.iterations += outcome.trace.iterations;
        trace.accepted_moves += outcome.trace.accepted_moves;
        trace.rejected_moves += outcome.trace.rejected_moves;
        ranking.merge(eval, outcome.ranking);
    }
    let (best, ranked) = ranking.into_candidates(top_k)?;
    Ok(SearchResult {
        best,
        ranked,
        evaluations,
        rng_seed,
        optimizer: OptimizerKind::Annealing,
        trace,
    })
}

fn run_restart(
    eval: &Evaluator<'_>,
    schedule: &AnnealingSchedule,
    rng_seed: u64,
    index: u64,
    top_k: usize,
) -> Result<RestartOutcome> {
    let n = eval.node_count();
    let mut rng = unit_rng(rng_seed, index);
    let mut ranking = Ranking::new(top_k);
    let mut evaluations = 0u64;
    let mut trace = Trace::default();

    let mut start: Option<(NodeSet, Score)> = None;
    for _ in 0..schedule.start_attempts {
        let mut members = NodeSet::new(n);
        for v in 0..n {
            if rng.gen_bool(0.5) {
                members.insert(v);
            }
        }
        if members.is_empty() {
            continue;
        }
        let score = eval.evaluate(&members)?;
        evaluations += 1;
        if score.is_defined() {
            start = Some((members, score));
            break;
        }
    }
    let (mut current, score) = start.ok_or(Error::NoFeasibleStart(schedule.start_attempts))?;
    ranking.offer(eval, &current, &score);
    let mut current_value = score.value.expect("defined start");

    let mut temperature = schedule.initial_temperature;
    while temperature > schedule.minimum_temperature {
        trace.iterations += 1;
        for _ in 0..schedule.steps_per_temperature {
            let flip = rng.gen_range(0..n);
            current.toggle(flip);
            if current.is_empty() {
                current.toggle(flip);
                trace.rejected_moves += 1;
                continue;
            }
            let score = eval.evaluate(&current)?;
            evaluations += 1;
            let Some(value) = score.value else {
                current.toggle(flip);
                trace.rejected_moves += 1;
                continue;
            };
            ranking.offer(eval, &current, &score);
            let delta = value - current_value;
            if delta >= 0.0 || rng.gen::<f64>() < libm::exp(delta / temperature) {
                current_value = value;
                trace.accepted_moves += 1;
            } else {
                current.toggle(flip);
                trace.rejected_moves += 1;
            }
        }
        temperature *= schedule.cooling_factor;
    }
    Ok(RestartOutcome {
        ranking,
        evaluations,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::ConstraintRegistry;
    use crate::cost::CostSpec;
    use crate::fixture::fig21;
    use crate::graph::GraphBuilder;

    #[test]
    fn schedule_validation() {
        let ok = AnnealingSchedule::default();
        assert!(ok.validate().is_ok());
        for bad in [
            AnnealingSchedule { cooling_factor: 1.0, ..ok },
            AnnealingSchedule { cooling_factor: 0.0, ..ok },
            AnnealingSchedule { initial_temperature: 0.0, ..ok },
            AnnealingSchedule { minimum_temperature: -1.0, ..ok },
            AnnealingSchedule { steps_per_temperature: 0, ..ok },
            AnnealingSchedule { restarts: 0, ..ok },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn single_node_graph() {
        let mut b = GraphBuilder::new();
        b.add_node("only", 1.0).unwrap();
        let g = b.build().unwrap();
        let reg = ConstraintRegistry::with_builtins();
        let eval = Evaluator::new(&g, CostSpec::default(), &reg).unwrap();
        let r = anneal(&eval, &AnnealingSchedule::default(), 3, 10).unwrap();
        assert_eq!(r.best.seeds.label(&g), "only");
        assert_eq!(r.best.score.value, Some(1.0));
        assert_eq!(r.trace.accepted_moves, 0);
    }

    #[test]
    fn infeasible_start_is_reported() {
        let g = fig21();
        let reg = ConstraintRegistry::with_builtins();
        let spec = CostSpec::default()
            .with_gate("cardinality:1:1", 1.0)
            .with_gate("cardinality:2:2", 1.0);
        let eval = Evaluator::new(&g, spec, &reg).unwrap();
        let schedule = AnnealingSchedule {
            start_attempts: 50,
            ..AnnealingSchedule::default()
        };
        assert_eq!(
            anneal(&eval, &schedule, 0, 5).unwrap_err(),
            Error::NoFeasibleStart(50)
        );
    }
}
