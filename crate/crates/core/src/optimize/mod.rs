//! Maximization of a [`CostSpec`](crate::cost::CostSpec) over nonempty seed
//! subsets.
//!
//! [`exhaustive_search`] enumerates every subset and is the ground truth.
//! [`anneal`] and [`evolve`] are randomized heuristics; they are
//! reproducible for a fixed seed and their results are independent of the
//! [`Executor`] used to run them.

mod anneal;
mod evaluator;
mod evolve;
mod exhaustive;
mod rank;

use alloc::vec::Vec;

pub use anneal::{anneal, anneal_with, AnnealingSchedule};
pub use evaluator::Evaluator;
pub use evolve::{evolve, evolve_from_population, evolve_with, GaParams};
pub use exhaustive::{exhaustive_search, exhaustive_search_with, DEFAULT_ENUMERATION_CAP};
pub use rank::Candidate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerKind {
    Exhaustive,
    Annealing,
    Genetic,
}

impl OptimizerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OptimizerKind::Exhaustive => "exhaustive",
            OptimizerKind::Annealing => "sa",
            OptimizerKind::Genetic => "ga",
        }
    }
}

/// Counters describing one search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Trace {
    /// Temperature levels (sa, summed over restarts) or generations (ga).
    pub iterations: u64,
    pub accepted_moves: u64,
    pub rejected_moves: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: Candidate,
    /// Best distinct defined candidates seen, best first.
    pub ranked: Vec<Candidate>,
    pub evaluations: u64,
    pub rng_seed: u64,
    pub optimizer: OptimizerKind,
    pub trace: Trace,
}

/// Runs independent work units, possibly in parallel. Implementations must
/// return results in unit order.
pub trait Executor {
    fn map<T, F>(&self, units: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, units: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..units).map(f).collect()
    }
}

/// The RNG for work unit `unit`: the run seed selects the key and the unit
/// selects an independent ChaCha stream.
pub(crate) fn unit_rng(seed: u64, unit: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(unit);
    rng
}
