use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

use super::rank::Ranking;
use super::{Evaluator, Executor, OptimizerKind, SearchResult, Sequential, Trace};

/// Largest graph accepted by default: 2^22 − 1 ≈ 4.2M evaluations.
pub const DEFAULT_ENUMERATION_CAP: usize = 22;

const CHUNKS: u64 = 64;

/// Scores all `2^N − 1` nonempty subsets and keeps the `top_k` best.
pub fn exhaustive_search(eval: &Evaluator<'_>, top_k: usize, cap: usize) -> Result<SearchResult> {
    exhaustive_search_with(eval, top_k, cap, &Sequential)
}

pub fn exhaustive_search_with<E: Executor>(
    eval: &Evaluator<'_>,
    top_k: usize,
    cap: usize,
    exec: &E,
) -> Result<SearchResult> {
    let n = eval.node_count();
    if n > cap.min(63) {
        return Err(Error::EnumerationCap { nodes: n, cap });
    }
    let last = 1u64 << n; // masks 1..last
    let span = (last - 1).div_ceil(CHUNKS).max(1);
    let chunks = (last - 1).div_ceil(span) as usize;
    let partial = exec.map(chunks, |c| -> Result<Ranking> {
        let mut ranking = Ranking::new(top_k);
        let start = 1 + c as u64 * span;
        let end = (start + span).min(last);
        for mask in start..end {
            let members = NodeSet::from_mask(n, mask);
            let score = eval.evaluate(&members)?;
            ranking.offer(eval, &members, &score);
        }
        Ok(ranking)
    });
    let mut ranking = Ranking::new(top_k);
    for part in partial {
        ranking.merge(eval, part?);
    }
    if ranking.is_empty() {
        return Err(Error::Infeasible);
    }
    let (best, ranked) = ranking.into_candidates(top_k)?;
    Ok(SearchResult {
        best,
        ranked,
        evaluations: last - 1,
        rng_seed: 0,
        optimizer: OptimizerKind::Exhaustive,
        trace: Trace::default(),
    })
}
