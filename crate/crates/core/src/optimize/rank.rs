use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cost::Score;
use crate::error::Result;
use crate::nodeset::NodeSet;
use crate::taint::SeedSet;

use super::Evaluator;

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub seeds: SeedSet,
    pub score: Score,
}

#[derive(Debug, Clone)]
struct Entry {
    members: NodeSet,
    /// Sorted id ranks of the members, for lexicographic tie-breaks.
    key: Vec<usize>,
    value: f64,
    score: Score,
}

/// Orders candidates best first: higher value, then fewer nodes, then
/// lexicographically smaller sorted id list.
fn better(a_value: f64, a_key: &[usize], b_value: f64, b_key: &[usize]) -> Ordering {
    b_value
        .total_cmp(&a_value)
        .then(a_key.len().cmp(&b_key.len()))
        .then_with(|| a_key.cmp(b_key))
}

/// Bounded list of the best distinct defined candidates.
#[derive(Debug, Clone)]
pub(crate) struct Ranking {
    capacity: usize,
    entries: Vec<Entry>,
}

impl Ranking {
    pub(crate) fn new(top_k: usize) -> Self {
        Ranking {
            capacity: top_k.max(1),
            entries: Vec::new(),
        }
    }

    pub(crate) fn offer(&mut self, eval: &Evaluator<'_>, members: &NodeSet, score: &Score) {
        let Some(value) = score.value else { return };
        let full = self.entries.len() == self.capacity;
        if full {
            let worst = &self.entries[self.entries.len() - 1];
            // cheap reject before building the key
            if value < worst.value {
                return;
            }
        }
        let ranks = eval.id_ranks();
        let mut key: Vec<usize> = members.iter().map(|n| ranks[n.0]).collect();
        key.sort_unstable();
        let pos = match self
            .entries
            .binary_search_by(|e| better(e.value, &e.key, value, &key))
        {
            Ok(_) => return,
            Err(pos) => pos,
        };
        if pos == self.capacity {
            return;
        }
        self.entries.insert(
            pos,
            Entry {
                members: members.clone(),
                key,
                value,
                score: *score,
            },
        );
        self.entries.truncate(self.capacity);
    }

    pub(crate) fn merge(&mut self, eval: &Evaluator<'_>, other: Ranking) {
        for e in other.entries {
            self.offer(eval, &e.members, &e.score);
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Best candidate followed by the top `top_k`.
    pub(crate) fn into_candidates(self, top_k: usize) -> Result<(Candidate, Vec<Candidate>)> {
        let mut all = self
            .entries
            .into_iter()
            .map(|e| {
                Ok(Candidate {
                    seeds: SeedSet::from_node_set(&e.members)?,
                    score: e.score,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let best = all.first().cloned().ok_or(crate::Error::Infeasible)?;
        all.truncate(top_k);
        Ok((best, all))
    }
}
